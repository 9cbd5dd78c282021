#pragma once

// Exact arithmetic used by the ledger. Thin helpers over GMP's C++ classes.

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace popcoin {

using BigInt = mpz_class;
using Rational = mpq_class;

// Parses a plain decimal literal ("2922", "0.02", "-1.5e-3") into an exact rational.
// Throws std::invalid_argument on malformed input.
Rational parse_decimal(std::string_view text);

// Exact rational of the shortest decimal that round-trips to `value`, so 0.02
// becomes 1/50 rather than the binary expansion of the double.
Rational from_double(double value);

// Nearest integer, ties to even.
BigInt round_half_even(const Rational& value);

BigInt floor_of(const Rational& value);

// Shortest round-trip decimal text for a double ("inf"/"-inf"/"nan" for non-finite).
std::string format_double(double value);

}  // namespace popcoin
