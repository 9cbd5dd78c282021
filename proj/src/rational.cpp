#include "popcoin/rational.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <system_error>

namespace popcoin {

namespace {

BigInt pow10(unsigned long exponent) {
    BigInt result;
    mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
    return result;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

}  // namespace

Rational parse_decimal(std::string_view text) {
    const std::string original(text);
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }

    std::string digits;
    long fraction_digits = 0;
    bool seen_point = false;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (is_digit(c)) {
            digits.push_back(c);
            if (seen_point) ++fraction_digits;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (digits.empty()) throw std::invalid_argument("not a decimal number: '" + original + "'");

    long exponent = 0;
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        ++pos;
        const auto* first = text.data() + pos;
        const auto* last = text.data() + text.size();
        if (first != last && *first == '+') ++first;
        auto [ptr, ec] = std::from_chars(first, last, exponent);
        if (ec != std::errc{} || ptr != last || first == last)
            throw std::invalid_argument("bad exponent in '" + original + "'");
        pos = text.size();
    }
    if (pos != text.size()) throw std::invalid_argument("trailing characters in '" + original + "'");

    Rational result{BigInt(digits, 10), BigInt(1)};
    const long shift = exponent - fraction_digits;
    if (shift > 0) {
        result *= Rational(pow10(static_cast<unsigned long>(shift)));
    } else if (shift < 0) {
        result /= Rational(pow10(static_cast<unsigned long>(-shift)));
    }
    result.canonicalize();
    if (negative) result = -result;
    return result;
}

Rational from_double(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("non-finite value has no rational form");
    return parse_decimal(format_double(value));
}

BigInt floor_of(const Rational& value) {
    BigInt result;
    mpz_fdiv_q(result.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return result;
}

BigInt round_half_even(const Rational& value) {
    BigInt lower = floor_of(value);
    const Rational remainder = value - Rational(lower);
    const int cmp_half = cmp(remainder, Rational(1, 2));
    if (cmp_half > 0 || (cmp_half == 0 && mpz_odd_p(lower.get_mpz_t()))) {
        lower += 1;
    }
    return lower;
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buffer{};
    auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), ptr);
}

}  // namespace popcoin
