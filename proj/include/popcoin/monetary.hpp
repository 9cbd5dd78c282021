#pragma once

// Closed-form aggregate quantities: supply recurrence, global interest rate,
// steady state and the long-run population stability predicate.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace popcoin::monetary {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct MacroState {
    std::int64_t epoch = 0;
    std::int64_t census = 0;
    double supply = 0.0;          // M_t, post-minting
    double distributed = 0.0;     // D_t = N_t B
    double interest_rate = 0.0;   // R_t
    double population_growth = 0.0;  // n_t
    double supply_growth = 0.0;      // mu_t = M_t / M_{t-1} - 1 (0 when M_{t-1} = 0)
};

// R = (1 + n)(1 - alpha) - 1. Requires alpha in [0, 1) and n > -1.
double interest_rate(double population_growth, double alpha);

// M_t = M_{t-1}(1 + n)(1 - alpha) + B N_t
double supply_step(double previous_supply, double population_growth, double alpha, double basic_income,
                   std::int64_t census);

// B N / alpha
double steady_state_supply(double basic_income, double alpha, std::int64_t census);

struct StabilityReport {
    bool stable = false;           // |N_t/N_{t-1} - 1| <= epsilon for every t >= tau
    bool negative_rate = false;    // epsilon < alpha / (1 - alpha)
};

StabilityReport is_long_term_stable(std::span<const std::int64_t> census_series, double epsilon,
                                    std::size_t tau, double alpha);

// Iterates supply_step over census_series[1..], starting from `initial_supply` at
// census_series[0]. Entry 0 of the result describes the starting point.
std::vector<MacroState> supply_series(std::span<const std::int64_t> census_series, double alpha,
                                      double basic_income, double initial_supply);

}  // namespace popcoin::monetary
