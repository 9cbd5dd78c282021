#include "popcoin/monetary.hpp"

#include <cmath>

namespace popcoin::monetary {

namespace {

void check_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in [0, 1)");
}

}  // namespace

double interest_rate(double population_growth, double alpha) {
    check_alpha(alpha);
    if (!(population_growth > -1.0)) throw DomainError("population growth must exceed -1");
    return (1.0 + population_growth) * (1.0 - alpha) - 1.0;
}

double supply_step(double previous_supply, double population_growth, double alpha, double basic_income,
                   std::int64_t census) {
    check_alpha(alpha);
    if (census < 1) throw DomainError("census must be >= 1");
    return previous_supply * (1.0 + population_growth) * (1.0 - alpha) + basic_income * static_cast<double>(census);
}

double steady_state_supply(double basic_income, double alpha, std::int64_t census) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
    if (census < 1) throw DomainError("census must be >= 1");
    return basic_income * static_cast<double>(census) / alpha;
}

StabilityReport is_long_term_stable(std::span<const std::int64_t> census_series, double epsilon,
                                    std::size_t tau, double alpha) {
    if (epsilon < 0.0) throw DomainError("epsilon must be >= 0");
    check_alpha(alpha);
    StabilityReport report;
    report.stable = true;
    for (std::size_t t = std::max<std::size_t>(tau, 1); t < census_series.size(); ++t) {
        if (census_series[t - 1] < 1 || census_series[t] < 1) throw DomainError("census must be >= 1");
        const double ratio = static_cast<double>(census_series[t]) / static_cast<double>(census_series[t - 1]);
        if (std::abs(ratio - 1.0) > epsilon) {
            report.stable = false;
            break;
        }
    }
    report.negative_rate = epsilon < alpha / (1.0 - alpha);
    return report;
}

std::vector<MacroState> supply_series(std::span<const std::int64_t> census_series, double alpha,
                                      double basic_income, double initial_supply) {
    std::vector<MacroState> out;
    if (census_series.empty()) return out;
    out.reserve(census_series.size());

    MacroState start;
    start.census = census_series[0];
    start.supply = initial_supply;
    out.push_back(start);

    for (std::size_t t = 1; t < census_series.size(); ++t) {
        const MacroState& prev = out.back();
        MacroState s;
        s.epoch = static_cast<std::int64_t>(t);
        s.census = census_series[t];
        s.population_growth = static_cast<double>(s.census) / static_cast<double>(prev.census) - 1.0;
        s.interest_rate = interest_rate(s.population_growth, alpha);
        s.supply = supply_step(prev.supply, s.population_growth, alpha, basic_income, s.census);
        s.distributed = basic_income * static_cast<double>(s.census);
        s.supply_growth = prev.supply > 0.0 ? s.supply / prev.supply - 1.0 : 0.0;
        out.push_back(s);
    }
    return out;
}

}  // namespace popcoin::monetary
