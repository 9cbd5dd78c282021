#include "popcoin/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace popcoin::inequality {

namespace {

void check_distribution(std::span<const double> balances) {
    if (balances.empty()) throw std::invalid_argument("balance distribution must be non-empty");
    for (double x : balances) {
        if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("balances must be finite and >= 0");
    }
}

void check_policy(double alpha, std::int64_t participants) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
    if (participants < 1) throw std::invalid_argument("participants must be >= 1");
}

}  // namespace

BalanceDistribution policy_transform(std::span<const double> balances, double alpha, double basic_income) {
    BalanceDistribution out(balances.begin(), balances.end());
    for (double& x : out) x = (1.0 - alpha) * x + basic_income;
    return out;
}

double mean(std::span<const double> balances) {
    check_distribution(balances);
    return std::accumulate(balances.begin(), balances.end(), 0.0) / static_cast<double>(balances.size());
}

double variance(std::span<const double> balances) {
    const double mu = mean(balances);
    double sum = 0.0;
    for (double x : balances) sum += (x - mu) * (x - mu);
    return sum / static_cast<double>(balances.size());
}

double gini_pairwise(std::span<const double> balances) {
    const double mu = mean(balances);
    if (mu <= 0.0) throw UndefinedMetric("gini is undefined for an all-zero distribution");
    double sum = 0.0;
    for (double xi : balances)
        for (double xj : balances) sum += std::abs(xi - xj);
    const double n = static_cast<double>(balances.size());
    return sum / (2.0 * n * n * mu);
}

double gini(std::span<const double> balances) {
    const double mu = mean(balances);
    if (mu <= 0.0) throw UndefinedMetric("gini is undefined for an all-zero distribution");
    std::vector<double> sorted(balances.begin(), balances.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<std::int64_t>(sorted.size());
    double sum = 0.0;
    for (std::int64_t i = 0; i < n; ++i) sum += static_cast<double>(2 * (i + 1) - n - 1) * sorted[static_cast<std::size_t>(i)];
    const double nd = static_cast<double>(n);
    // Cancellation can leave a tiny negative value for equal balances.
    return std::max(sum / (nd * nd * mu), 0.0);
}

double inequality_ratio(double a, double b) {
    if (!(a >= 0.0) || !(b >= 0.0)) throw std::invalid_argument("balances must be >= 0");
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    if (lo == 0.0) return hi == 0.0 ? 1.0 : kUnboundedRatio;
    return hi / lo;
}

double max_ratio(std::span<const double> balances) {
    check_distribution(balances);
    const auto [lo, hi] = std::minmax_element(balances.begin(), balances.end());
    return inequality_ratio(*hi, *lo);
}

double variance_bound(double alpha, double basic_income, std::int64_t participants) {
    check_policy(alpha, participants);
    const double spread = (1.0 - alpha) / alpha * basic_income;
    return spread * spread * static_cast<double>(participants - 1);
}

double gini_bound(double alpha, std::int64_t participants) {
    check_policy(alpha, participants);
    const double n = static_cast<double>(participants);
    return (1.0 - alpha) * (n - 1.0) / n;
}

double gini_bound_limit(double alpha) {
    check_policy(alpha, 1);
    return 1.0 - alpha;
}

double ratio_bound(double alpha, std::int64_t participants) {
    check_policy(alpha, participants);
    if (participants == 1) return 1.0;
    return (1.0 - alpha) / alpha * static_cast<double>(participants) + 1.0;
}

BalanceDistribution worst_case_distribution(double alpha, double basic_income, std::int64_t participants) {
    check_policy(alpha, participants);
    BalanceDistribution out(static_cast<std::size_t>(participants), 0.0);
    out.front() = basic_income * static_cast<double>(participants) / alpha;
    return out;
}

}  // namespace popcoin::inequality
