#pragma once

// Inequality metrics over PoPCoin balance snapshots, plus the supremum of each
// metric after one demurrage-and-income step at steady-state supply B N / alpha.

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace popcoin::inequality {

class UndefinedMetric : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Returned by inequality_ratio when the smaller balance is zero.
inline constexpr double kUnboundedRatio = std::numeric_limits<double>::infinity();

using BalanceDistribution = std::vector<double>;

// Each balance x -> (1 - alpha) x + B.
BalanceDistribution policy_transform(std::span<const double> balances, double alpha, double basic_income);

double mean(std::span<const double> balances);

// Population variance.
double variance(std::span<const double> balances);

// Pairwise definition: sum_ij |x_i - x_j| / (2 N^2 mean). O(N^2).
double gini_pairwise(std::span<const double> balances);

// Same quantity via the sorted form sum_i (2i - N - 1) x_(i) / (N^2 mean). O(N log N).
double gini(std::span<const double> balances);

// max(a, b) / min(a, b); kUnboundedRatio if the smaller one is zero (and the larger is not).
double inequality_ratio(double a, double b);

// Largest pairwise ratio in the snapshot, i.e. max / min.
double max_ratio(std::span<const double> balances);

double variance_bound(double alpha, double basic_income, std::int64_t participants);

// (1 - alpha)(N - 1) / N
double gini_bound(double alpha, std::int64_t participants);

// N -> infinity limit of gini_bound.
double gini_bound_limit(double alpha);

// (1 - alpha) N / alpha + 1; 1 for a single participant.
double ratio_bound(double alpha, std::int64_t participants);

// One participant holds the whole steady-state supply B N / alpha, the rest hold nothing.
BalanceDistribution worst_case_distribution(double alpha, double basic_income, std::int64_t participants);

}  // namespace popcoin::inequality
