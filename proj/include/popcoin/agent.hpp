#pragma once

// Two-period consumer with square-root utility who receives the basic income B in
// both periods and earned income in1 in the first. Savings carried into period 2
// grow by the global rate R2 (negative under demurrage with a stable census).

#include <stdexcept>

namespace popcoin::agent {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct AgentProblem {
    double B = 1.0;
    double in1 = 0.0;
    double R2 = 0.0;
    double P1 = 1.0;
    double P2 = 1.0;
    bool allow_borrowing = false;

    void check() const;

    // Largest feasible first-period consumption: B + in1 without borrowing,
    // otherwise the point where second-period consumption reaches zero.
    double max_out1() const;
};

// out2 = (B + in1 - out1)(1 + R2) + B
double budget_out2(const AgentProblem& p, double out1);

double utility(const AgentProblem& p, double out1, double out2);

// Utility as a function of out1 alone, along the budget line.
double lifetime_utility(const AgentProblem& p, double out1);

// Stationary point of lifetime_utility, ignoring the borrowing constraint.
double unclamped_optimal_out1(const AgentProblem& p);

// unclamped_optimal_out1, clamped into [0, B + in1] when borrowing is not allowed.
double optimal_out1(const AgentProblem& p);

// Brute-force maximiser over the feasible interval; agrees with optimal_out1 to
// within grid_step.
double optimal_out1_oracle(const AgentProblem& p, double grid_step);

struct TaxReport {
    double savings = 0.0;
    double demurrage_paid = 0.0;
    double tax_rate_of_income = 0.0;
};

// Demurrage actually paid on optimal savings, as a share of first-period income.
TaxReport effective_tax(const AgentProblem& p, double alpha);

}  // namespace popcoin::agent
