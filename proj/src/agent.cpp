#include "popcoin/agent.hpp"

#include <algorithm>
#include <cmath>

namespace popcoin::agent {

void AgentProblem::check() const {
    if (!(B >= 0.0)) throw DomainError("B must be >= 0");
    if (!(in1 >= 0.0)) throw DomainError("in1 must be >= 0");
    if (!(R2 > -1.0)) throw DomainError("R2 must exceed -1");
    if (!(P1 > 0.0) || !(P2 > 0.0)) throw DomainError("price levels must be > 0");
}

double AgentProblem::max_out1() const {
    const double income = B + in1;
    return allow_borrowing ? income + B / (1.0 + R2) : income;
}

double budget_out2(const AgentProblem& p, double out1) {
    p.check();
    if (out1 < 0.0) throw DomainError("out1 must be >= 0");
    if (!p.allow_borrowing && out1 > p.B + p.in1)
        throw DomainError("out1 exceeds B + in1 and borrowing is not allowed");
    const double out2 = (p.B + p.in1 - out1) * (1.0 + p.R2) + p.B;
    if (out2 < 0.0) throw DomainError("out1 leaves negative second-period consumption");
    return out2;
}

double utility(const AgentProblem& p, double out1, double out2) {
    if (out1 < 0.0 || out2 < 0.0) throw DomainError("consumption must be >= 0");
    return std::sqrt(out1 / p.P1) + std::sqrt(out2 / p.P2);
}

double lifetime_utility(const AgentProblem& p, double out1) {
    return utility(p, out1, budget_out2(p, out1));
}

double unclamped_optimal_out1(const AgentProblem& p) {
    p.check();
    const double gross = 1.0 + p.R2;
    return (gross * (p.B + p.in1) + p.B) / (gross * gross * (p.P1 / p.P2) + gross);
}

double optimal_out1(const AgentProblem& p) {
    const double out1 = unclamped_optimal_out1(p);
    if (p.allow_borrowing) return out1;
    return std::clamp(out1, 0.0, p.B + p.in1);
}

double optimal_out1_oracle(const AgentProblem& p, double grid_step) {
    p.check();
    if (!(grid_step > 0.0)) throw DomainError("grid_step must be > 0");

    // Evaluated in extended precision: the objective is flat near its peak, and in
    // double the argmax is only resolved to ~sqrt(eps) relative.
    const long double B = p.B, in1 = p.in1, gross = 1.0L + p.R2, P1 = p.P1, P2 = p.P2;
    auto objective = [&](long double out1) {
        const long double out2 = std::max((B + in1 - out1) * gross + B, 0.0L);
        return std::sqrt(out1 / P1) + std::sqrt(out2 / P2);
    };

    constexpr int kPoints = 1000;
    long double lo = 0.0L;
    long double hi = p.max_out1();
    if (!(hi > 0.0L)) return 0.0;

    long double best = lo;
    long double step = (hi - lo) / kPoints;
    // The objective is concave, so the maximiser lies within one cell of the best
    // grid point; zoom into that neighbourhood until the grid is fine enough.
    while (true) {
        long double best_value = -1.0L;
        for (int k = 0; k <= kPoints; ++k) {
            const long double x = std::min(lo + step * k, hi);
            const long double value = objective(x);
            if (value > best_value) {
                best_value = value;
                best = x;
            }
        }
        if (step <= grid_step / 10.0) break;
        lo = std::max(lo, best - step);
        hi = std::min(hi, best + step);
        step = (hi - lo) / kPoints;
        if (!(step > 0.0L)) break;
    }
    return static_cast<double>(best);
}

TaxReport effective_tax(const AgentProblem& p, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in [0, 1)");
    const double income = p.B + p.in1;
    TaxReport r;
    r.savings = income - optimal_out1(p);  // negative when the agent borrows
    r.demurrage_paid = alpha * r.savings;
    r.tax_rate_of_income = income > 0.0 ? r.demurrage_paid / income : 0.0;
    return r;
}

}  // namespace popcoin::agent
