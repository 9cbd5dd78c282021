#include "popcoin/exchange.hpp"

#include "popcoin/monetary.hpp"

#include <cmath>
#include <string>

namespace popcoin::exchange {

namespace {

void require_positive(double value, const char* field) {
    if (!(value > 0.0) || !std::isfinite(value)) throw DomainError(std::string(field) + " must be > 0");
}

}  // namespace

void ExchangeScenario::check() const {
    require_positive(M_p, "M_p");
    require_positive(M_f, "M_f");
    require_positive(L_p, "L_p");
    require_positive(L_f, "L_f");
    require_positive(Y_p, "Y_p");
    require_positive(Y_f, "Y_f");
    require_positive(eta, "eta");
    require_positive(P_f_bar, "P_f_bar");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in [0, 1)");
    if (!(n_p > -1.0)) throw DomainError("n_p must exceed -1");
}

double ExchangeScenario::popcoin_interest_rate() const {
    return monetary::interest_rate(n_p, alpha) + lending_spread;
}

ExchangeScenario symmetric_scenario(double alpha, double eta) {
    ExchangeScenario s;
    s.alpha = alpha;
    s.eta = eta;
    s.i_f = s.popcoin_interest_rate();
    return s;
}

double ppp_rate(const ExchangeScenario& s) {
    s.check();
    return (s.M_p / s.M_f) / ((s.L_p * s.Y_p) / (s.L_f * s.Y_f));
}

double relative_depreciation(double mu_p, double mu_f, double g_p, double g_f) {
    return (mu_p - mu_f) - (g_p - g_f);
}

double money_market_rate(double money, double price_level, double real_income, double eta,
                         double liquidity_scale) {
    require_positive(money, "money");
    require_positive(price_level, "price_level");
    require_positive(real_income, "real_income");
    require_positive(eta, "eta");
    require_positive(liquidity_scale, "liquidity_scale");
    return -std::log(money / (price_level * real_income * liquidity_scale)) / eta;
}

double uip_spot_rate(double i_p, double i_f, double expected_rate) {
    const double gross = 1.0 + i_p - i_f;
    if (!(gross > 0.0)) throw NoEquilibrium("1 + i_p - i_f must be > 0");
    return expected_rate / gross;
}

OvershootingResult overshooting_experiment(const ExchangeScenario& s, double fiat_supply_shock, ShockTarget target) {
    if (target == ShockTarget::popcoin)
        throw DomainError("PoPCoin supply is fixed by policy; only the fiat supply can be shocked");
    if (!(fiat_supply_shock > -1.0)) throw DomainError("fiat_supply_shock must exceed -1");
    s.check();

    ExchangeScenario shocked = s;
    shocked.M_f = s.M_f * (1.0 + fiat_supply_shock);

    OvershootingResult r;
    r.i_p = s.popcoin_interest_rate();
    r.E_longrun_before = ppp_rate(s);
    r.E_longrun_after = ppp_rate(shocked);

    // L0 chosen so the pre-shock fiat money market clears at the scenario's i_f.
    const double liquidity_scale = s.M_f / (s.P_f_bar * s.Y_f) * std::exp(s.eta * s.i_f);
    r.i_f_before = s.i_f;
    r.i_f_after = money_market_rate(shocked.M_f, s.P_f_bar, s.Y_f, s.eta, liquidity_scale);

    r.E_spot_before = uip_spot_rate(r.i_p, r.i_f_before, r.E_longrun_before);
    r.E_spot_after = uip_spot_rate(r.i_p, r.i_f_after, r.E_longrun_after);
    r.overshoots = r.E_spot_after < r.E_longrun_after && r.E_longrun_after < r.E_longrun_before;
    return r;
}

double inflation_rate(double population_growth, double real_growth) {
    return population_growth - real_growth;
}

}  // namespace popcoin::exchange
