#pragma once

// Exchange-rate and price-level analytics for PoPCoin against a fiat currency.
//
// Rates are quoted as E = P_p / P_f, the PoPCoin price level over the fiat price
// level. Sign convention: a positive relative depreciation d means E rises, i.e.
// fiat appreciates against PoPCoin. PoPCoin appreciation shows up as d < 0.

#include <stdexcept>

namespace popcoin::exchange {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NoEquilibrium : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct ExchangeScenario {
    // Money supplies, long-run liquidity demand and real income on each side.
    double M_p = 1.0, M_f = 1.0;
    double L_p = 1.0, L_f = 1.0;
    double Y_p = 1.0, Y_f = 1.0;
    // Per-epoch growth rates.
    double mu_p = 0.0, mu_f = 0.0;
    double g_p = 0.0, g_f = 0.0;
    // Short-run money market: L(i) = L0 exp(-eta i), sticky fiat price level.
    double eta = 1.0;
    double P_f_bar = 1.0;
    double i_f = 0.0;  // pre-shock fiat nominal rate
    // PoPCoin nominal rate = mechanism rate (1 + n)(1 - alpha) - 1 + lending spread.
    double n_p = 0.0;
    double alpha = 0.02;
    double lending_spread = 0.0;

    // Throws DomainError naming the first offending field.
    void check() const;

    double popcoin_interest_rate() const;
};

// All p-side values equal the f-side values, and i_f equals the PoPCoin rate.
ExchangeScenario symmetric_scenario(double alpha = 0.02, double eta = 1.0);

// (M_p / M_f) / ((L_p Y_p) / (L_f Y_f))
double ppp_rate(const ExchangeScenario& s);

// (mu_p - mu_f) - (g_p - g_f)
double relative_depreciation(double mu_p, double mu_f, double g_p, double g_f);

// Solves M / P = L0 exp(-eta i) Y for i.
double money_market_rate(double money, double price_level, double real_income, double eta,
                         double liquidity_scale);

// E = E_expected / (1 + i_p - i_f)
double uip_spot_rate(double i_p, double i_f, double expected_rate);

struct OvershootingResult {
    double E_spot_before = 0.0;
    double E_longrun_before = 0.0;
    double E_longrun_after = 0.0;
    double E_spot_after = 0.0;
    double i_f_before = 0.0;
    double i_f_after = 0.0;
    double i_p = 0.0;
    bool overshoots = false;  // E_spot_after < E_longrun_after < E_longrun_before
};

enum class ShockTarget { fiat, popcoin };

// Permanent expansion of the fiat money supply by `fiat_supply_shock` (0.1 = +10%).
// PoPCoin supply is set by policy, so a PoPCoin-side shock is rejected.
OvershootingResult overshooting_experiment(const ExchangeScenario& s, double fiat_supply_shock,
                                           ShockTarget target = ShockTarget::fiat);

// Quantity-theory inflation: pi = n - g.
double inflation_rate(double population_growth, double real_growth);

}  // namespace popcoin::exchange
