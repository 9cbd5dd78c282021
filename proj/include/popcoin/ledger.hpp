#pragma once

// PoPlet ledger and its real-valued reference (direct rebasing) twin.
//
// Balances are held in PoPlets, the integer atomic unit. A PoPlet is worth
// `exchange_rate` PoPCoin; each minting rescales the rate instead of touching
// wallet balances, then issues every census participant round(B / E) PoPlets.

#include "popcoin/rational.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace popcoin {

using AccountId = std::string;

enum class LedgerErrc {
    invalid_genesis,
    invalid_params,
    census_mismatch,
    insufficient_balance,
    unknown_account,
    duplicate_account,
    malformed_snapshot,
};

class LedgerError : public std::runtime_error {
public:
    LedgerError(LedgerErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    LedgerErrc code() const noexcept { return code_; }

private:
    LedgerErrc code_;
};

struct PolicyParams {
    double basic_income_B = 2922.0;  // PoPCoin per participant per epoch
    double demurrage_alpha = 0.02;   // fraction of supply redistributed per epoch
    std::int64_t epochs_per_year = 1;

    // Throws LedgerError(invalid_params) unless B > 0 and 0 < alpha < 1.
    void check() const;

    Rational exact_basic_income() const { return from_double(basic_income_B); }
    Rational exact_alpha() const { return from_double(demurrage_alpha); }

    bool operator==(const PolicyParams&) const = default;
};

struct LedgerState {
    PolicyParams params;
    std::int64_t epoch = 0;
    std::int64_t census = 0;
    Rational exchange_rate;          // PoPCoin per PoPlet, always > 0
    BigInt poplet_scale;             // PoPlets per PoPCoin at genesis
    std::map<AccountId, BigInt> balances;
    std::set<AccountId> participants;  // census members; other accounts are dormant holders

    bool operator==(const LedgerState&) const = default;
};

struct MintReport {
    std::int64_t epoch = 0;
    BigInt issued_per_participant;     // PoPlets
    Rational minted_total_popcoin;
    Rational rounding_residue_poplets; // census * (round(B/E) - B/E)
    Rational pre_supply;
    Rational post_supply;
};

struct MintResult {
    LedgerState state;
    MintReport report;
};

LedgerState genesis(const PolicyParams& params, const std::vector<AccountId>& initial_accounts,
                    const BigInt& poplet_scale);

// One Algorithm-2 minting. `joined` become participants (new or previously dormant
// accounts); `left` stop being participants but keep their balances as dormant holders.
MintResult mint_epoch_poplet(LedgerState state, std::int64_t new_census,
                             const std::vector<AccountId>& joined = {},
                             const std::vector<AccountId>& left = {});

// Adds a dormant (non-participant) account with zero balance.
LedgerState open_account(LedgerState state, const AccountId& id);

LedgerState transfer(LedgerState state, const AccountId& from, const AccountId& to,
                     const BigInt& amount);

Rational balance_popcoin(const LedgerState& state, const AccountId& id);
Rational total_supply_popcoin(const LedgerState& state);
BigInt total_poplets(const LedgerState& state);

nlohmann::json to_json(const LedgerState& state);
LedgerState ledger_from_json(const nlohmann::json& doc);

// Reference ledger that rebases every balance at each minting, with real-valued
// (exact rational) PoPCoin balances. Used only to cross-check the PoPlet ledger.
struct DirectLedgerState {
    PolicyParams params;
    std::int64_t epoch = 0;
    std::int64_t census = 0;
    std::map<AccountId, Rational> balances;
    std::set<AccountId> participants;
};

DirectLedgerState direct_genesis(const PolicyParams& params, const std::vector<AccountId>& initial_accounts);

DirectLedgerState mint_epoch_direct(DirectLedgerState state, std::int64_t new_census,
                                    const std::vector<AccountId>& joined = {},
                                    const std::vector<AccountId>& left = {});

DirectLedgerState open_account(DirectLedgerState state, const AccountId& id);

DirectLedgerState transfer(DirectLedgerState state, const AccountId& from, const AccountId& to,
                           const Rational& amount_popcoin);

}  // namespace popcoin
