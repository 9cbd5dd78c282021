#include "popcoin/ledger.hpp"

#include <cmath>
#include <limits>

namespace popcoin {

namespace {

[[noreturn]] void fail(LedgerErrc code, const std::string& what) { throw LedgerError(code, what); }

// Shared participant bookkeeping for both ledger representations. Validates the
// census deltas and applies them; balances of new accounts start at zero.
template <typename Balances>
void apply_census_change(std::int64_t census, std::set<AccountId>& participants, Balances& balances,
                         std::int64_t new_census, const std::vector<AccountId>& joined,
                         const std::vector<AccountId>& left) {
    if (new_census < 1) fail(LedgerErrc::census_mismatch, "census must stay >= 1");
    const auto expected = census + static_cast<std::int64_t>(joined.size()) -
                          static_cast<std::int64_t>(left.size());
    if (expected != new_census) {
        fail(LedgerErrc::census_mismatch, "census " + std::to_string(census) + " + " +
                                              std::to_string(joined.size()) + " joined - " +
                                              std::to_string(left.size()) + " left != " +
                                              std::to_string(new_census));
    }
    for (const auto& id : left) {
        if (participants.erase(id) == 0)
            fail(LedgerErrc::census_mismatch, "account '" + id + "' left but is not a participant");
    }
    for (const auto& id : joined) {
        if (!participants.insert(id).second)
            fail(LedgerErrc::census_mismatch, "account '" + id + "' joined twice");
        balances.try_emplace(id);
    }
}

template <typename Balances>
void check_initial_accounts(const std::vector<AccountId>& accounts, std::set<AccountId>& participants,
                            Balances& balances) {
    if (accounts.empty()) fail(LedgerErrc::invalid_genesis, "genesis needs at least one account");
    for (const auto& id : accounts) {
        if (!participants.insert(id).second)
            fail(LedgerErrc::invalid_genesis, "duplicate genesis account '" + id + "'");
        balances.try_emplace(id);
    }
}

nlohmann::json big_to_json(const BigInt& value) {
    if (value.fits_slong_p()) return static_cast<std::int64_t>(value.get_si());
    return value.get_str(10);
}

BigInt big_from_json(const nlohmann::json& node, const char* field) {
    if (node.is_number_integer()) {
        if (node.is_number_unsigned()) return BigInt(std::to_string(node.get<std::uint64_t>()), 10);
        return BigInt(std::to_string(node.get<std::int64_t>()), 10);
    }
    if (node.is_string()) {
        try {
            return BigInt(node.get<std::string>(), 10);
        } catch (const std::invalid_argument&) {
        }
    }
    fail(LedgerErrc::malformed_snapshot, std::string("field '") + field + "' is not an integer");
}

}  // namespace

void PolicyParams::check() const {
    if (!(basic_income_B > 0.0) || !std::isfinite(basic_income_B))
        fail(LedgerErrc::invalid_params, "basic_income_B must be > 0");
    if (!(demurrage_alpha > 0.0 && demurrage_alpha < 1.0))
        fail(LedgerErrc::invalid_params, "demurrage_alpha must lie in (0, 1)");
    if (epochs_per_year < 1) fail(LedgerErrc::invalid_params, "epochs_per_year must be >= 1");
}

LedgerState genesis(const PolicyParams& params, const std::vector<AccountId>& initial_accounts,
                    const BigInt& poplet_scale) {
    params.check();
    if (poplet_scale < 1) fail(LedgerErrc::invalid_genesis, "poplet_scale must be >= 1");
    LedgerState state;
    state.params = params;
    check_initial_accounts(initial_accounts, state.participants, state.balances);
    state.census = static_cast<std::int64_t>(state.participants.size());
    state.poplet_scale = poplet_scale;
    state.exchange_rate = Rational(BigInt(1), poplet_scale);
    state.exchange_rate.canonicalize();
    return state;
}

MintResult mint_epoch_poplet(LedgerState state, std::int64_t new_census, const std::vector<AccountId>& joined,
                             const std::vector<AccountId>& left) {
    MintReport report;
    report.pre_supply = total_supply_popcoin(state);

    const std::int64_t previous_census = state.census;
    apply_census_change(state.census, state.participants, state.balances, new_census, joined, left);
    state.census = new_census;

    // E <- E (1 - alpha) N_t / N_{t-1}
    const Rational alpha = state.params.exact_alpha();
    Rational factor = (1 - alpha) * Rational(new_census, previous_census);
    factor.canonicalize();
    state.exchange_rate *= factor;

    // Issue B/E PoPlets per participant at the updated rate.
    const Rational owed = state.params.exact_basic_income() / state.exchange_rate;
    const BigInt issued = round_half_even(owed);
    for (const auto& id : state.participants) state.balances[id] += issued;

    ++state.epoch;
    report.epoch = state.epoch;
    report.issued_per_participant = issued;
    report.minted_total_popcoin = Rational(issued * new_census) * state.exchange_rate;
    report.rounding_residue_poplets = (Rational(issued) - owed) * new_census;
    report.post_supply = total_supply_popcoin(state);
    return {std::move(state), std::move(report)};
}

LedgerState open_account(LedgerState state, const AccountId& id) {
    if (!state.balances.try_emplace(id).second)
        fail(LedgerErrc::duplicate_account, "account '" + id + "' already exists");
    return state;
}

LedgerState transfer(LedgerState state, const AccountId& from, const AccountId& to, const BigInt& amount) {
    if (amount < 0) fail(LedgerErrc::insufficient_balance, "negative transfer amount");
    auto src = state.balances.find(from);
    if (src == state.balances.end()) fail(LedgerErrc::unknown_account, "unknown account '" + from + "'");
    auto dst = state.balances.find(to);
    if (dst == state.balances.end()) fail(LedgerErrc::unknown_account, "unknown account '" + to + "'");
    if (src->second < amount) fail(LedgerErrc::insufficient_balance, "insufficient balance in '" + from + "'");
    src->second -= amount;
    dst->second += amount;
    return state;
}

Rational balance_popcoin(const LedgerState& state, const AccountId& id) {
    auto it = state.balances.find(id);
    if (it == state.balances.end()) fail(LedgerErrc::unknown_account, "unknown account '" + id + "'");
    return Rational(it->second) * state.exchange_rate;
}

BigInt total_poplets(const LedgerState& state) {
    BigInt total = 0;
    for (const auto& [id, amount] : state.balances) total += amount;
    return total;
}

Rational total_supply_popcoin(const LedgerState& state) {
    return Rational(total_poplets(state)) * state.exchange_rate;
}

nlohmann::json to_json(const LedgerState& state) {
    nlohmann::json balances = nlohmann::json::object();
    for (const auto& [id, amount] : state.balances) balances[id] = big_to_json(amount);
    nlohmann::json participants = nlohmann::json::array();
    for (const auto& id : state.participants) participants.push_back(id);
    return {
        {"epoch", state.epoch},
        {"census", state.census},
        {"exchange_rate",
         {{"num", big_to_json(state.exchange_rate.get_num())}, {"den", big_to_json(state.exchange_rate.get_den())}}},
        {"balances", std::move(balances)},
        {"participants", std::move(participants)},
        {"poplet_scale", big_to_json(state.poplet_scale)},
        {"policy",
         {{"basic_income_B", state.params.basic_income_B},
          {"demurrage_alpha", state.params.demurrage_alpha},
          {"epochs_per_year", state.params.epochs_per_year}}},
    };
}

LedgerState ledger_from_json(const nlohmann::json& doc) {
    try {
        LedgerState state;
        const auto& policy = doc.at("policy");
        state.params.basic_income_B = policy.at("basic_income_B").get<double>();
        state.params.demurrage_alpha = policy.at("demurrage_alpha").get<double>();
        state.params.epochs_per_year = policy.value("epochs_per_year", std::int64_t{1});
        state.params.check();

        state.epoch = doc.at("epoch").get<std::int64_t>();
        state.census = doc.at("census").get<std::int64_t>();
        const auto& rate = doc.at("exchange_rate");
        state.exchange_rate = Rational(big_from_json(rate.at("num"), "exchange_rate.num"),
                                       big_from_json(rate.at("den"), "exchange_rate.den"));
        if (state.exchange_rate.get_den() == 0) fail(LedgerErrc::malformed_snapshot, "zero denominator");
        state.exchange_rate.canonicalize();
        state.poplet_scale = big_from_json(doc.at("poplet_scale"), "poplet_scale");

        for (const auto& [id, amount] : doc.at("balances").items()) {
            BigInt value = big_from_json(amount, "balances");
            if (value < 0) fail(LedgerErrc::malformed_snapshot, "negative balance for '" + id + "'");
            state.balances.emplace(id, std::move(value));
        }
        for (const auto& id : doc.at("participants")) {
            const auto name = id.get<std::string>();
            if (!state.balances.contains(name))
                fail(LedgerErrc::malformed_snapshot, "participant '" + name + "' has no balance entry");
            state.participants.insert(name);
        }

        if (state.epoch < 0) fail(LedgerErrc::malformed_snapshot, "negative epoch");
        if (state.census < 1 || state.census != static_cast<std::int64_t>(state.participants.size()))
            fail(LedgerErrc::malformed_snapshot, "census does not match participant list");
        if (state.exchange_rate <= 0) fail(LedgerErrc::malformed_snapshot, "exchange rate must be > 0");
        if (state.poplet_scale < 1) fail(LedgerErrc::malformed_snapshot, "poplet_scale must be >= 1");
        return state;
    } catch (const nlohmann::json::exception& e) {
        fail(LedgerErrc::malformed_snapshot, e.what());
    }
}

DirectLedgerState direct_genesis(const PolicyParams& params, const std::vector<AccountId>& initial_accounts) {
    params.check();
    DirectLedgerState state;
    state.params = params;
    check_initial_accounts(initial_accounts, state.participants, state.balances);
    state.census = static_cast<std::int64_t>(state.participants.size());
    return state;
}

DirectLedgerState mint_epoch_direct(DirectLedgerState state, std::int64_t new_census,
                                    const std::vector<AccountId>& joined, const std::vector<AccountId>& left) {
    const std::int64_t previous_census = state.census;
    apply_census_change(state.census, state.participants, state.balances, new_census, joined, left);
    state.census = new_census;

    const Rational alpha = state.params.exact_alpha();
    Rational redenomination(new_census, previous_census);
    redenomination.canonicalize();
    for (auto& [id, balance] : state.balances) {
        balance *= redenomination;
        balance *= (1 - alpha);
    }
    const Rational income = state.params.exact_basic_income();
    for (const auto& id : state.participants) state.balances[id] += income;
    ++state.epoch;
    return state;
}

DirectLedgerState open_account(DirectLedgerState state, const AccountId& id) {
    if (!state.balances.try_emplace(id).second)
        fail(LedgerErrc::duplicate_account, "account '" + id + "' already exists");
    return state;
}

DirectLedgerState transfer(DirectLedgerState state, const AccountId& from, const AccountId& to,
                           const Rational& amount_popcoin) {
    if (amount_popcoin < 0) fail(LedgerErrc::insufficient_balance, "negative transfer amount");
    auto src = state.balances.find(from);
    if (src == state.balances.end()) fail(LedgerErrc::unknown_account, "unknown account '" + from + "'");
    auto dst = state.balances.find(to);
    if (dst == state.balances.end()) fail(LedgerErrc::unknown_account, "unknown account '" + to + "'");
    if (src->second < amount_popcoin)
        fail(LedgerErrc::insufficient_balance, "insufficient balance in '" + from + "'");
    src->second -= amount_popcoin;
    dst->second += amount_popcoin;
    return state;
}

}  // namespace popcoin
