#include "popcoin/scenario.hpp"

#include "popcoin/inequality.hpp"
#include "popcoin/monetary.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace popcoin::scenario {

namespace {

constexpr std::int64_t kMaxCensus = 2'000'000;

int log_level() {
    static const int level = [] {
        const char* env = std::getenv("POPCOIN_LOG");
        if (env == nullptr) return 1;
        const std::string value(env);
        if (value == "quiet") return 0;
        if (value == "debug") return 2;
        return 1;
    }();
    return level;
}

// Collects "field: message" problems while reading a JSON document.
class Reader {
public:
    std::vector<Diagnostic> diagnostics;

    void error(const std::string& field, const std::string& message) { diagnostics.push_back({field, message}); }

    const nlohmann::json* child(const nlohmann::json& node, const std::string& key, const std::string& path,
                                bool required) {
        if (!node.is_object()) {
            error(path, "expected an object");
            return nullptr;
        }
        auto it = node.find(key);
        if (it == node.end()) {
            if (required) error(join(path, key), "missing required field");
            return nullptr;
        }
        return &*it;
    }

    template <typename T>
    std::optional<T> get(const nlohmann::json& node, const std::string& key, const std::string& path, bool required) {
        const auto* value = child(node, key, path, required);
        if (value == nullptr) return std::nullopt;
        if constexpr (std::is_same_v<T, bool>) {
            if (!value->is_boolean()) return type_error<T>(path, key, "a boolean");
        } else if constexpr (std::is_integral_v<T>) {
            if (!value->is_number_integer()) return type_error<T>(path, key, "an integer");
            if constexpr (std::is_unsigned_v<T>) {
                if (!value->is_number_unsigned() && value->get<std::int64_t>() < 0)
                    return type_error<T>(path, key, "a non-negative integer");
            }
        } else if constexpr (std::is_floating_point_v<T>) {
            if (!value->is_number()) return type_error<T>(path, key, "a number");
        } else {
            if (!value->is_string()) return type_error<T>(path, key, "a string");
        }
        return value->get<T>();
    }

    template <typename T>
    T get_or(const nlohmann::json& node, const std::string& key, const std::string& path, T fallback) {
        return get<T>(node, key, path, false).value_or(fallback);
    }

    static std::string join(const std::string& path, const std::string& key) {
        return path.empty() ? key : path + "." + key;
    }

private:
    template <typename T>
    std::optional<T> type_error(const std::string& path, const std::string& key, const char* expected) {
        error(join(path, key), std::string("expected ") + expected);
        return std::nullopt;
    }
};

std::optional<PopulationKind> population_kind(const std::string& name) {
    if (name == "fixed") return PopulationKind::fixed;
    if (name == "exponential") return PopulationKind::exponential;
    if (name == "logistic") return PopulationKind::logistic;
    if (name == "step_shock") return PopulationKind::step_shock;
    if (name == "degrowth") return PopulationKind::degrowth;
    return std::nullopt;
}

PopulationSpec read_population(Reader& r, const nlohmann::json& node) {
    const std::string path = "population";
    PopulationSpec spec;
    const auto kind_name = r.get<std::string>(node, "kind", path, true);
    if (!kind_name) return spec;
    const auto kind = population_kind(*kind_name);
    if (!kind) {
        r.error("population.kind", "unknown population kind '" + *kind_name +
                                       "' (expected fixed, exponential, logistic, step_shock or degrowth)");
        return spec;
    }
    spec.kind = *kind;
    switch (spec.kind) {
        case PopulationKind::fixed:
            spec.initial = r.get<std::int64_t>(node, "N", path, true).value_or(1);
            break;
        case PopulationKind::exponential:
        case PopulationKind::degrowth:
            spec.initial = r.get<std::int64_t>(node, "N0", path, true).value_or(1);
            spec.rate = r.get<double>(node, "n", path, true).value_or(0.0);
            break;
        case PopulationKind::logistic:
            spec.initial = r.get<std::int64_t>(node, "N0", path, true).value_or(1);
            spec.capacity = r.get<std::int64_t>(node, "K", path, true).value_or(1);
            spec.rate = r.get<double>(node, "rate", path, true).value_or(0.0);
            break;
        case PopulationKind::step_shock:
            spec.initial = r.get<std::int64_t>(node, "N0", path, true).value_or(1);
            spec.factor = r.get<double>(node, "factor", path, true).value_or(1.0);
            spec.at_epoch = r.get<std::int64_t>(node, "at_epoch", path, true).value_or(0);
            break;
    }
    return spec;
}

exchange::ExchangeScenario read_exchange(Reader& r, const nlohmann::json& node, const std::string& path) {
    exchange::ExchangeScenario s;
    if (!node.is_object()) {
        r.error(path, "expected an object");
        return s;
    }
    s.M_p = r.get_or(node, "M_p", path, s.M_p);
    s.M_f = r.get_or(node, "M_f", path, s.M_f);
    s.L_p = r.get_or(node, "L_p", path, s.L_p);
    s.L_f = r.get_or(node, "L_f", path, s.L_f);
    s.Y_p = r.get_or(node, "Y_p", path, s.Y_p);
    s.Y_f = r.get_or(node, "Y_f", path, s.Y_f);
    s.mu_p = r.get_or(node, "mu_p", path, s.mu_p);
    s.mu_f = r.get_or(node, "mu_f", path, s.mu_f);
    s.g_p = r.get_or(node, "g_p", path, s.g_p);
    s.g_f = r.get_or(node, "g_f", path, s.g_f);
    s.eta = r.get_or(node, "eta", path, s.eta);
    s.P_f_bar = r.get_or(node, "P_f_bar", path, s.P_f_bar);
    s.n_p = r.get_or(node, "n_p", path, s.n_p);
    s.alpha = r.get_or(node, "alpha", path, s.alpha);
    s.lending_spread = r.get_or(node, "lending_spread", path, s.lending_spread);
    // Without an explicit fiat rate the economy starts at UIP equilibrium.
    if (!(s.alpha >= 0.0 && s.alpha < 1.0)) {
        r.error(Reader::join(path, "alpha"), "must lie in [0, 1)");
    } else if (!(s.n_p > -1.0)) {
        r.error(Reader::join(path, "n_p"), "must exceed -1");
    } else {
        s.i_f = r.get_or(node, "i_f", path, s.popcoin_interest_rate());
    }
    try {
        s.check();
    } catch (const exchange::DomainError& e) {
        r.error(path, e.what());
    }
    return s;
}

agent::AgentProblem read_agent(Reader& r, const nlohmann::json& node, const std::string& path, double* alpha_out) {
    agent::AgentProblem p;
    if (!node.is_object()) {
        r.error(path, "expected an object");
        return p;
    }
    const double alpha = r.get_or(node, "alpha", path, alpha_out != nullptr ? *alpha_out : 0.0);
    if (!(alpha >= 0.0 && alpha < 1.0)) r.error(Reader::join(path, "alpha"), "must lie in [0, 1)");
    if (alpha_out != nullptr) *alpha_out = alpha;
    p.B = r.get<double>(node, "B", path, true).value_or(p.B);
    p.in1 = r.get_or(node, "in1", path, p.in1);
    p.R2 = r.get_or(node, "R2", path, -alpha);
    p.P1 = r.get_or(node, "P1", path, p.P1);
    p.P2 = r.get_or(node, "P2", path, p.P2);
    p.allow_borrowing = r.get_or(node, "allow_borrowing", path, p.allow_borrowing);
    try {
        p.check();
    } catch (const agent::DomainError& e) {
        r.error(path, e.what());
    }
    return p;
}

std::string format_int(std::int64_t value) { return std::to_string(value); }

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i != 0) out << ',';
        out << csv_field(fields[i]);
    }
    out << '\n';
}

std::string account_name(std::int64_t serial) {
    std::ostringstream out;
    out << "p" << std::setw(8) << std::setfill('0') << serial;
    return out.str();
}

std::string dormant_name(std::int64_t serial) {
    std::ostringstream out;
    out << "h" << std::setw(8) << std::setfill('0') << serial;
    return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << contents;
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

ConfigError::ConfigError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error([&] {
          std::string what = "invalid scenario config";
          for (const auto& d : diagnostics) what += "\n  " + d.field + ": " + d.message;
          return what;
      }()),
      diagnostics_(std::move(diagnostics)) {}

std::int64_t PopulationSpec::census_at(std::int64_t t) const {
    double value = 0.0;
    switch (kind) {
        case PopulationKind::fixed:
            return std::max<std::int64_t>(initial, 1);
        case PopulationKind::exponential:
        case PopulationKind::degrowth:
            value = static_cast<double>(initial) * std::pow(1.0 + rate, static_cast<double>(t));
            break;
        case PopulationKind::logistic: {
            const double k = static_cast<double>(capacity);
            value = k / (1.0 + (k / static_cast<double>(initial) - 1.0) * std::exp(-rate * static_cast<double>(t)));
            break;
        }
        case PopulationKind::step_shock:
            if (t < at_epoch) return std::max<std::int64_t>(initial, 1);
            value = static_cast<double>(initial) * factor;
            break;
    }
    return std::max<std::int64_t>(std::llround(value), 1);
}

std::vector<Diagnostic> validate(const ScenarioConfig& config) {
    std::vector<Diagnostic> out;
    const auto& policy = config.policy;
    if (!(policy.basic_income_B > 0.0) || !std::isfinite(policy.basic_income_B))
        out.push_back({"policy.basic_income_B", "must be > 0"});
    if (!(policy.demurrage_alpha > 0.0 && policy.demurrage_alpha < 1.0))
        out.push_back({"policy.demurrage_alpha", "must lie strictly between 0 and 1"});
    if (policy.epochs_per_year < 1) out.push_back({"policy.epochs_per_year", "must be >= 1"});
    if (config.epochs < 0) out.push_back({"epochs", "must be >= 0"});
    if (config.poplet_scale < 1) out.push_back({"poplet_scale", "must be >= 1"});
    if (config.dormant_accounts < 0) out.push_back({"dormant_accounts", "must be >= 0"});

    const auto& pop = config.population;
    const bool population_ok = [&] {
        const std::size_t before = out.size();
        if (pop.initial < 1) out.push_back({"population", "initial census must be >= 1"});
        switch (pop.kind) {
            case PopulationKind::fixed:
                break;
            case PopulationKind::exponential:
                if (!(pop.rate >= 0.0)) out.push_back({"population.n", "exponential growth needs n >= 0"});
                break;
            case PopulationKind::degrowth:
                if (!(pop.rate < 0.0 && pop.rate > -1.0))
                    out.push_back({"population.n", "degrowth needs -1 < n < 0"});
                break;
            case PopulationKind::logistic:
                if (pop.capacity < 1) out.push_back({"population.K", "must be >= 1"});
                if (!(pop.rate > 0.0)) out.push_back({"population.rate", "must be > 0"});
                break;
            case PopulationKind::step_shock:
                if (!(pop.factor > 0.0)) out.push_back({"population.factor", "must be > 0"});
                if (pop.at_epoch < 1) out.push_back({"population.at_epoch", "must be >= 1"});
                break;
        }
        return out.size() == before;
    }();
    if (population_ok && config.epochs >= 0) {
        for (std::int64_t t = 0; t <= config.epochs; ++t) {
            if (pop.census_at(t) > kMaxCensus) {
                out.push_back({"population", "census exceeds " + std::to_string(kMaxCensus) + " at epoch " +
                                                 std::to_string(t)});
                break;
            }
        }
    }

    if (config.transfers) {
        if (config.transfers->per_epoch < 0) out.push_back({"transfers.per_epoch", "must be >= 0"});
        if (!(config.transfers->max_fraction >= 0.0 && config.transfers->max_fraction <= 1.0))
            out.push_back({"transfers.max_fraction", "must lie in [0, 1]"});
        if (!config.seed) out.push_back({"seed", "required when random transfers are enabled"});
    }
    return out;
}

ScenarioConfig parse_config(const nlohmann::json& doc) {
    Reader r;
    ScenarioConfig config;
    config.source = doc;
    if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");

    if (const auto* policy = r.child(doc, "policy", "", true)) {
        config.policy.basic_income_B = r.get<double>(*policy, "basic_income_B", "policy", true).value_or(1.0);
        config.policy.demurrage_alpha = r.get<double>(*policy, "demurrage_alpha", "policy", true).value_or(0.5);
        config.policy.epochs_per_year = r.get_or<std::int64_t>(*policy, "epochs_per_year", "policy", 1);
    }
    config.epochs = r.get<std::int64_t>(doc, "epochs", "", true).value_or(0);
    if (const auto* scale = r.child(doc, "poplet_scale", "", false)) {
        if (scale->is_number_unsigned()) {
            config.poplet_scale = BigInt(std::to_string(scale->get<std::uint64_t>()), 10);
        } else if (scale->is_string()) {
            try {
                config.poplet_scale = BigInt(scale->get<std::string>(), 10);
            } catch (const std::invalid_argument&) {
                r.error("poplet_scale", "expected a positive integer");
            }
        } else {
            r.error("poplet_scale", "expected a positive integer");
        }
    }
    if (const auto* pop = r.child(doc, "population", "", true)) config.population = read_population(r, *pop);
    config.dormant_accounts = r.get_or<std::int64_t>(doc, "dormant_accounts", "", 0);
    if (const auto* transfers = r.child(doc, "transfers", "", false)) {
        TransferSpec spec;
        spec.per_epoch = r.get<std::int64_t>(*transfers, "per_epoch", "transfers", true).value_or(0);
        spec.max_fraction = r.get_or(*transfers, "max_fraction", "transfers", spec.max_fraction);
        config.transfers = spec;
    }
    config.seed = r.get<std::uint64_t>(doc, "seed", "", false);

    if (const auto* outputs = r.child(doc, "outputs", "", false)) {
        if (!outputs->is_array()) {
            r.error("outputs", "expected an array of study selectors");
        } else {
            for (std::size_t i = 0; i < outputs->size(); ++i) {
                const auto& entry = (*outputs)[i];
                const std::string path = "outputs[" + std::to_string(i) + "]";
                const auto study = r.get<std::string>(entry, "study", path, true);
                if (!study) continue;
                if (*study == "supply") {
                    config.supply_study = true;
                } else if (*study == "inequality") {
                    config.inequality_study = true;
                } else if (*study == "exchange") {
                    ExchangeStudy ex;
                    if (const auto* s = r.child(entry, "scenario", path, false)) {
                        ex.scenario = read_exchange(r, *s, path + ".scenario");
                    } else {
                        ex.scenario = exchange::symmetric_scenario(config.policy.demurrage_alpha);
                    }
                    if (const auto* shocks = r.child(entry, "shocks", path, false)) {
                        if (!shocks->is_array()) {
                            r.error(path + ".shocks", "expected an array of numbers");
                        } else {
                            for (const auto& v : *shocks) {
                                if (!v.is_number() || !(v.get<double>() > -1.0)) {
                                    r.error(path + ".shocks", "each shock must be a number > -1");
                                    break;
                                }
                                ex.shocks.push_back(v.get<double>());
                            }
                        }
                    } else {
                        ex.shocks = {0.01, 0.05, 0.10, 0.25};
                    }
                    config.exchange_study = std::move(ex);
                } else if (*study == "agent") {
                    AgentStudy ag;
                    ag.alpha = r.get_or(entry, "alpha", path, config.policy.demurrage_alpha);
                    if (const auto* problems = r.child(entry, "problems", path, true)) {
                        if (!problems->is_array()) {
                            r.error(path + ".problems", "expected an array");
                        } else {
                            for (std::size_t k = 0; k < problems->size(); ++k) {
                                double alpha = ag.alpha;
                                ag.problems.push_back(read_agent(r, (*problems)[k],
                                                                 path + ".problems[" + std::to_string(k) + "]", &alpha));
                            }
                        }
                    }
                    config.agent_study = std::move(ag);
                } else {
                    r.error(path + ".study", "unknown study '" + *study + "'");
                }
            }
        }
    }

    auto diagnostics = std::move(r.diagnostics);
    for (auto& d : validate(config)) diagnostics.push_back(std::move(d));
    if (!diagnostics.empty()) throw ConfigError(std::move(diagnostics));
    return config;
}

exchange::ExchangeScenario parse_exchange_scenario(const nlohmann::json& doc, const std::string& path) {
    Reader r;
    auto s = read_exchange(r, doc, path);
    if (!r.diagnostics.empty()) throw ConfigError(std::move(r.diagnostics));
    return s;
}

agent::AgentProblem parse_agent_problem(const nlohmann::json& doc, const std::string& path, double* alpha_out) {
    Reader r;
    auto p = read_agent(r, doc, path, alpha_out);
    if (!r.diagnostics.empty()) throw ConfigError(std::move(r.diagnostics));
    return p;
}

std::uint64_t TransferRng::index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("index range must be non-empty");
    // Largest multiple of n that fits in 2^64; draws at or above it are rejected.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
    std::uint64_t draw = engine_();
    while (draw > limit) draw = engine_();
    return draw % n;
}

Rational TransferRng::unit() {
    const std::uint64_t bits = engine_() >> 11;
    BigInt numerator(std::to_string(bits), 10);
    BigInt denominator = 1;
    denominator <<= 53;
    Rational out(numerator, denominator);
    out.canonicalize();
    return out;
}

RunResult simulate(const ScenarioConfig& config) {
    const auto& policy = config.policy;
    const double alpha = policy.demurrage_alpha;
    const double B = policy.basic_income_B;

    std::int64_t next_serial = 0;
    std::vector<AccountId> initial;
    const std::int64_t census0 = config.population.census_at(0);
    for (std::int64_t i = 0; i < census0; ++i) initial.push_back(account_name(next_serial++));

    LedgerState state = genesis(policy, initial, config.poplet_scale);
    for (std::int64_t i = 0; i < config.dormant_accounts; ++i) state = open_account(std::move(state), dormant_name(i));

    // Participants in join order; leavers are taken from the back.
    std::vector<AccountId> roster = initial;
    std::optional<TransferRng> rng;
    if (config.seed) rng.emplace(*config.seed);
    const Rational max_fraction = config.transfers ? from_double(config.transfers->max_fraction) : Rational(0);
    const Rational exact_B = policy.exact_basic_income();
    const Rational exact_alpha = policy.exact_alpha();

    RunResult result;
    result.rows.reserve(static_cast<std::size_t>(config.epochs));
    double model_supply = 0.0;
    double residue_bound_poplets = 0.0;  // sum of |rounding| over mintings, in PoPlets

    for (std::int64_t t = 1; t <= config.epochs; ++t) {
        const std::int64_t previous = state.census;
        const std::int64_t census = config.population.census_at(t);
        std::vector<AccountId> joined, left;
        for (std::int64_t i = previous; i < census; ++i) {
            joined.push_back(account_name(next_serial++));
            roster.push_back(joined.back());
        }
        for (std::int64_t i = census; i < previous; ++i) {
            left.push_back(roster.back());
            roster.pop_back();
        }

        auto minted = mint_epoch_poplet(std::move(state), census, joined, left);
        state = std::move(minted.state);
        residue_bound_poplets += Rational(abs(minted.report.rounding_residue_poplets)).get_d();

        if (config.transfers && config.transfers->per_epoch > 0) {
            std::vector<AccountId> accounts;
            accounts.reserve(state.balances.size());
            for (const auto& [id, amount] : state.balances) accounts.push_back(id);
            for (std::int64_t k = 0; k < config.transfers->per_epoch && accounts.size() > 1; ++k) {
                const auto& from = roster[rng->index(roster.size())];
                std::size_t to_index = rng->index(accounts.size() - 1);
                const auto from_pos = static_cast<std::size_t>(
                    std::lower_bound(accounts.begin(), accounts.end(), from) - accounts.begin());
                if (to_index >= from_pos) ++to_index;
                const BigInt amount = floor_of(Rational(state.balances.at(from)) * rng->unit() * max_fraction);
                state = transfer(std::move(state), from, accounts[to_index], amount);
            }
        }

        EpochRow row;
        row.t = t;
        row.census = census;
        row.population_growth = static_cast<double>(census) / static_cast<double>(previous) - 1.0;
        row.exchange_rate = state.exchange_rate.get_d();
        const Rational total = total_supply_popcoin(state);
        row.total_supply = total.get_d();
        row.distributed = minted.report.minted_total_popcoin.get_d();
        row.interest_rate = monetary::interest_rate(row.population_growth, alpha);

        std::vector<double> holdings;
        holdings.reserve(state.participants.size());
        for (const auto& id : state.participants) holdings.push_back(state.balances.at(id).get_d() * row.exchange_rate);
        row.gini = inequality::gini(holdings);
        row.variance = inequality::variance(holdings);
        row.max_ratio = inequality::max_ratio(holdings);

        model_supply = monetary::supply_step(model_supply, row.population_growth, alpha, B, census);
        row.model_supply = model_supply;

        // Ledger vs analytic recurrence: they differ only by accumulated PoPlet rounding.
        const double tolerance = residue_bound_poplets * row.exchange_rate + 1e-12 * std::abs(model_supply);
        if (std::abs(row.total_supply - model_supply) > tolerance) {
            throw InvariantViolation("epoch " + std::to_string(t) + ": ledger supply " +
                                     format_double(row.total_supply) + " deviates from model " +
                                     format_double(model_supply));
        }
        if (total >= exact_B * census / exact_alpha) {
            throw InvariantViolation("epoch " + std::to_string(t) + ": supply reached the cap B N / alpha");
        }
        if (log_level() >= 2 && (t % 100 == 0 || t == config.epochs)) {
            std::fprintf(stderr, "[popcoin] epoch %lld census %lld supply %s\n", static_cast<long long>(t),
                         static_cast<long long>(census), format_double(row.total_supply).c_str());
        }
        result.rows.push_back(row);
    }
    result.final_state = std::move(state);
    return result;
}

const std::vector<std::string>& epoch_columns() {
    static const std::vector<std::string> columns = {"t", "N", "n", "E", "M_total", "D", "R", "gini", "variance", "max_ratio"};
    return columns;
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void write_epoch_csv(std::ostream& out, const std::vector<EpochRow>& rows) {
    write_row(out, epoch_columns());
    for (const auto& row : rows) {
        write_row(out, {format_int(row.t), format_int(row.census), format_double(row.population_growth),
                        format_double(row.exchange_rate), format_double(row.total_supply),
                        format_double(row.distributed), format_double(row.interest_rate), format_double(row.gini),
                        format_double(row.variance), format_double(row.max_ratio)});
    }
}

void emit_plot_data(std::ostream& out, const Series& series) {
    write_row(out, {"t", "metric", "value"});
    for (std::size_t i = 0; i < series.t.size(); ++i) {
        for (std::size_t m = 0; m < series.metrics.size(); ++m) {
            write_row(out, {format_int(series.t[i]), series.metrics[m], format_double(series.values[i][m])});
        }
    }
}

void write_agent_csv(std::ostream& out, const AgentStudy& study) {
    write_row(out, {"in1", "out1", "savings", "tax_rate"});
    for (const auto& p : study.problems) {
        const auto tax = agent::effective_tax(p, study.alpha);
        write_row(out, {format_double(p.in1), format_double(agent::optimal_out1(p)), format_double(tax.savings),
                        format_double(tax.tax_rate_of_income)});
    }
}

void write_exchange_csv(std::ostream& out, const ExchangeStudy& study) {
    write_row(out, {"shock", "E_spot_before", "E_longrun_before", "E_longrun_after", "E_spot_after", "i_p",
                    "i_f_before", "i_f_after", "overshoots"});
    for (double shock : study.shocks) {
        const auto r = exchange::overshooting_experiment(study.scenario, shock);
        write_row(out, {format_double(shock), format_double(r.E_spot_before), format_double(r.E_longrun_before),
                        format_double(r.E_longrun_after), format_double(r.E_spot_after), format_double(r.i_p),
                        format_double(r.i_f_before), format_double(r.i_f_after), r.overshoots ? "true" : "false"});
    }
}

nlohmann::json exchange_summary(const ExchangeStudy& study) {
    const auto& s = study.scenario;
    nlohmann::json experiments = nlohmann::json::array();
    for (double shock : study.shocks) {
        const auto r = exchange::overshooting_experiment(s, shock);
        experiments.push_back({{"shock", shock},
                               {"E_spot_before", r.E_spot_before},
                               {"E_longrun_before", r.E_longrun_before},
                               {"E_longrun_after", r.E_longrun_after},
                               {"E_spot_after", r.E_spot_after},
                               {"i_p", r.i_p},
                               {"i_f_before", r.i_f_before},
                               {"i_f_after", r.i_f_after},
                               {"overshoots", r.overshoots}});
    }
    return {
        {"ppp_rate", exchange::ppp_rate(s)},
        {"relative_depreciation", exchange::relative_depreciation(s.mu_p, s.mu_f, s.g_p, s.g_f)},
        {"popcoin_interest_rate", s.popcoin_interest_rate()},
        {"inflation_rate", exchange::inflation_rate(s.n_p, s.g_p)},
        {"overshooting", std::move(experiments)},
    };
}

std::vector<std::string> run(const ScenarioConfig& config, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const RunResult result = simulate(config);
    std::vector<std::string> files;

    {
        std::ostringstream csv;
        write_epoch_csv(csv, result.rows);
        write_text_file(out_dir / "epochs.csv", csv.str());
        files.push_back("epochs.csv");
    }
    write_text_file(out_dir / "ledger_final.json", to_json(result.final_state).dump(2) + "\n");
    files.push_back("ledger_final.json");

    if (config.supply_study) {
        Series series;
        series.metrics = {"N", "n", "E", "M_total", "M_model", "M_cap", "D", "R"};
        const double alpha = config.policy.demurrage_alpha;
        for (const auto& row : result.rows) {
            series.t.push_back(row.t);
            series.values.push_back({static_cast<double>(row.census), row.population_growth, row.exchange_rate,
                                     row.total_supply, row.model_supply,
                                     monetary::steady_state_supply(config.policy.basic_income_B, alpha, row.census),
                                     row.distributed, row.interest_rate});
        }
        std::ostringstream csv;
        emit_plot_data(csv, series);
        write_text_file(out_dir / "supply_plot.csv", csv.str());
        files.push_back("supply_plot.csv");
    }
    if (config.inequality_study) {
        const double alpha = config.policy.demurrage_alpha;
        const double B = config.policy.basic_income_B;
        std::ostringstream csv;
        write_row(csv, {"t", "N", "gini", "gini_bound", "variance", "variance_bound", "max_ratio", "ratio_bound"});
        for (const auto& row : result.rows) {
            write_row(csv, {format_int(row.t), format_int(row.census), format_double(row.gini),
                            format_double(inequality::gini_bound(alpha, row.census)), format_double(row.variance),
                            format_double(inequality::variance_bound(alpha, B, row.census)),
                            format_double(row.max_ratio), format_double(inequality::ratio_bound(alpha, row.census))});
        }
        write_text_file(out_dir / "inequality.csv", csv.str());
        files.push_back("inequality.csv");
    }
    if (config.exchange_study) {
        std::ostringstream csv;
        write_exchange_csv(csv, *config.exchange_study);
        write_text_file(out_dir / "exchange.csv", csv.str());
        write_text_file(out_dir / "exchange.json", exchange_summary(*config.exchange_study).dump(2) + "\n");
        files.push_back("exchange.csv");
        files.push_back("exchange.json");
    }
    if (config.agent_study) {
        std::ostringstream csv;
        write_agent_csv(csv, *config.agent_study);
        write_text_file(out_dir / "agent.csv", csv.str());
        files.push_back("agent.csv");
    }

    nlohmann::json manifest = {
        {"format_version", 1},
        {"config", config.source},
        {"epochs_written", result.rows.size()},
        {"files", files},
        {"prng", "mt19937_64"},
    };
    write_text_file(out_dir / "manifest.json", manifest.dump(2) + "\n");
    files.push_back("manifest.json");
    return files;
}

}  // namespace popcoin::scenario
