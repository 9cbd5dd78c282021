#pragma once

// Batch scenario driver: runs the PoPlet ledger under a census trajectory and
// writes per-epoch macro and inequality series plus the optional studies.

#include "popcoin/agent.hpp"
#include "popcoin/exchange.hpp"
#include "popcoin/ledger.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace popcoin::scenario {

struct Diagnostic {
    std::string field;    // dotted path into the config document, e.g. "policy.demurrage_alpha"
    std::string message;
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<Diagnostic> diagnostics);
    ConfigError(const std::string& field, const std::string& message)
        : ConfigError(std::vector<Diagnostic>{{field, message}}) {}
    const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

// A cross-check between the ledger and the analytic model failed mid-run.
class InvariantViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class PopulationKind { fixed, exponential, logistic, step_shock, degrowth };

struct PopulationSpec {
    PopulationKind kind = PopulationKind::fixed;
    std::int64_t initial = 1;    // N (fixed) or N0
    double rate = 0.0;           // per-epoch growth n (exponential, degrowth) or logistic rate
    std::int64_t capacity = 1;   // logistic K
    double factor = 1.0;         // step_shock multiplier
    std::int64_t at_epoch = 0;   // step_shock epoch

    // Census at epoch t; always >= 1.
    std::int64_t census_at(std::int64_t t) const;
};

struct TransferSpec {
    std::int64_t per_epoch = 0;
    double max_fraction = 0.5;  // amount ~ floor(balance * U[0,1) * max_fraction)
};

struct AgentStudy {
    double alpha = 0.02;
    std::vector<agent::AgentProblem> problems;
};

struct ExchangeStudy {
    exchange::ExchangeScenario scenario;
    std::vector<double> shocks;
};

struct ScenarioConfig {
    PolicyParams policy;
    std::int64_t epochs = 0;
    BigInt poplet_scale = 100000000;
    PopulationSpec population;
    std::int64_t dormant_accounts = 0;
    std::optional<TransferSpec> transfers;
    std::optional<std::uint64_t> seed;
    bool supply_study = false;
    bool inequality_study = false;
    std::optional<ExchangeStudy> exchange_study;
    std::optional<AgentStudy> agent_study;
    nlohmann::json source;  // the document the config was read from, echoed in the manifest
};

// Range and consistency checks; empty on a well-formed config.
std::vector<Diagnostic> validate(const ScenarioConfig& config);

// Reads and validates a config document. Throws ConfigError listing every problem found.
ScenarioConfig parse_config(const nlohmann::json& doc);

exchange::ExchangeScenario parse_exchange_scenario(const nlohmann::json& doc, const std::string& path);
agent::AgentProblem parse_agent_problem(const nlohmann::json& doc, const std::string& path, double* alpha_out);

// mt19937_64 with fixed, portable mappings to indices and fractions. std::
// distributions are implementation-defined, so they are not used.
class TransferRng {
public:
    explicit TransferRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in [0, n) by rejection sampling.
    std::uint64_t index(std::uint64_t n);

    // Uniform in [0, 1) as k / 2^53.
    Rational unit();

private:
    std::mt19937_64 engine_;
};

struct EpochRow {
    std::int64_t t = 0;
    std::int64_t census = 0;
    double population_growth = 0.0;
    double exchange_rate = 0.0;
    double total_supply = 0.0;
    double distributed = 0.0;
    double interest_rate = 0.0;
    double gini = 0.0;
    double variance = 0.0;
    double max_ratio = 0.0;
    double model_supply = 0.0;   // analytic recurrence from M_0 = 0
};

struct RunResult {
    std::vector<EpochRow> rows;
    LedgerState final_state;
};

// Runs the epoch loop only; no files are written.
RunResult simulate(const ScenarioConfig& config);

// Runs the scenario and writes all output files into `out_dir` (created if needed).
// Returns the list of files written, relative to out_dir.
std::vector<std::string> run(const ScenarioConfig& config, const std::filesystem::path& out_dir);

// Columns of the per-epoch CSV, in order.
const std::vector<std::string>& epoch_columns();

void write_epoch_csv(std::ostream& out, const std::vector<EpochRow>& rows);

struct Series {
    std::vector<std::string> metrics;          // one name per value column
    std::vector<std::int64_t> t;               // row keys
    std::vector<std::vector<double>> values;   // values[row][metric]
};

// Long format: header "t,metric,value", then one row per (t, metric) cell.
void emit_plot_data(std::ostream& out, const Series& series);

void write_agent_csv(std::ostream& out, const AgentStudy& study);
void write_exchange_csv(std::ostream& out, const ExchangeStudy& study);
nlohmann::json exchange_summary(const ExchangeStudy& study);

std::string csv_field(const std::string& text);

}  // namespace popcoin::scenario
