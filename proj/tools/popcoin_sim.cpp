// popcoin-sim: command-line driver for scenario runs and the standalone studies.
//
//   popcoin-sim run <config.json> --out <dir>
//   popcoin-sim validate <config.json>
//   popcoin-sim agent <problems.json> [--out <dir>]
//   popcoin-sim exchange <scenario.json> [--out <dir>]
//
// Exit codes: 0 success, 2 config error, 3 runtime invariant violation, 1 anything else.

#include "popcoin/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInvariant = 3;

using popcoin::scenario::ConfigError;

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open file");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path, std::string("malformed JSON: ") + e.what());
    }
}

void print_diagnostics(const ConfigError& e) {
    for (const auto& d : e.diagnostics()) std::cerr << "error: " << d.field << ": " << d.message << "\n";
}

void write_or_print(const std::string& out_dir, const std::string& name, const std::string& contents) {
    if (out_dir.empty()) {
        std::cout << contents;
        return;
    }
    std::filesystem::create_directories(out_dir);
    std::ofstream out(std::filesystem::path(out_dir) / name, std::ios::binary);
    out << contents;
    if (!out) throw std::runtime_error("failed writing " + name);
}

int cmd_run(const std::string& config_path, const std::string& out_dir) {
    const auto config = popcoin::scenario::parse_config(read_json(config_path));
    const auto files = popcoin::scenario::run(config, out_dir);
    for (const auto& f : files) std::cout << (std::filesystem::path(out_dir) / f).string() << "\n";
    return 0;
}

int cmd_validate(const std::string& config_path) {
    popcoin::scenario::parse_config(read_json(config_path));
    std::cout << "ok\n";
    return 0;
}

int cmd_agent(const std::string& path, const std::string& out_dir) {
    const auto doc = read_json(path);
    if (!doc.is_array()) throw ConfigError("", "expected a JSON array of problems");
    std::ostringstream csv;
    csv << "in1,out1,savings,tax_rate\n";
    for (std::size_t i = 0; i < doc.size(); ++i) {
        double alpha = 0.0;
        const auto p = popcoin::scenario::parse_agent_problem(doc[i], "[" + std::to_string(i) + "]", &alpha);
        const auto tax = popcoin::agent::effective_tax(p, alpha);
        csv << popcoin::format_double(p.in1) << ',' << popcoin::format_double(popcoin::agent::optimal_out1(p)) << ','
            << popcoin::format_double(tax.savings) << ',' << popcoin::format_double(tax.tax_rate_of_income) << '\n';
    }
    write_or_print(out_dir, "agent.csv", csv.str());
    return 0;
}

int cmd_exchange(const std::string& path, const std::string& out_dir) {
    const auto doc = read_json(path);
    popcoin::scenario::ExchangeStudy study;
    const auto& scenario_node = doc.contains("scenario") ? doc.at("scenario") : doc;
    study.scenario = popcoin::scenario::parse_exchange_scenario(scenario_node, "scenario");
    if (doc.contains("shocks")) {
        for (const auto& v : doc.at("shocks")) {
            if (!v.is_number()) throw ConfigError("shocks", "each shock must be a number");
            study.shocks.push_back(v.get<double>());
        }
    } else {
        study.shocks = {0.01, 0.05, 0.10, 0.25};
    }
    const std::string summary = popcoin::scenario::exchange_summary(study).dump(2) + "\n";
    if (out_dir.empty()) {
        std::cout << summary;
    } else {
        std::ostringstream csv;
        popcoin::scenario::write_exchange_csv(csv, study);
        write_or_print(out_dir, "exchange.csv", csv.str());
        write_or_print(out_dir, "exchange.json", summary);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"PoPCoin ledger and monetary-policy simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    auto* run = app.add_subcommand("run", "Run a scenario and write CSV/JSON outputs");
    run->add_option("config", config_path, "Scenario config (JSON)")->required();
    run->add_option("--out", out_dir, "Output directory")->required();

    auto* validate = app.add_subcommand("validate", "Check a scenario config");
    validate->add_option("config", config_path, "Scenario config (JSON)")->required();

    std::string input_path;
    auto* agent = app.add_subcommand("agent", "Solve a batch of two-period saving problems");
    agent->add_option("problems", input_path, "JSON array of problems")->required();
    agent->add_option("--out", out_dir, "Write agent.csv here instead of stdout");

    auto* exchange = app.add_subcommand("exchange", "Exchange-rate and overshooting study");
    exchange->add_option("scenario", input_path, "Exchange scenario (JSON)")->required();
    exchange->add_option("--out", out_dir, "Write exchange.csv/exchange.json here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) return cmd_run(config_path, out_dir);
        if (*validate) return cmd_validate(config_path);
        if (*agent) return cmd_agent(input_path, out_dir);
        if (*exchange) return cmd_exchange(input_path, out_dir);
    } catch (const ConfigError& e) {
        print_diagnostics(e);
        return kExitConfig;
    } catch (const popcoin::scenario::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
