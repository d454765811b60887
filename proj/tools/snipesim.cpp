// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <snipesim/report.hpp>
#include <snipesim/scenario.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

void WriteOutput(const std::string& rendered, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << rendered;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + out_path);
    out << rendered;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"snipesim — deterministic desk-scale simulator of BRC20 marketplace "
                 "purchases, mempool sniping, and its countermeasures"};
    app.require_subcommand(1);

    std::string scenario;
    std::optional<uint64_t> seed;
    std::string policy;
    bool fee_lock = false;
    std::string run_format = "text";
    std::string run_out;
    CLI::App* run = app.add_subcommand("run", "Run a scenario and emit its report");
    run->add_option("--scenario", scenario, "Built-in scenario name or scenario file path")
        ->required();
    run->add_option("--seed", seed, "Deterministic seed (default: scenario header)");
    run->add_option("--policy", policy, "Mempool conflict policy")
        ->check(CLI::IsMember({"coexist", "rbf", "rbf-replace"}));
    run->add_flag("--fee-lock", fee_lock, "Enforce fee-lock commitments at admission");
    run->add_option("--format", run_format, "Report format")
        ->check(CLI::IsMember({"text", "json"}));
    run->add_option("--out", run_out, "Write the report to a file instead of stdout");

    CLI::App* list = app.add_subcommand("list", "List the built-in scenarios");

    std::string report_in;
    std::string report_format = "text";
    std::string report_out;
    CLI::App* report = app.add_subcommand("report", "Re-render a saved json report");
    report->add_option("--in", report_in, "Path to a json report produced by run")->required();
    report->add_option("--format", report_format, "Report format")
        ->check(CLI::IsMember({"text", "json"}));
    report->add_option("--out", report_out, "Write the report to a file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            snipesim::ScenarioSpec spec = snipesim::LoadScenario(scenario);
            snipesim::ScenarioOverrides overrides;
            overrides.seed = seed;
            if (!policy.empty()) {
                overrides.mode = policy == "coexist" ? snipesim::PolicyMode::Coexist
                                                     : snipesim::PolicyMode::RbfReplace;
            }
            if (fee_lock) overrides.fee_lock = true;
            snipesim::Report result = snipesim::RunScenario(spec, overrides);
            WriteOutput(snipesim::EmitReport(result, run_format), run_out);
            return result.expectations_pass ? 0 : 1;
        }
        if (list->parsed()) {
            for (const std::string& name : snipesim::ListScenarios()) std::cout << name << '\n';
            return 0;
        }
        if (report->parsed()) {
            std::ifstream in(report_in, std::ios::binary);
            if (!in) throw std::runtime_error("cannot open report file: " + report_in);
            nlohmann::ordered_json doc = nlohmann::ordered_json::parse(in);
            WriteOutput(snipesim::RenderReportDoc(doc, report_format), report_out);
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
