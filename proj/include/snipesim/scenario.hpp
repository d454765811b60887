// Copyright (c) 2026 The snipesim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <snipesim/report.hpp>
#include <snipesim/sim.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace snipesim {

class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

/** One scripted step: a verb plus key=value arguments ("as" names the
 *  resulting transaction or order for reports and expectations). */
struct ScenarioAction {
    std::string verb;
    std::map<std::string, std::string> args;
};

/** A parsed scenario document: header settings, declared wallets, genesis
 *  funding, the ordered action script, and the expectation lines checked
 *  after the script finishes. */
struct ScenarioSpec {
    std::string name{"adhoc"};
    uint64_t seed{1};
    MempoolPolicy policy{};
    Amount coinbase_reward{5'000'000'000};
    int64_t block_max_vbytes{1'000'000};
    std::vector<std::string> wallets;
    std::vector<std::pair<std::string, Amount>> genesis;
    std::vector<ScenarioAction> actions;
    std::vector<std::string> expectations;
};

/** Command-line knobs layered over the scenario header. */
struct ScenarioOverrides {
    std::optional<uint64_t> seed;
    std::optional<PolicyMode> mode;
    std::optional<bool> fee_lock;
};

/** Names of the embedded scenarios, stable order. */
[[nodiscard]] std::vector<std::string> ListScenarios();

[[nodiscard]] bool IsBuiltinScenario(const std::string& name);

/** Parses the scenario text format documented in the README. */
[[nodiscard]] ScenarioSpec ParseScenarioText(const std::string& text,
                                             const std::string& fallback_name = "adhoc");

/** Loads an embedded scenario by name, or any other argument as a file path. */
[[nodiscard]] ScenarioSpec LoadScenario(const std::string& name_or_path);

[[nodiscard]] SimConfig MakeConfig(const ScenarioSpec& spec, const ScenarioOverrides& overrides = {});

/** Runs the script on a fresh simulation and evaluates the expectations. */
[[nodiscard]] Report RunScenario(const ScenarioSpec& spec, const ScenarioOverrides& overrides = {});

/** Same, driving a caller-owned simulation (constructed from MakeConfig) so
 *  tests can inspect the final world state alongside the report. */
Report RunScenarioWith(Simulation& sim, const ScenarioSpec& spec);

} // namespace snipesim
