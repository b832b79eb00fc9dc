#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "irsmec/experiments.hpp"

namespace irsmec {

/// Benchmark section: solver timing across problem sizes.
struct BenchConfig {
    std::vector<std::size_t> n_values = {8, 16, 32};
    std::size_t repetitions = 20;
    std::size_t M = 100;
    std::uint64_t base_seed = 1;
};

/// Full CLI configuration document. Defaults mirror the stock 8-device
/// scenario; unknown keys in the document are rejected.
struct CliConfig {
    ScenarioConfig scenario = default_scenario();
    std::optional<SweepConfig> sweep; ///< present when the document has "sweep"
    std::vector<std::string> figures; ///< plot families for the sweep command
    BenchConfig bench;
    std::size_t parallel = 1;
};

/// Parses a config document, applying defaults for missing keys.
/// Throws DomainError naming the offending key on validation failure.
CliConfig parse_config(const nlohmann::json& doc);
CliConfig load_config(const std::string& path);

/// Effective config (defaults applied) as a document, for echoing next to
/// results so every output is self-describing.
nlohmann::ordered_json config_to_json(const CliConfig& cfg);

/// Full machine-readable solver output for one trial.
nlohmann::ordered_json report_to_json(const SolverReport& rep,
                                      const std::vector<DeviceParams>& devs,
                                      const SystemParams& sys);

} // namespace irsmec
