#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "irsmec/scenario.hpp"
#include "irsmec/solvers.hpp"

namespace irsmec {

enum class Algorithm { Greedy, Penalty, Enumerate, AllOffload, AllLocal };
enum class PhaseMode { Continuous, NoIrs, Discrete };

/// One benchmark scheme: solver choice plus how IRS phases are configured.
/// Discrete schemes quantize the continuous optimum and refine it by
/// alternating maximization over L levels.
struct Scheme {
    Algorithm algorithm = Algorithm::Greedy;
    PhaseMode phases = PhaseMode::Continuous;
    std::size_t levels = 0; ///< L, discrete schemes only

    std::string name() const;
    /// Parses names like "greedy_irs", "penalty_no_irs", "all_local",
    /// "greedy_discrete(4)". Returns nullopt for unknown names.
    static std::optional<Scheme> parse(const std::string& name);
    static std::vector<std::string> known_names();
};

struct SweepConfig {
    ScenarioConfig scenario;
    std::string swept_param; ///< "M", "N" or "L"
    std::vector<std::size_t> values;
    std::size_t trials = 100;
    std::uint64_t base_seed = 1;
    std::vector<Scheme> schemes;
    std::size_t parallel = 1; ///< worker threads; never affects results

    void validate() const;
};

struct TrialMetrics {
    std::string scheme;
    std::size_t param_value = 0;
    double total_energy = 0.0;
    double near_irs_energy = 0.0;    ///< energy of the near-IRS device group
    double near_server_energy = 0.0; ///< energy of the far (near-server) group
    std::vector<int> offloaded;      ///< per-device mode flags
    double solver_wall_time = 0.0;   ///< solver call only, s
    double phase_wall_time = 0.0;    ///< phase optimization, s
    std::uint64_t seed = 0;
    bool failed = false;             ///< solver convergence failure
};

struct SweepRow {
    std::string param_name;
    std::size_t param_value = 0;
    std::string scheme;
    std::size_t trials = 0;
    std::size_t failed_trials = 0;
    double mean_energy = 0.0;
    double std_energy = 0.0;
    double mean_solver_time = 0.0;       ///< solver only, s
    double mean_solver_phase_time = 0.0; ///< solver + phase optimization, s
    double offload_prob_all = 0.0;
    double offload_prob_near_irs = 0.0;
    double offload_prob_near_server = 0.0;
    double mean_near_irs_energy = 0.0;
    double mean_near_server_energy = 0.0;
};

struct SweepTable {
    std::string param_name;
    std::vector<SweepRow> rows;
};

/// Places devices, draws channels, configures phases per the scheme, and runs
/// the scheme's solver. Only the solver call is timed as solver_wall_time;
/// phase configuration is timed separately.
TrialMetrics run_trial(const ScenarioConfig& cfg, const Scheme& scheme,
                       std::uint64_t seed);

/// Full Monte Carlo sweep; trial seeds are stable_mix(base_seed, param_index,
/// trial_index), so the table is reproducible and order-independent.
SweepTable run_sweep(const SweepConfig& sweep);

/// Writes the aggregate table. Format "csv" or "json"; columns are fixed and
/// values are emitted at full double precision with '.' decimal point.
void emit_table(const SweepTable& table, const std::string& format,
                const std::string& path);

SweepTable parse_table_csv(const std::string& path);

/// Emits a self-contained matplotlib script plotting one curve per scheme.
/// Families: energy_vs_M, runtime_vs_M, energy_vs_N, runtime_vs_N,
/// offload_prob, group_energy, discrete_loss.
std::string emit_plot_script(const SweepTable& table,
                             const std::string& figure_family,
                             const std::string& csv_relpath);

std::vector<std::string> known_figure_families();

} // namespace irsmec
