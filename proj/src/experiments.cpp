#include "irsmec/experiments.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "irsmec/errors.hpp"

namespace irsmec {

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

/// Shortest round-trip decimal form, locale-independent.
std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{}) throw DomainError("bad numeric field: " + s);
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

const char* const kCsvHeader =
    "param_name,param_value,scheme,trials,failed_trials,mean_energy_J,"
    "std_energy_J,mean_solver_time_s,offload_prob_all,offload_prob_near_irs,"
    "offload_prob_near_server";

ScenarioConfig apply_param(const ScenarioConfig& base,
                           const std::string& param, std::size_t value) {
    ScenarioConfig cfg = base;
    if (param == "M") {
        cfg.sys.M = value;
    } else if (param == "N") {
        cfg.sys.N = value;
        DeviceParams dev = base.devs.empty()
                               ? DeviceParams{1e-28, kBitsPerMegabyte, 100.0, 1e9}
                               : base.devs[0];
        cfg.devs.assign(value, dev);
        cfg.n_far = (value + 1) / 2;
        cfg.n_near = value - cfg.n_far;
    } else if (param == "L") {
        cfg.sys.L = value;
    } else {
        throw DomainError("unknown swept parameter: " + param);
    }
    return cfg;
}

} // namespace

std::string Scheme::name() const {
    std::string base;
    switch (algorithm) {
        case Algorithm::Greedy: base = "greedy"; break;
        case Algorithm::Penalty: base = "penalty"; break;
        case Algorithm::Enumerate: base = "enumerate"; break;
        case Algorithm::AllOffload: base = "all_offload"; break;
        case Algorithm::AllLocal: return "all_local";
    }
    switch (phases) {
        case PhaseMode::Continuous: return base + "_irs";
        case PhaseMode::NoIrs: return base + "_no_irs";
        case PhaseMode::Discrete:
            return base + "_discrete" +
                   (levels > 0 ? "(" + std::to_string(levels) + ")" : "");
    }
    return base;
}

std::optional<Scheme> Scheme::parse(const std::string& name) {
    if (name == "all_local") return Scheme{Algorithm::AllLocal, PhaseMode::NoIrs, 0};

    std::string head = name;
    std::size_t levels = 0;
    if (auto open = name.find('('); open != std::string::npos) {
        if (name.back() != ')') return std::nullopt;
        head = name.substr(0, open);
        const std::string num = name.substr(open + 1, name.size() - open - 2);
        try {
            levels = std::stoul(num);
        } catch (...) {
            return std::nullopt;
        }
        if (levels < 1) return std::nullopt;
    }

    Algorithm alg;
    std::string rest;
    for (auto [prefix, a] : {std::pair{"greedy_", Algorithm::Greedy},
                             {"penalty_", Algorithm::Penalty},
                             {"enumerate_", Algorithm::Enumerate},
                             {"all_offload_", Algorithm::AllOffload}}) {
        if (head.rfind(prefix, 0) == 0) {
            alg = a;
            rest = head.substr(std::string(prefix).size());
            goto found;
        }
    }
    return std::nullopt;
found:
    if (rest == "irs") return Scheme{alg, PhaseMode::Continuous, 0};
    if (rest == "no_irs") return Scheme{alg, PhaseMode::NoIrs, 0};
    if (rest == "discrete" &&
        (alg == Algorithm::Greedy || alg == Algorithm::Penalty)) {
        return Scheme{alg, PhaseMode::Discrete, levels};
    }
    return std::nullopt;
}

std::vector<std::string> Scheme::known_names() {
    return {"greedy_irs",       "penalty_irs",       "enumerate_irs",
            "all_offload_irs",  "all_local",         "greedy_no_irs",
            "penalty_no_irs",   "enumerate_no_irs",  "greedy_discrete(L)",
            "penalty_discrete(L)"};
}

void SweepConfig::validate() const {
    scenario.validate();
    if (trials < 1) throw DomainError("SweepConfig: trials must be >= 1");
    if (values.empty()) throw DomainError("SweepConfig: values must be non-empty");
    if (schemes.empty()) throw DomainError("SweepConfig: schemes must be non-empty");
    if (swept_param != "M" && swept_param != "N" && swept_param != "L") {
        throw DomainError("SweepConfig: swept_param must be M, N or L");
    }
}

TrialMetrics run_trial(const ScenarioConfig& cfg, const Scheme& scheme,
                       std::uint64_t seed) {
    cfg.validate();
    Rng rng(seed);
    const auto positions = place_devices(cfg, rng);
    const auto channels = build_channels(cfg, positions, rng);

    // phase configuration per device (timed separately from the solver)
    const double t_phase = now_seconds();
    std::vector<double> b(cfg.sys.N);
    std::vector<std::vector<double>> theta(cfg.sys.N);
    std::vector<bool> degenerate(cfg.sys.N, false);
    for (std::size_t i = 0; i < cfg.sys.N; ++i) {
        EffectiveLink link;
        switch (scheme.phases) {
            case PhaseMode::NoIrs:
                link = effective_gain(channels.g[i], {}, {}, {}, cfg.sys.sigma2);
                break;
            case PhaseMode::Continuous: {
                auto th = optimal_phases_continuous(channels.g[i], channels.h[i],
                                                    channels.r);
                link = effective_gain(channels.g[i], channels.h[i], channels.r,
                                      th, cfg.sys.sigma2);
                break;
            }
            case PhaseMode::Discrete: {
                const std::size_t L =
                    scheme.levels > 0 ? scheme.levels : cfg.sys.L;
                if (L < 1) {
                    throw DomainError("discrete scheme requires L >= 1");
                }
                auto cont = optimal_phases_continuous(channels.g[i],
                                                      channels.h[i], channels.r);
                auto th = am_discrete_phases(
                    channels.g[i], channels.h[i], channels.r, L,
                    quantize_phases(cont, L));
                link = effective_gain(channels.g[i], channels.h[i], channels.r,
                                      th, cfg.sys.sigma2);
                break;
            }
        }
        b[i] = link.b;
        theta[i] = std::move(link.theta);
        degenerate[i] = link.degenerate;
    }
    const double phase_time = now_seconds() - t_phase;

    TrialMetrics m;
    m.scheme = scheme.name();
    m.seed = seed;
    m.phase_wall_time = phase_time;
    SolverReport rep;
    try {
        switch (scheme.algorithm) {
            case Algorithm::Greedy: rep = greedy_solve(cfg.devs, cfg.sys, b); break;
            case Algorithm::Penalty: rep = penalty_solve(cfg.devs, cfg.sys, b); break;
            case Algorithm::Enumerate:
                rep = enumerate_solve(cfg.devs, cfg.sys, b);
                break;
            case Algorithm::AllOffload:
                rep = all_offload_solve(cfg.devs, cfg.sys, b);
                break;
            case Algorithm::AllLocal: rep = all_local_solve(cfg.devs, cfg.sys); break;
        }
    } catch (const ConvergenceError&) {
        m.failed = true;
        return m;
    }
    rep.solution.theta = std::move(theta);

    m.total_energy = rep.objective;
    m.solver_wall_time = rep.wall_time;
    m.offloaded = rep.solution.beta;
    for (std::size_t i = 0; i < cfg.sys.N; ++i) {
        const auto& d = cfg.devs[i];
        const double e =
            rep.solution.beta[i]
                ? rep.solution.P[i] * rep.solution.tau[i]
                : d.epsilon * d.S_bits * d.C * rep.solution.f[i] *
                      rep.solution.f[i];
        if (i < cfg.n_far) {
            m.near_server_energy += e;
        } else {
            m.near_irs_energy += e;
        }
    }
    return m;
}

SweepTable run_sweep(const SweepConfig& sweep) {
    sweep.validate();
    struct Task {
        std::size_t param_index;
        std::size_t scheme_index;
        std::size_t trial;
    };
    std::vector<Task> tasks;
    for (std::size_t pi = 0; pi < sweep.values.size(); ++pi) {
        for (std::size_t si = 0; si < sweep.schemes.size(); ++si) {
            for (std::size_t t = 0; t < sweep.trials; ++t) {
                tasks.push_back({pi, si, t});
            }
        }
    }

    std::vector<ScenarioConfig> cfgs;
    cfgs.reserve(sweep.values.size());
    for (std::size_t v : sweep.values) {
        cfgs.push_back(apply_param(sweep.scenario, sweep.swept_param, v));
    }

    std::vector<TrialMetrics> metrics(tasks.size());
    auto worker_body = [&](std::size_t task_index) {
        const Task& tk = tasks[task_index];
        // the seed depends only on (base_seed, param, trial), so all schemes
        // see identical channels within a trial
        const std::uint64_t seed =
            stable_mix(sweep.base_seed, tk.param_index, tk.trial);
        metrics[task_index] =
            run_trial(cfgs[tk.param_index], sweep.schemes[tk.scheme_index], seed);
    };

    const std::size_t workers = std::max<std::size_t>(1, sweep.parallel);
    if (workers == 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) worker_body(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < tasks.size();
                     i = next.fetch_add(1)) {
                    worker_body(i);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    SweepTable table;
    table.param_name = sweep.swept_param;
    for (std::size_t pi = 0; pi < sweep.values.size(); ++pi) {
        const std::size_t n_far = cfgs[pi].n_far;
        const std::size_t n_dev = cfgs[pi].sys.N;
        for (std::size_t si = 0; si < sweep.schemes.size(); ++si) {
            SweepRow row;
            row.param_name = sweep.swept_param;
            row.param_value = sweep.values[pi];
            row.scheme = sweep.schemes[si].name();
            row.trials = sweep.trials;

            double sum_e = 0.0, sum_e2 = 0.0, sum_t = 0.0, sum_tp = 0.0;
            double sum_near_irs = 0.0, sum_near_server = 0.0;
            std::size_t ok_trials = 0;
            std::size_t off_all = 0, off_near_irs = 0, off_near_server = 0;
            for (std::size_t t = 0; t < sweep.trials; ++t) {
                const std::size_t idx =
                    (pi * sweep.schemes.size() + si) * sweep.trials + t;
                const TrialMetrics& m = metrics[idx];
                if (m.failed) {
                    ++row.failed_trials;
                    continue;
                }
                ++ok_trials;
                sum_e += m.total_energy;
                sum_e2 += m.total_energy * m.total_energy;
                sum_t += m.solver_wall_time;
                sum_tp += m.solver_wall_time + m.phase_wall_time;
                sum_near_irs += m.near_irs_energy;
                sum_near_server += m.near_server_energy;
                for (std::size_t i = 0; i < m.offloaded.size(); ++i) {
                    if (!m.offloaded[i]) continue;
                    ++off_all;
                    if (i < n_far) {
                        ++off_near_server;
                    } else {
                        ++off_near_irs;
                    }
                }
            }
            if (ok_trials > 0) {
                const auto k = static_cast<double>(ok_trials);
                row.mean_energy = sum_e / k;
                const double var =
                    std::max(0.0, sum_e2 / k - row.mean_energy * row.mean_energy);
                row.std_energy = std::sqrt(var);
                row.mean_solver_time = sum_t / k;
                row.mean_solver_phase_time = sum_tp / k;
                row.mean_near_irs_energy = sum_near_irs / k;
                row.mean_near_server_energy = sum_near_server / k;
                row.offload_prob_all = off_all / (k * n_dev);
                row.offload_prob_near_server =
                    n_far > 0 ? off_near_server / (k * n_far) : 0.0;
                row.offload_prob_near_irs =
                    n_dev > n_far ? off_near_irs / (k * (n_dev - n_far)) : 0.0;
            }
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

void emit_table(const SweepTable& table, const std::string& format,
                const std::string& path) {
    if (format != "csv" && format != "json") {
        throw DomainError("emit_table: format must be csv or json");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("emit_table: cannot open " + path);

    if (format == "csv") {
        out << kCsvHeader << "\n";
        for (const auto& r : table.rows) {
            out << r.param_name << ',' << r.param_value << ',' << r.scheme << ','
                << r.trials << ',' << r.failed_trials << ','
                << fmt_double(r.mean_energy) << ',' << fmt_double(r.std_energy)
                << ',' << fmt_double(r.mean_solver_time) << ','
                << fmt_double(r.offload_prob_all) << ','
                << fmt_double(r.offload_prob_near_irs) << ','
                << fmt_double(r.offload_prob_near_server) << "\n";
        }
    } else {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& r : table.rows) {
            rows.push_back({{"param_name", r.param_name},
                            {"param_value", r.param_value},
                            {"scheme", r.scheme},
                            {"trials", r.trials},
                            {"failed_trials", r.failed_trials},
                            {"mean_energy_J", r.mean_energy},
                            {"std_energy_J", r.std_energy},
                            {"mean_solver_time_s", r.mean_solver_time},
                            {"offload_prob_all", r.offload_prob_all},
                            {"offload_prob_near_irs", r.offload_prob_near_irs},
                            {"offload_prob_near_server",
                             r.offload_prob_near_server}});
        }
        out << rows.dump(2) << "\n";
    }
    if (!out) throw std::ios_base::failure("emit_table: write failed: " + path);
}

SweepTable parse_table_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("parse_table_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw DomainError("parse_table_csv: unexpected header");
    }
    SweepTable table;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = split_csv_line(line);
        if (f.size() != 11) throw DomainError("parse_table_csv: bad row");
        SweepRow r;
        r.param_name = f[0];
        r.param_value = std::stoul(f[1]);
        r.scheme = f[2];
        r.trials = std::stoul(f[3]);
        r.failed_trials = std::stoul(f[4]);
        r.mean_energy = parse_double(f[5]);
        r.std_energy = parse_double(f[6]);
        r.mean_solver_time = parse_double(f[7]);
        r.offload_prob_all = parse_double(f[8]);
        r.offload_prob_near_irs = parse_double(f[9]);
        r.offload_prob_near_server = parse_double(f[10]);
        if (table.param_name.empty()) table.param_name = r.param_name;
        table.rows.push_back(std::move(r));
    }
    return table;
}

std::vector<std::string> known_figure_families() {
    return {"energy_vs_M", "runtime_vs_M",  "energy_vs_N", "runtime_vs_N",
            "offload_prob", "group_energy", "discrete_loss"};
}

std::string emit_plot_script(const SweepTable& table,
                             const std::string& figure_family,
                             const std::string& csv_relpath) {
    const auto families = known_figure_families();
    if (std::find(families.begin(), families.end(), figure_family) ==
        families.end()) {
        throw DomainError("emit_plot_script: unknown figure family: " +
                          figure_family);
    }
    const std::string& param = table.param_name;
    if ((figure_family == "energy_vs_M" || figure_family == "runtime_vs_M") &&
        param != "M") {
        throw DomainError("emit_plot_script: " + figure_family +
                          " requires a sweep over M");
    }
    if ((figure_family == "energy_vs_N" || figure_family == "runtime_vs_N") &&
        param != "N") {
        throw DomainError("emit_plot_script: " + figure_family +
                          " requires a sweep over N");
    }
    if (figure_family == "discrete_loss" && param != "L") {
        throw DomainError("emit_plot_script: discrete_loss requires a sweep over L");
    }
    if (table.rows.empty()) {
        throw DomainError("emit_plot_script: empty table");
    }

    std::vector<std::string> schemes;
    for (const auto& r : table.rows) {
        if (std::find(schemes.begin(), schemes.end(), r.scheme) == schemes.end()) {
            schemes.push_back(r.scheme);
        }
    }

    std::ostringstream s;
    s << "#!/usr/bin/env python3\n"
      << "# " << figure_family << " plot; reads " << csv_relpath << "\n"
      << "import csv\n"
      << "import matplotlib\n"
      << "matplotlib.use(\"Agg\")\n"
      << "import matplotlib.pyplot as plt\n\n"
      << "rows = list(csv.DictReader(open(\"" << csv_relpath << "\")))\n"
      << "schemes = [";
    for (std::size_t i = 0; i < schemes.size(); ++i) {
        s << (i ? ", " : "") << '"' << schemes[i] << '"';
    }
    s << "]\n"
      << "def series(scheme, col):\n"
      << "    pts = [(int(r[\"param_value\"]), float(r[col])) for r in rows\n"
      << "           if r[\"scheme\"] == scheme]\n"
      << "    pts.sort()\n"
      << "    return [p[0] for p in pts], [p[1] for p in pts]\n\n"
      << "fig, ax = plt.subplots()\n";

    auto inline_series = [&](const char* pyname, auto getter) {
        // these series are not part of the fixed CSV schema, so the values
        // are inlined into the script
        s << pyname << " = {\n";
        for (const auto& scheme : schemes) {
            s << "    \"" << scheme << "\": {";
            bool first = true;
            for (const auto& r : table.rows) {
                if (r.scheme != scheme) continue;
                s << (first ? "" : ", ") << r.param_value << ": "
                  << fmt_double(getter(r));
                first = false;
            }
            s << "},\n";
        }
        s << "}\n";
    };

    if (figure_family == "energy_vs_M" || figure_family == "energy_vs_N" ||
        figure_family == "discrete_loss") {
        s << "for scheme in schemes:\n"
          << "    x, y = series(scheme, \"mean_energy_J\")\n"
          << "    ax.plot(x, y, marker=\"o\", label=scheme)\n"
          << "ax.set_ylabel(\"mean total energy (J)\")\n";
    } else if (figure_family == "runtime_vs_N") {
        s << "for scheme in schemes:\n"
          << "    x, y = series(scheme, \"mean_solver_time_s\")\n"
          << "    ax.plot(x, y, marker=\"o\", label=scheme)\n"
          << "ax.set_ylabel(\"mean solver time (s)\")\n";
    } else if (figure_family == "runtime_vs_M") {
        inline_series("solver_plus_phase_s",
                      [](const SweepRow& r) { return r.mean_solver_phase_time; });
        s << "for scheme in schemes:\n"
          << "    pts = sorted(solver_plus_phase_s[scheme].items())\n"
          << "    ax.plot([p[0] for p in pts], [p[1] for p in pts],\n"
          << "            marker=\"o\", label=scheme)\n"
          << "ax.set_ylabel(\"mean solver + phase time (s)\")\n";
    } else if (figure_family == "offload_prob") {
        s << "for scheme in schemes:\n"
          << "    x, y = series(scheme, \"offload_prob_near_irs\")\n"
          << "    ax.plot(x, y, marker=\"o\", label=scheme + \" near-IRS\")\n"
          << "    x, y = series(scheme, \"offload_prob_near_server\")\n"
          << "    ax.plot(x, y, marker=\"s\", linestyle=\"--\",\n"
          << "            label=scheme + \" near-server\")\n"
          << "ax.set_ylabel(\"offloading probability\")\n"
          << "ax.set_ylim(0, 1.05)\n";
    } else { // group_energy
        inline_series("near_irs_energy_J",
                      [](const SweepRow& r) { return r.mean_near_irs_energy; });
        inline_series("near_server_energy_J",
                      [](const SweepRow& r) { return r.mean_near_server_energy; });
        s << "for scheme in schemes:\n"
          << "    pts = sorted(near_irs_energy_J[scheme].items())\n"
          << "    ax.plot([p[0] for p in pts], [p[1] for p in pts],\n"
          << "            marker=\"o\", label=scheme + \" near-IRS (J)\")\n"
          << "    pts = sorted(near_server_energy_J[scheme].items())\n"
          << "    ax.plot([p[0] for p in pts], [p[1] for p in pts],\n"
          << "            marker=\"s\", linestyle=\"--\",\n"
          << "            label=scheme + \" near-server (J)\")\n"
          << "ax.set_ylabel(\"mean group energy (J)\")\n";
    }

    s << "ax.set_xlabel(\"" << param << "\")\n"
      << "ax.legend()\n"
      << "ax.grid(True, alpha=0.3)\n"
      << "fig.savefig(\"" << figure_family << ".png\", dpi=150)\n";
    return s.str();
}

} // namespace irsmec
