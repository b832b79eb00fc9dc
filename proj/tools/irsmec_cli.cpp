#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "irsmec/config_io.hpp"
#include "irsmec/errors.hpp"

namespace fs = std::filesystem;
using namespace irsmec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitIo = 4;

std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open " + path.string());
    out << text;
    if (!out) throw std::ios_base::failure("write failed: " + path.string());
}

int cmd_solve(const std::string& config_path, const std::string& algorithm,
              std::uint64_t seed, const std::string& out_path,
              const std::string& format) {
    CliConfig cfg =
        config_path.empty() ? CliConfig{} : load_config(config_path);
    auto scheme = Scheme::parse(algorithm);
    if (!scheme) {
        std::cerr << "unknown algorithm '" << algorithm << "'. Valid schemes:\n";
        for (const auto& n : Scheme::known_names()) std::cerr << "  " << n << "\n";
        return kExitValidation;
    }

    Rng rng(seed);
    auto positions = place_devices(cfg.scenario, rng);
    auto channels = build_channels(cfg.scenario, positions, rng);

    std::vector<double> b(cfg.scenario.sys.N);
    std::vector<std::vector<double>> theta(cfg.scenario.sys.N);
    for (std::size_t i = 0; i < cfg.scenario.sys.N; ++i) {
        EffectiveLink link;
        if (scheme->phases == PhaseMode::NoIrs) {
            link = effective_gain(channels.g[i], {}, {}, {},
                                  cfg.scenario.sys.sigma2);
        } else if (scheme->phases == PhaseMode::Discrete) {
            const std::size_t L =
                scheme->levels > 0 ? scheme->levels : cfg.scenario.sys.L;
            auto cont = optimal_phases_continuous(channels.g[i], channels.h[i],
                                                  channels.r);
            auto th = am_discrete_phases(channels.g[i], channels.h[i],
                                         channels.r, L,
                                         quantize_phases(cont, L));
            link = effective_gain(channels.g[i], channels.h[i], channels.r, th,
                                  cfg.scenario.sys.sigma2);
        } else {
            auto th = optimal_phases_continuous(channels.g[i], channels.h[i],
                                                channels.r);
            link = effective_gain(channels.g[i], channels.h[i], channels.r, th,
                                  cfg.scenario.sys.sigma2);
        }
        b[i] = link.b;
        theta[i] = std::move(link.theta);
    }
    SolverReport rep;
    switch (scheme->algorithm) {
        case Algorithm::Greedy:
            rep = greedy_solve(cfg.scenario.devs, cfg.scenario.sys, b);
            break;
        case Algorithm::Penalty:
            rep = penalty_solve(cfg.scenario.devs, cfg.scenario.sys, b);
            break;
        case Algorithm::Enumerate:
            rep = enumerate_solve(cfg.scenario.devs, cfg.scenario.sys, b);
            break;
        case Algorithm::AllOffload:
            rep = all_offload_solve(cfg.scenario.devs, cfg.scenario.sys, b);
            break;
        case Algorithm::AllLocal:
            rep = all_local_solve(cfg.scenario.devs, cfg.scenario.sys);
            break;
    }
    rep.solution.theta = std::move(theta);

    auto doc = report_to_json(rep, cfg.scenario.devs, cfg.scenario.sys);
    doc["scheme"] = scheme->name();
    doc["seed"] = seed;

    std::string text;
    if (format == "json") {
        text = doc.dump(2) + "\n";
    } else if (format == "text") {
        std::ostringstream s;
        s << "scheme: " << scheme->name() << "\nseed: " << seed
          << "\ntotal energy: " << fmt_double(rep.objective) << " J\n"
          << "iterations: " << rep.iterations
          << "\ninner bisection calls: " << rep.inner_bisection_calls << "\n";
        for (std::size_t i = 0; i < rep.solution.beta.size(); ++i) {
            s << "device " << i << ": "
              << (rep.solution.beta[i] ? "offload" : "local")
              << " tau=" << fmt_double(rep.solution.tau[i])
              << "s f=" << fmt_double(rep.solution.f[i])
              << "Hz P=" << fmt_double(rep.solution.P[i]) << "W\n";
        }
        text = s.str();
    } else {
        std::cerr << "unknown format '" << format << "' (use json or text)\n";
        return kExitValidation;
    }

    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_file(out_path, text);
    }
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              std::size_t parallel_override) {
    CliConfig cfg = load_config(config_path);
    if (!cfg.sweep) {
        std::cerr << "config has no 'sweep' section\n";
        return kExitValidation;
    }
    if (parallel_override > 0) cfg.sweep->parallel = parallel_override;
    fs::create_directories(out_dir);

    SweepTable table = run_sweep(*cfg.sweep);
    const fs::path dir(out_dir);
    emit_table(table, "csv", (dir / "sweep.csv").string());
    emit_table(table, "json", (dir / "sweep.json").string());
    write_file(dir / "config.json", config_to_json(cfg).dump(2) + "\n");

    std::vector<std::string> families = cfg.figures;
    if (families.empty()) {
        families = {cfg.sweep->swept_param == "L"
                        ? std::string("discrete_loss")
                        : "energy_vs_" + cfg.sweep->swept_param};
    }
    for (const auto& fam : families) {
        write_file(dir / (fam + ".py"),
                   emit_plot_script(table, fam, "sweep.csv"));
    }
    return kExitOk;
}

int cmd_bench(const std::string& config_path, const std::string& out_path) {
    CliConfig cfg =
        config_path.empty() ? CliConfig{} : load_config(config_path);
    const BenchConfig& be = cfg.bench;

    struct Row {
        std::string algorithm;
        std::size_t N;
        double median_time;
    };
    std::vector<Row> rows;
    for (const char* alg : {"greedy_irs", "penalty_irs"}) {
        auto scheme = *Scheme::parse(alg);
        for (std::size_t ni = 0; ni < be.n_values.size(); ++ni) {
            const std::size_t N = be.n_values[ni];
            ScenarioConfig sc = default_scenario(N, be.M);
            sc.sys.B = cfg.scenario.sys.B;
            sc.sys.sigma2 = cfg.scenario.sys.sigma2;
            sc.sys.T = cfg.scenario.sys.T;
            std::vector<double> times;
            for (std::size_t r = 0; r < be.repetitions; ++r) {
                auto m = run_trial(sc, scheme,
                                   stable_mix(be.base_seed, ni, r));
                if (!m.failed) times.push_back(m.solver_wall_time);
            }
            std::sort(times.begin(), times.end());
            const double median =
                times.empty() ? 0.0 : times[times.size() / 2];
            rows.push_back({alg, N, median});
        }
    }

    std::ostringstream s;
    s << "algorithm,N,repetitions,median_solver_time_s,ratio_vs_first_N\n";
    for (const auto& row : rows) {
        double first = 0.0;
        for (const auto& other : rows) {
            if (other.algorithm == row.algorithm) {
                first = other.median_time;
                break;
            }
        }
        const double ratio = first > 0.0 ? row.median_time / first : 0.0;
        s << row.algorithm << ',' << row.N << ',' << be.repetitions << ','
          << fmt_double(row.median_time) << ',' << fmt_double(ratio) << "\n";
    }
    if (out_path.empty()) {
        std::cout << s.str();
    } else {
        write_file(out_path, s.str());
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"IRS-aided MEC binary-offloading energy minimization"};
    app.require_subcommand(1);

    std::string config_path, out_path, algorithm = "greedy_irs";
    std::string format = "json";
    std::uint64_t seed = 1;
    std::size_t parallel = 0;

    auto* solve = app.add_subcommand("solve", "solve one problem instance");
    solve->add_option("--config", config_path, "config JSON path");
    solve->add_option("--algorithm", algorithm, "scheme name");
    solve->add_option("--seed", seed, "trial seed");
    solve->add_option("--out", out_path, "output file (default: stdout)");
    solve->add_option("--format", format, "json or text");

    auto* sweep = app.add_subcommand("sweep", "run a Monte Carlo sweep");
    sweep->add_option("--config", config_path, "config JSON path")->required();
    sweep->add_option("--out", out_path, "output directory")->required();
    sweep->add_option("--parallel", parallel, "worker threads (overrides config)");

    auto* bench = app.add_subcommand("bench", "time greedy vs penalty solvers");
    bench->add_option("--config", config_path, "config JSON path");
    bench->add_option("--out", out_path, "output CSV (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            return cmd_solve(config_path, algorithm, seed, out_path, format);
        }
        if (sweep->parsed()) {
            return cmd_sweep(config_path, out_path, parallel);
        }
        if (bench->parsed()) {
            return cmd_bench(config_path, out_path);
        }
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
