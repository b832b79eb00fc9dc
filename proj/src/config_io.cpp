#include "irsmec/config_io.hpp"

#include <fstream>
#include <set>

#include "irsmec/errors.hpp"

namespace irsmec {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) {
            throw DomainError("config: unknown key '" + where + key + "'");
        }
    }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
    if (obj.contains(key)) {
        try {
            out = obj.at(key).get<T>();
        } catch (const json::exception&) {
            throw DomainError(std::string("config: bad value for key '") + key +
                              "'");
        }
    }
}

ScenarioConfig parse_scenario(const json& doc) {
    check_keys(doc, "scenario.",
               {"N", "M", "B", "sigma2", "T", "L", "epsilon", "S_bits", "C",
                "f_max", "path_loss", "rician_K", "n_far", "n_near",
                "geometry"});
    ScenarioConfig cfg = default_scenario();
    std::size_t N = cfg.sys.N;
    read(doc, "N", N);
    cfg = default_scenario(N, cfg.sys.M);
    read(doc, "M", cfg.sys.M);
    read(doc, "B", cfg.sys.B);
    read(doc, "sigma2", cfg.sys.sigma2);
    read(doc, "T", cfg.sys.T);
    read(doc, "L", cfg.sys.L);

    DeviceParams dev = cfg.devs[0];
    read(doc, "epsilon", dev.epsilon);
    read(doc, "S_bits", dev.S_bits);
    read(doc, "C", dev.C);
    read(doc, "f_max", dev.f_max);
    cfg.devs.assign(N, dev);

    if (doc.contains("path_loss")) {
        const auto& pl = doc.at("path_loss");
        check_keys(pl, "scenario.path_loss.", {"lambda", "D0", "alpha"});
        read(pl, "lambda", cfg.path_loss.lambda);
        read(pl, "D0", cfg.path_loss.D0);
        read(pl, "alpha", cfg.path_loss.alpha);
    }
    read(doc, "rician_K", cfg.rician_K);
    read(doc, "n_far", cfg.n_far);
    read(doc, "n_near", cfg.n_near);
    if (!doc.contains("n_far") && !doc.contains("n_near")) {
        cfg.n_far = (N + 1) / 2;
        cfg.n_near = N - cfg.n_far;
    }

    if (doc.contains("geometry")) {
        const auto& g = doc.at("geometry");
        check_keys(g, "scenario.geometry.",
                   {"server_height", "irs_height", "d1", "d2",
                    "ap_irs_horizontal"});
        read(g, "server_height", cfg.geometry.server_height);
        read(g, "irs_height", cfg.geometry.irs_height);
        read(g, "d1", cfg.geometry.d1);
        read(g, "d2", cfg.geometry.d2);
        read(g, "ap_irs_horizontal", cfg.geometry.ap_irs_horizontal);
    }
    cfg.validate();
    return cfg;
}

} // namespace

CliConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw DomainError("config: document must be an object");
    check_keys(doc, "", {"scenario", "sweep", "bench", "parallel"});

    CliConfig cfg;
    if (doc.contains("scenario")) {
        cfg.scenario = parse_scenario(doc.at("scenario"));
    }
    read(doc, "parallel", cfg.parallel);
    if (cfg.parallel < 1) throw DomainError("config: parallel must be >= 1");

    if (doc.contains("sweep")) {
        const auto& sw = doc.at("sweep");
        check_keys(sw, "sweep.",
                   {"param", "values", "trials", "base_seed", "schemes",
                    "figures"});
        SweepConfig sweep;
        sweep.scenario = cfg.scenario;
        sweep.parallel = cfg.parallel;
        read(sw, "param", sweep.swept_param);
        read(sw, "values", sweep.values);
        read(sw, "trials", sweep.trials);
        read(sw, "base_seed", sweep.base_seed);
        std::vector<std::string> names = {"greedy_irs", "penalty_irs"};
        read(sw, "schemes", names);
        for (const auto& name : names) {
            auto scheme = Scheme::parse(name);
            if (!scheme) {
                throw DomainError("config: unknown scheme '" + name + "'");
            }
            sweep.schemes.push_back(*scheme);
        }
        read(sw, "figures", cfg.figures);
        for (const auto& fam : cfg.figures) {
            const auto known = known_figure_families();
            if (std::find(known.begin(), known.end(), fam) == known.end()) {
                throw DomainError("config: unknown figure family '" + fam + "'");
            }
        }
        sweep.validate();
        cfg.sweep = std::move(sweep);
    }

    if (doc.contains("bench")) {
        const auto& be = doc.at("bench");
        check_keys(be, "bench.", {"N_values", "repetitions", "M", "base_seed"});
        read(be, "N_values", cfg.bench.n_values);
        read(be, "repetitions", cfg.bench.repetitions);
        read(be, "M", cfg.bench.M);
        read(be, "base_seed", cfg.bench.base_seed);
        if (cfg.bench.n_values.empty() || cfg.bench.repetitions < 1) {
            throw DomainError("config: bench needs N_values and repetitions >= 1");
        }
    }
    return cfg;
}

CliConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open config: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw DomainError("config: parse error in " + path + ": " + e.what());
    }
    return parse_config(doc);
}

nlohmann::ordered_json config_to_json(const CliConfig& cfg) {
    nlohmann::ordered_json doc;
    const auto& sc = cfg.scenario;
    doc["scenario"] = {
        {"N", sc.sys.N},
        {"M", sc.sys.M},
        {"B", sc.sys.B},
        {"sigma2", sc.sys.sigma2},
        {"T", sc.sys.T},
        {"L", sc.sys.L},
        {"epsilon", sc.devs[0].epsilon},
        {"S_bits", sc.devs[0].S_bits},
        {"C", sc.devs[0].C},
        {"f_max", sc.devs[0].f_max},
        {"path_loss",
         {{"lambda", sc.path_loss.lambda},
          {"D0", sc.path_loss.D0},
          {"alpha", sc.path_loss.alpha}}},
        {"rician_K", sc.rician_K},
        {"n_far", sc.n_far},
        {"n_near", sc.n_near},
        {"geometry",
         {{"server_height", sc.geometry.server_height},
          {"irs_height", sc.geometry.irs_height},
          {"d1", sc.geometry.d1},
          {"d2", sc.geometry.d2},
          {"ap_irs_horizontal", sc.geometry.ap_irs_horizontal}}}};
    doc["parallel"] = cfg.parallel;
    if (cfg.sweep) {
        std::vector<std::string> names;
        for (const auto& s : cfg.sweep->schemes) names.push_back(s.name());
        doc["sweep"] = {{"param", cfg.sweep->swept_param},
                        {"values", cfg.sweep->values},
                        {"trials", cfg.sweep->trials},
                        {"base_seed", cfg.sweep->base_seed},
                        {"schemes", names},
                        {"figures", cfg.figures}};
    }
    doc["bench"] = {{"N_values", cfg.bench.n_values},
                    {"repetitions", cfg.bench.repetitions},
                    {"M", cfg.bench.M},
                    {"base_seed", cfg.bench.base_seed}};
    return doc;
}

nlohmann::ordered_json report_to_json(const SolverReport& rep,
                                      const std::vector<DeviceParams>& devs,
                                      const SystemParams& sys) {
    nlohmann::ordered_json doc;
    doc["total_energy_J"] = rep.objective;
    doc["iterations"] = rep.iterations;
    doc["inner_bisection_calls"] = rep.inner_bisection_calls;
    doc["wall_time_s"] = rep.wall_time;

    auto rep_eval = evaluate_solution(devs, sys, rep.solution);
    doc["feasible"] = rep_eval.feasible();
    doc["evaluated_energy_J"] = rep_eval.total_energy;

    nlohmann::ordered_json dev_rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < rep.solution.beta.size(); ++i) {
        dev_rows.push_back({{"device", i},
                            {"offload", rep.solution.beta[i]},
                            {"tau_s", rep.solution.tau[i]},
                            {"f_Hz", rep.solution.f[i]},
                            {"P_W", rep.solution.P[i]},
                            {"theta_rad", i < rep.solution.theta.size()
                                              ? rep.solution.theta[i]
                                              : std::vector<double>{}}});
    }
    doc["devices"] = std::move(dev_rows);
    return doc;
}

} // namespace irsmec
