#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "irsmec/errors.hpp"
#include "irsmec/experiments.hpp"

using namespace irsmec;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& p) : path(p) {}
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("scheme name parsing round-trip") {
    for (const char* name :
         {"greedy_irs", "penalty_irs", "enumerate_irs", "all_offload_irs",
          "all_local", "greedy_no_irs", "penalty_no_irs", "enumerate_no_irs"}) {
        auto s = Scheme::parse(name);
        REQUIRE(s.has_value());
        CHECK(s->name() == name);
    }
    auto d = Scheme::parse("greedy_discrete(4)");
    REQUIRE(d.has_value());
    CHECK(d->levels == 4);
    CHECK(d->name() == "greedy_discrete(4)");
    CHECK(!Scheme::parse("bogus"));
    CHECK(!Scheme::parse("enumerate_discrete(2)"));
    CHECK(!Scheme::parse("greedy_discrete(0)"));
}

TEST_CASE("run_trial basics") {
    auto cfg = default_scenario(8, 32);

    SUBCASE("all-local energy is seed-independent") {
        auto scheme = *Scheme::parse("all_local");
        for (std::uint64_t seed : {1ull, 7ull, 99ull}) {
            auto m = run_trial(cfg, scheme, seed);
            CHECK(m.total_energy == doctest::Approx(0.4096).epsilon(1e-12));
            CHECK(m.near_irs_energy + m.near_server_energy ==
                  doctest::Approx(m.total_energy).epsilon(1e-10));
        }
    }

    SUBCASE("same seed reproduces everything but wall time") {
        auto scheme = *Scheme::parse("greedy_irs");
        auto a = run_trial(cfg, scheme, 5);
        auto b = run_trial(cfg, scheme, 5);
        CHECK(a.total_energy == b.total_energy);
        CHECK(a.offloaded == b.offloaded);
        CHECK(a.near_irs_energy == b.near_irs_energy);
    }

    SUBCASE("per-trial dominance and IRS benefit") {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const double all_local =
                run_trial(cfg, *Scheme::parse("all_local"), seed).total_energy;
            const double greedy =
                run_trial(cfg, *Scheme::parse("greedy_irs"), seed).total_energy;
            const double penalty =
                run_trial(cfg, *Scheme::parse("penalty_irs"), seed).total_energy;
            const double best =
                run_trial(cfg, *Scheme::parse("enumerate_irs"), seed)
                    .total_energy;
            CHECK(best <= greedy * (1.0 + 1e-10));
            CHECK(best <= penalty * (1.0 + 1e-10));
            CHECK(greedy <= all_local + 1e-12);
            CHECK(penalty <= all_local + 1e-12);

            const double greedy_no_irs =
                run_trial(cfg, *Scheme::parse("greedy_no_irs"), seed)
                    .total_energy;
            CHECK(greedy <= greedy_no_irs * (1.0 + 1e-10));
        }
    }

    SUBCASE("discrete levels interpolate toward the continuous scheme") {
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            const double cont =
                run_trial(cfg, *Scheme::parse("enumerate_irs"), seed)
                    .total_energy;
            Scheme coarse{Algorithm::Enumerate, PhaseMode::Discrete, 2};
            Scheme fine{Algorithm::Enumerate, PhaseMode::Discrete, 64};
            const double e2 = run_trial(cfg, coarse, seed).total_energy;
            const double e64 = run_trial(cfg, fine, seed).total_energy;
            CHECK(cont <= e64 * (1.0 + 1e-10));
            CHECK(e64 <= e2 * (1.0 + 1e-10));
        }
    }
}

TEST_CASE("run_sweep aggregation") {
    SweepConfig sweep;
    sweep.scenario = default_scenario(4, 8);
    sweep.swept_param = "M";
    sweep.values = {8, 16};
    sweep.trials = 3;
    sweep.base_seed = 11;
    sweep.schemes = {*Scheme::parse("greedy_irs"), *Scheme::parse("all_local")};

    auto table = run_sweep(sweep);
    CHECK(table.rows.size() == 4); // |values| x |schemes|

    SUBCASE("single trial has zero std") {
        sweep.trials = 1;
        auto t1 = run_sweep(sweep);
        for (const auto& r : t1.rows) CHECK(r.std_energy == 0.0);
    }

    SUBCASE("identical base seed reproduces the table bit-for-bit") {
        auto again = run_sweep(sweep);
        REQUIRE(again.rows.size() == table.rows.size());
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            CHECK(again.rows[i].mean_energy == table.rows[i].mean_energy);
            CHECK(again.rows[i].std_energy == table.rows[i].std_energy);
            CHECK(again.rows[i].offload_prob_all ==
                  table.rows[i].offload_prob_all);
        }
    }

    SUBCASE("parallel execution does not change results") {
        sweep.parallel = 4;
        auto par = run_sweep(sweep);
        REQUIRE(par.rows.size() == table.rows.size());
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            CHECK(par.rows[i].mean_energy == table.rows[i].mean_energy);
        }
    }
}

TEST_CASE("emit_table") {
    TempFile tmp("test_table_out.csv");

    SUBCASE("empty table is header-only") {
        SweepTable empty;
        empty.param_name = "M";
        emit_table(empty, "csv", tmp.path);
        auto text = slurp(tmp.path);
        CHECK(text.find("param_name,param_value,scheme,trials,failed_trials,"
                        "mean_energy_J,std_energy_J,mean_solver_time_s,"
                        "offload_prob_all,offload_prob_near_irs,"
                        "offload_prob_near_server") == 0);
        CHECK(std::count(text.begin(), text.end(), '\n') == 1);
    }

    SUBCASE("round-trip preserves values exactly") {
        SweepConfig sweep;
        sweep.scenario = default_scenario(4, 8);
        sweep.swept_param = "M";
        sweep.values = {8};
        sweep.trials = 2;
        sweep.base_seed = 3;
        sweep.schemes = {*Scheme::parse("greedy_irs")};
        auto table = run_sweep(sweep);

        emit_table(table, "csv", tmp.path);
        auto parsed = parse_table_csv(tmp.path);
        REQUIRE(parsed.rows.size() == table.rows.size());
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            CHECK(parsed.rows[i].mean_energy == table.rows[i].mean_energy);
            CHECK(parsed.rows[i].std_energy == table.rows[i].std_energy);
            CHECK(parsed.rows[i].offload_prob_near_irs ==
                  table.rows[i].offload_prob_near_irs);
            CHECK(parsed.rows[i].scheme == table.rows[i].scheme);
        }
        emit_table(table, "json", tmp.path);
        CHECK(slurp(tmp.path).find("mean_energy_J") != std::string::npos);
    }

    SUBCASE("unknown format rejected") {
        SweepTable empty;
        CHECK_THROWS_AS(emit_table(empty, "xml", tmp.path), DomainError);
    }
}

TEST_CASE("emit_plot_script") {
    SweepConfig sweep;
    sweep.scenario = default_scenario(4, 8);
    sweep.swept_param = "M";
    sweep.values = {8, 16};
    sweep.trials = 1;
    sweep.base_seed = 3;
    sweep.schemes = {*Scheme::parse("greedy_irs"), *Scheme::parse("all_local"),
                     *Scheme::parse("penalty_irs")};
    auto table = run_sweep(sweep);

    auto script = emit_plot_script(table, "energy_vs_M", "sweep.csv");
    for (const char* s : {"greedy_irs", "all_local", "penalty_irs"}) {
        CHECK(script.find(s) != std::string::npos);
    }
    CHECK(script.find("sweep.csv") != std::string::npos);
    CHECK(script.find("(J)") != std::string::npos);

    // deterministic regeneration
    CHECK(emit_plot_script(table, "energy_vs_M", "sweep.csv") == script);

    auto runtime = emit_plot_script(table, "runtime_vs_M", "sweep.csv");
    CHECK(runtime.find("(s)") != std::string::npos);

    CHECK_THROWS_AS(emit_plot_script(table, "energy_vs_N", "sweep.csv"),
                    DomainError);
    CHECK_THROWS_AS(emit_plot_script(table, "nope", "sweep.csv"), DomainError);
    CHECK(emit_plot_script(table, "offload_prob", "sweep.csv").find(
              "offload_prob_near_irs") != std::string::npos);
    CHECK(emit_plot_script(table, "group_energy", "sweep.csv").find(
              "near_irs_energy_J") != std::string::npos);
}
