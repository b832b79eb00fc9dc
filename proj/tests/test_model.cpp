#include <doctest.h>

#include <cmath>

#include "irsmec/errors.hpp"
#include "irsmec/model.hpp"
#include "irsmec/rng.hpp"

using namespace irsmec;

namespace {
const DeviceParams kDev{1e-28, 8e6, 100.0, 1e9};
}

TEST_CASE("local_energy closed form") {
    CHECK(local_energy(kDev, 0.0) == 0.0);
    CHECK(local_energy(kDev, 8e8) == doctest::Approx(5.12e-2).epsilon(1e-12));
    CHECK_THROWS_AS(local_energy(kDev, 2e9), DomainError);
    CHECK_THROWS_AS(local_energy(kDev, -1.0), DomainError);

    Rng rng(42);
    for (int i = 0; i < 100; ++i) {
        double f = rng.uniform(0.0, kDev.f_max / 2.0);
        CHECK(local_energy(kDev, 2.0 * f) ==
              doctest::Approx(4.0 * local_energy(kDev, f)).epsilon(1e-12));
    }
}

TEST_CASE("optimal_local_frequency") {
    CHECK(optimal_local_frequency(kDev, 1.0) == doctest::Approx(8e8));
    CHECK(optimal_local_frequency(kDev, 2.0) == doctest::Approx(4e8));
    CHECK(local_energy(kDev, optimal_local_frequency(kDev, 1.0)) ==
          doctest::Approx(5.12e-2).epsilon(1e-12));
    CHECK(optimal_local_energy(kDev, 1.0) ==
          doctest::Approx(5.12e-2).epsilon(1e-12));
    // task too large for f_max
    DeviceParams big = kDev;
    big.S_bits = 1e9;
    CHECK_THROWS_AS(optimal_local_frequency(big, 1.0), InfeasibleError);
}

TEST_CASE("phi piecewise values") {
    DeviceParams dev = kDev;
    dev.S_bits = 1e7;
    CHECK(phi(dev, 1e7, 0.0) == 0.0);
    CHECK(phi(dev, 1e7, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(phi(dev, 1e7, 0.5) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK_THROWS_AS(phi(dev, 1e7, -0.1), DomainError);
}

TEST_CASE("phi strictly decreasing and convex on a log grid") {
    Rng rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        DeviceParams dev = kDev;
        dev.S_bits = rng.uniform(1e6, 3e7);
        const double B = rng.uniform(1e6, 3e7), T = 1.0;
        const int n = 120;
        // keep the exponent S/(tau*B) within double range
        const double tau_min = std::max(1e-3 * T, dev.S_bits / (B * 500.0));
        std::vector<double> tau(n), val(n);
        for (int i = 0; i < n; ++i) {
            tau[i] = tau_min * std::pow(T / tau_min, i / double(n - 1));
            val[i] = phi(dev, B, tau[i]);
        }
        for (int i = 0; i + 1 < n; ++i) CHECK(val[i + 1] < val[i]);
        for (int i = 0; i + 2 < n; ++i) {
            // uneven grid: check with divided differences
            double d1 = (val[i + 1] - val[i]) / (tau[i + 1] - tau[i]);
            double d2 = (val[i + 2] - val[i + 1]) / (tau[i + 2] - tau[i + 1]);
            CHECK(d2 > d1);
        }
    }
}

TEST_CASE("offload_power numeric and round-trip") {
    const double expected = (std::exp2(0.8) - 1.0) * 1e-10 / 1e-9;
    CHECK(offload_power(kDev, 1e7, 1e-10, 1e-9, 1.0) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(7.411e-2).epsilon(1e-3));

    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        DeviceParams dev = kDev;
        dev.S_bits = rng.uniform(1e6, 2e7);
        double B = rng.uniform(1e6, 2e7);
        double gain2 = std::pow(10.0, rng.uniform(-10.0, -5.0));
        double tau = rng.uniform(0.05, 2.0);
        double P = offload_power(dev, B, 1e-10, gain2, tau);
        double rate = achievable_rate(P, gain2, B, 1e-10);
        CHECK(dev.S_bits / rate == doctest::Approx(tau).epsilon(1e-9));
    }
    // P -> 0 as tau grows
    CHECK(offload_power(kDev, 1e7, 1e-10, 1e-9, 1e9) < 1e-6);
    CHECK_THROWS_AS(offload_power(kDev, 1e7, 1e-10, 0.0, 1.0),
                    DegenerateChannelError);
    CHECK_THROWS_AS(offload_power(kDev, 1e7, 1e-10, 1e-9, 0.0), DomainError);
}

TEST_CASE("achievable_rate landmarks") {
    CHECK(achievable_rate(0.0, 1e-9, 1e7, 1e-10) == 0.0);
    // gain2*P/sigma2 = 1 and = 3
    CHECK(achievable_rate(0.1, 1e-9, 1e7, 1e-10) == doctest::Approx(1e7));
    CHECK(achievable_rate(0.3, 1e-9, 1e7, 1e-10) == doctest::Approx(2e7));
}

TEST_CASE("evaluate_solution objective and report") {
    SystemParams sys;
    sys.N = 8;
    std::vector<DeviceParams> devs(8, kDev);

    OffloadSolution sol;
    sol.beta.assign(8, 0);
    sol.tau.assign(8, 0.0);
    sol.f.assign(8, 8e8);
    sol.P.assign(8, 0.0);
    sol.theta.assign(8, {});
    auto rep = evaluate_solution(devs, sys, sol);
    CHECK(rep.total_energy == doctest::Approx(0.4096).epsilon(1e-12));
    CHECK(rep.feasible());

    // all idle: zero energy, trivially feasible
    sol.f.assign(8, 0.0);
    rep = evaluate_solution(devs, sys, sol);
    CHECK(rep.total_energy == 0.0);
    CHECK(rep.feasible());

    // time budget violation: sum tau = 1.5 T
    OffloadSolution bad = sol;
    bad.beta.assign(8, 1);
    bad.tau.assign(8, 1.5 / 8.0);
    bad.P.assign(8, 0.01);
    rep = evaluate_solution(devs, sys, bad);
    REQUIRE(!rep.feasible());
    bool found = false;
    for (const auto& v : rep.violations) {
        if (v.name == "time_budget") {
            found = true;
            CHECK(v.slack == doctest::Approx(-0.5).epsilon(1e-9));
        }
    }
    CHECK(found);
}

TEST_CASE("evaluate_solution is pure") {
    SystemParams sys;
    sys.N = 2;
    std::vector<DeviceParams> devs(2, kDev);
    OffloadSolution sol;
    sol.beta = {1, 0};
    sol.tau = {0.3, 0.0};
    sol.f = {0.0, 8e8};
    sol.P = {0.123456789, 0.0};
    sol.theta = {{}, {}};
    auto a = evaluate_solution(devs, sys, sol);
    auto b = evaluate_solution(devs, sys, sol);
    CHECK(a.total_energy == b.total_energy);
    CHECK(a.violations.size() == b.violations.size());
}
