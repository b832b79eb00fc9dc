#include <doctest.h>

#include <cmath>

#include "irsmec/scenario.hpp"

using namespace irsmec;

TEST_CASE("device placement geometry") {
    auto cfg = default_scenario();
    Rng rng(101);
    auto pos = place_devices(cfg, rng);
    REQUIRE(pos.size() == 8);

    const auto server = cfg.geometry.server_pos();
    const auto irs = cfg.geometry.irs_pos();
    for (std::size_t i = 0; i < cfg.n_far; ++i) {
        const double dx = pos[i][0] - server[0], dy = pos[i][1] - server[1];
        CHECK(std::hypot(dx, dy) == doctest::Approx(20.0).epsilon(1e-12));
        CHECK(pos[i][2] == 0.0);
        // full 3-D distance to the server antenna
        CHECK(distance(pos[i], server) ==
              doctest::Approx(std::sqrt(500.0)).epsilon(1e-12));
    }
    for (std::size_t i = cfg.n_far; i < 8; ++i) {
        const double dx = pos[i][0] - irs[0], dy = pos[i][1] - irs[1];
        CHECK(std::hypot(dx, dy) == doctest::Approx(3.0).epsilon(1e-12));
        // server-facing half circle
        CHECK(pos[i][0] <= irs[0]);
        CHECK(distance(pos[i], irs) ==
              doctest::Approx(std::sqrt(34.0)).epsilon(1e-12));
    }
}

TEST_CASE("placement and channels are seed-deterministic") {
    auto cfg = default_scenario(8, 16);
    Rng a(7), b(7);
    auto pa = place_devices(cfg, a);
    auto pb = place_devices(cfg, b);
    CHECK(pa == pb);
    auto ca = build_channels(cfg, pa, a);
    auto cb = build_channels(cfg, pb, b);
    CHECK(ca.g == cb.g);
    CHECK(ca.h == cb.h);
    CHECK(ca.r == cb.r);
}

TEST_CASE("no-IRS case has empty reflected channels") {
    auto cfg = default_scenario(4, 0);
    Rng rng(9);
    auto pos = place_devices(cfg, rng);
    auto ch = build_channels(cfg, pos, rng);
    CHECK(ch.r.empty());
    for (const auto& h : ch.h) CHECK(h.empty());
    CHECK(ch.g.size() == 4);
}

TEST_CASE("channel power matches path loss") {
    auto cfg = default_scenario(1, 4);
    cfg.n_far = 1;
    cfg.n_near = 0;
    cfg.devs.resize(1);
    cfg.sys.N = 1;
    Rng rng(13);
    auto pos = place_devices(cfg, rng);
    const double expected =
        path_loss(distance(pos[0], cfg.geometry.server_pos()), cfg.path_loss);

    double acc = 0.0;
    const int trials = 100000;
    for (int t = 0; t < trials; ++t) {
        auto ch = build_channels(cfg, pos, rng);
        acc += std::norm(ch.g[0]);
    }
    CHECK(acc / trials == doctest::Approx(expected).epsilon(0.02));
}
