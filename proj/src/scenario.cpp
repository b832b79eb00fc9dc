#include "irsmec/scenario.hpp"

#include <cmath>

#include "irsmec/errors.hpp"

namespace irsmec {

void Geometry::validate() const {
    if (!(server_height > 0.0) || !(irs_height > 0.0) || !(d1 > 0.0) ||
        !(d2 > 0.0) || !(ap_irs_horizontal > 0.0)) {
        throw DomainError("Geometry: all distances must be > 0");
    }
}

void ScenarioConfig::validate() const {
    sys.validate();
    geometry.validate();
    path_loss.validate();
    if (devs.size() != sys.N) {
        throw DomainError("ScenarioConfig: devs size must equal sys.N");
    }
    for (const auto& d : devs) d.validate();
    if (n_far + n_near != sys.N) {
        throw DomainError("ScenarioConfig: n_far + n_near must equal N");
    }
    if (rician_K < 0.0) throw DomainError("ScenarioConfig: rician_K must be >= 0");
}

ScenarioConfig default_scenario(std::size_t N, std::size_t M) {
    ScenarioConfig cfg;
    cfg.sys.N = N;
    cfg.sys.M = M;
    cfg.sys.B = 1.0e7;
    cfg.sys.sigma2 = 1e-10;
    cfg.sys.T = 1.0;
    DeviceParams dev{1e-28, kBitsPerMegabyte, 100.0, 1e9};
    cfg.devs.assign(N, dev);
    cfg.path_loss = PathLossParams{1e-3, 1.0, 3.0};
    cfg.rician_K = 100.0; // 20 dB
    cfg.n_far = (N + 1) / 2;
    cfg.n_near = N - cfg.n_far;
    return cfg;
}

double distance(const Vec3& a, const Vec3& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

std::vector<Vec3> place_devices(const ScenarioConfig& cfg, Rng& rng) {
    cfg.validate();
    std::vector<Vec3> pos;
    pos.reserve(cfg.sys.N);
    const auto server = cfg.geometry.server_pos();
    const auto irs = cfg.geometry.irs_pos();
    for (std::size_t i = 0; i < cfg.n_far; ++i) {
        const double ang = rng.uniform(0.0, 2.0 * M_PI);
        pos.push_back({server[0] + cfg.geometry.d1 * std::cos(ang),
                       server[1] + cfg.geometry.d1 * std::sin(ang), 0.0});
    }
    // near group: half circle around the IRS projection, on the side facing
    // the server (negative-x side of the IRS for the default layout)
    for (std::size_t i = 0; i < cfg.n_near; ++i) {
        const double ang = rng.uniform(M_PI / 2.0, 3.0 * M_PI / 2.0);
        pos.push_back({irs[0] + cfg.geometry.d2 * std::cos(ang),
                       irs[1] + cfg.geometry.d2 * std::sin(ang), 0.0});
    }
    return pos;
}

ChannelSet build_channels(const ScenarioConfig& cfg,
                          const std::vector<Vec3>& positions, Rng& rng) {
    if (positions.size() != cfg.sys.N) {
        throw DomainError("build_channels: positions size must equal N");
    }
    const auto server = cfg.geometry.server_pos();
    const auto irs = cfg.geometry.irs_pos();
    const std::size_t M = cfg.sys.M;

    ChannelSet ch;
    ch.g.reserve(cfg.sys.N);
    ch.h.reserve(cfg.sys.N);
    for (const auto& p : positions) {
        ch.g.push_back(
            sample_rayleigh(1, path_loss(distance(p, server), cfg.path_loss),
                            rng)[0]);
        ch.h.push_back(
            sample_rayleigh(M, path_loss(distance(p, irs), cfg.path_loss), rng));
    }
    ch.r = sample_rician(M, path_loss(distance(irs, server), cfg.path_loss),
                         cfg.rician_K, rng);
    return ch;
}

} // namespace irsmec
