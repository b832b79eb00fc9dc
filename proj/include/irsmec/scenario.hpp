#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "irsmec/channel.hpp"
#include "irsmec/model.hpp"
#include "irsmec/rng.hpp"

namespace irsmec {

using Vec3 = std::array<double, 3>;

/// Fixed layout: server antenna at height 10 m, devices on the ground plane,
/// IRS at height 5 m. Far devices sit on a circle of radius d1 around the
/// server's ground projection; near devices sit on the server-facing half
/// circle of radius d2 around the IRS's ground projection.
struct Geometry {
    double server_height = 10.0;
    double irs_height = 5.0;
    double d1 = 20.0;              ///< far-circle radius, m
    double d2 = 3.0;               ///< near-IRS half-circle radius, m
    double ap_irs_horizontal = 10.0; ///< server <-> IRS ground separation, m

    Vec3 server_pos() const { return {0.0, 0.0, server_height}; }
    Vec3 irs_pos() const { return {ap_irs_horizontal, 0.0, irs_height}; }
    void validate() const;
};

/// Complete description of one randomized problem family.
struct ScenarioConfig {
    SystemParams sys;
    std::vector<DeviceParams> devs; ///< size sys.N
    Geometry geometry;
    PathLossParams path_loss;
    double rician_K = 100.0; ///< linear (20 dB)
    std::size_t n_far = 4;   ///< devices on the far circle
    std::size_t n_near = 4;  ///< devices on the near-IRS half circle

    void validate() const;
};

/// Simulation defaults: 8 homogeneous devices (eps = 1e-28, S = 1 MB,
/// C = 100 cycles/bit, f_max = 1 GHz), B = 10 MHz, sigma2 = 1e-10 W, T = 1 s.
ScenarioConfig default_scenario(std::size_t N = 8, std::size_t M = 100);

/// Random device positions on the two circles; far group first.
std::vector<Vec3> place_devices(const ScenarioConfig& cfg, Rng& rng);

/// Rayleigh device-server and device-IRS links, Rician IRS-server link, all
/// scaled by path loss over the 3-D distances.
ChannelSet build_channels(const ScenarioConfig& cfg,
                          const std::vector<Vec3>& positions, Rng& rng);

double distance(const Vec3& a, const Vec3& b);

} // namespace irsmec
