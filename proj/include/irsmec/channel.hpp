#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "irsmec/rng.hpp"

namespace irsmec {

using cplx = std::complex<double>;

/// Reference path loss model L(d) = lambda * (d / D0)^{-alpha}.
struct PathLossParams {
    double lambda = 1e-3; ///< gain at the reference distance
    double D0 = 1.0;      ///< reference distance, m
    double alpha = 3.0;   ///< path loss exponent

    void validate() const;
};

/// One realization of all channels for a trial. Dimensions: g has N entries,
/// h has N vectors of M entries, r has M entries. IRS element amplitudes are
/// fixed at 1, so only phases act on the reflected path.
struct ChannelSet {
    std::vector<cplx> g;              ///< device -> server
    std::vector<std::vector<cplx>> h; ///< device -> IRS
    std::vector<cplx> r;              ///< IRS -> server
};

/// Composite link for one device under a fixed phase configuration.
struct EffectiveLink {
    std::vector<double> theta; ///< phase shifts in [0, 2pi), length M
    double gain2 = 0.0;        ///< |r^T diag(e^{j theta}) h + g|^2
    double b = 0.0;            ///< sigma2 / gain2, W
    bool degenerate = false;   ///< gain2 below threshold; offload unusable
};

/// Power gain below which a link is treated as unusable for offloading.
inline constexpr double kDegenerateGain2 = 1e-30;

double path_loss(double d, const PathLossParams& p);

/// i.i.d. CN(0, scale) entries; per-entry mean power = scale.
std::vector<cplx> sample_rayleigh(std::size_t count, double scale, Rng& rng);

/// Rician entries with linear factor K and an all-ones LoS profile;
/// per-entry mean power = scale.
std::vector<cplx> sample_rician(std::size_t count, double scale, double K,
                                Rng& rng);

/// Phase shifts co-phasing every reflected term with the direct channel:
/// theta_m = (phase(g) - phase(r_m h_m)) mod 2pi. For g = 0 the reflected
/// terms are aligned to phase 0.
std::vector<double> optimal_phases_continuous(cplx g,
                                              const std::vector<cplx>& h,
                                              const std::vector<cplx>& r);

/// Composite amplitude |sum_m r_m e^{j theta_m} h_m + g|.
double composite_amplitude(cplx g, const std::vector<cplx>& h,
                           const std::vector<cplx>& r,
                           const std::vector<double>& theta);

/// Builds the EffectiveLink at a fixed phase configuration.
EffectiveLink effective_gain(cplx g, const std::vector<cplx>& h,
                             const std::vector<cplx>& r,
                             const std::vector<double>& theta, double sigma2);

/// Rounds each continuous phase to the nearest member of
/// F = {0, 2pi/L, ..., (L-1)2pi/L} in circular distance.
std::vector<double> quantize_phases(const std::vector<double>& theta_cont,
                                    std::size_t L);

/// Coordinate-wise exhaustive maximization of the composite amplitude over F,
/// sweeping m = 1..M until a full sweep makes no change.
std::vector<double> am_discrete_phases(cplx g, const std::vector<cplx>& h,
                                       const std::vector<cplx>& r,
                                       std::size_t L,
                                       const std::vector<double>& theta_init);

/// Global maximizer over F^M by exhaustive search; refuses L^M > 1e6.
/// Test oracle for the alternating maximization.
std::vector<double> brute_force_discrete_phases(cplx g,
                                                const std::vector<cplx>& h,
                                                const std::vector<cplx>& r,
                                                std::size_t L);

} // namespace irsmec
