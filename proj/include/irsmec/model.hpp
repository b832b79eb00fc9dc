#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace irsmec {

/// 1 MB of task data, decimal convention common in communications work.
inline constexpr double kBitsPerMegabyte = 8.0e6;

/// Per-device task and compute constants.
struct DeviceParams {
    double epsilon; ///< chip energy coefficient, J per cycle per Hz^2
    double S_bits;  ///< task size, bits
    double C;       ///< CPU cycles per bit
    double f_max;   ///< maximum CPU frequency, Hz

    void validate() const;
};

/// System-wide constants for one problem instance.
struct SystemParams {
    std::size_t N = 1;   ///< device count
    std::size_t M = 0;   ///< IRS element count (0 = no IRS)
    double B = 1.0e7;    ///< bandwidth, Hz
    double sigma2 = 1e-10; ///< noise power, W
    double T = 1.0;      ///< frame duration, s
    std::size_t L = 0;   ///< discrete phase levels; 0 = continuous phases

    void validate() const;
};

/// Full candidate solution for one problem instance.
struct OffloadSolution {
    std::vector<int> beta;      ///< 1 = offload, 0 = local
    std::vector<double> tau;    ///< offload time, s
    std::vector<double> f;      ///< CPU frequency, Hz
    std::vector<double> P;      ///< transmit power, W
    std::vector<std::vector<double>> theta; ///< per-device phase vector, rad
    double total_energy = 0.0;  ///< J
};

/// One constraint check from evaluate_solution. slack >= 0 means satisfied.
struct ConstraintCheck {
    std::string name;
    std::size_t device; ///< device index, or SIZE_MAX for system-wide checks
    double slack;
    bool ok;
};

struct FeasibilityReport {
    double total_energy = 0.0;
    std::vector<ConstraintCheck> violations; ///< only failing checks
    bool feasible() const { return violations.empty(); }
};

/// Energy of computing the whole task locally at frequency f: eps*S*C*f^2.
double local_energy(const DeviceParams& dev, double f);

/// Minimum CPU frequency that finishes the task within T: S*C/T.
/// Throws InfeasibleError if that exceeds dev.f_max.
double optimal_local_frequency(const DeviceParams& dev, double T);

/// Energy of local computing at the optimal frequency: eps*S^3*C^3/T^2.
double optimal_local_energy(const DeviceParams& dev, double T);

/// phi(tau) = tau*(2^{S/(tau*B)} - 1), continued with phi(0) = 0.
double phi(const DeviceParams& dev, double B, double tau);

/// Transmit power that delivers S bits in exactly tau seconds over a channel
/// with power gain gain2: (2^{S/(tau*B)} - 1) * sigma2 / gain2.
double offload_power(const DeviceParams& dev, double B, double sigma2,
                     double gain2, double tau);

/// Shannon rate B*log2(1 + gain2*P/sigma2), bits/s.
double achievable_rate(double P, double gain2, double B, double sigma2);

/// Evaluates the total-energy objective of a stored solution and reports every
/// violated constraint with its slack. Infeasibility is reported, not thrown.
FeasibilityReport evaluate_solution(const std::vector<DeviceParams>& devs,
                                    const SystemParams& sys,
                                    const OffloadSolution& sol);

} // namespace irsmec
