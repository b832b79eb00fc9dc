#include "irsmec/model.hpp"

#include <cmath>
#include <cstdint>
#include <limits>

#include "irsmec/errors.hpp"

namespace irsmec {

namespace {
constexpr std::size_t kSystemWide = std::numeric_limits<std::size_t>::max();
}

void DeviceParams::validate() const {
    if (!(epsilon > 0.0) || !(S_bits > 0.0) || !(C > 0.0) || !(f_max > 0.0)) {
        throw DomainError("DeviceParams: all fields must be strictly positive");
    }
}

void SystemParams::validate() const {
    if (N < 1) throw DomainError("SystemParams: N must be >= 1");
    if (!(B > 0.0)) throw DomainError("SystemParams: B must be > 0");
    if (!(sigma2 > 0.0)) throw DomainError("SystemParams: sigma2 must be > 0");
    if (!(T > 0.0)) throw DomainError("SystemParams: T must be > 0");
}

double local_energy(const DeviceParams& dev, double f) {
    if (f < 0.0 || f > dev.f_max) {
        throw DomainError("local_energy: f outside [0, f_max]");
    }
    return dev.epsilon * dev.S_bits * dev.C * f * f;
}

double optimal_local_frequency(const DeviceParams& dev, double T) {
    if (!(T > 0.0)) throw DomainError("optimal_local_frequency: T must be > 0");
    double f = dev.S_bits * dev.C / T;
    if (f > dev.f_max) {
        throw InfeasibleError("optimal_local_frequency: task needs f > f_max");
    }
    return f;
}

double optimal_local_energy(const DeviceParams& dev, double T) {
    double s3c3 = dev.S_bits * dev.S_bits * dev.S_bits * dev.C * dev.C * dev.C;
    return dev.epsilon * s3c3 / (T * T);
}

double phi(const DeviceParams& dev, double B, double tau) {
    if (tau < 0.0) throw DomainError("phi: tau must be >= 0");
    if (tau == 0.0) return 0.0;
    return tau * (std::exp2(dev.S_bits / (tau * B)) - 1.0);
}

double offload_power(const DeviceParams& dev, double B, double sigma2,
                     double gain2, double tau) {
    if (!(tau > 0.0)) throw DomainError("offload_power: tau must be > 0");
    if (!(gain2 > 0.0)) {
        throw DegenerateChannelError("offload_power: nonpositive channel gain");
    }
    return (std::exp2(dev.S_bits / (tau * B)) - 1.0) * sigma2 / gain2;
}

double achievable_rate(double P, double gain2, double B, double sigma2) {
    if (P < 0.0) throw DomainError("achievable_rate: P must be >= 0");
    if (gain2 < 0.0) throw DomainError("achievable_rate: gain2 must be >= 0");
    return B * std::log2(1.0 + gain2 * P / sigma2);
}

FeasibilityReport evaluate_solution(const std::vector<DeviceParams>& devs,
                                    const SystemParams& sys,
                                    const OffloadSolution& sol) {
    const std::size_t n = sys.N;
    if (devs.size() != n || sol.beta.size() != n || sol.tau.size() != n ||
        sol.f.size() != n || sol.P.size() != n) {
        throw DomainError("evaluate_solution: vectors must all have size N");
    }

    FeasibilityReport rep;
    auto flag = [&rep](const std::string& name, std::size_t dev, double slack) {
        rep.violations.push_back({name, dev, slack, false});
    };

    double total = 0.0;
    double sum_tau = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& d = devs[i];
        const int beta = sol.beta[i];
        const double tau = sol.tau[i];
        const double f = sol.f[i];
        const double P = sol.P[i];

        total += beta * P * tau + (1 - beta) * d.epsilon * d.S_bits * d.C * f * f;
        sum_tau += tau;

        if (beta != 0 && beta != 1) flag("mode_binary", i, -1.0);
        if ((beta == 0) != (tau == 0.0)) flag("mode_time_consistency", i, -tau);
        if (tau < 0.0) flag("time_nonnegative", i, tau);
        if (f < 0.0 || f > d.f_max) flag("cpu_freq_range", i, d.f_max - f);
        if (P < 0.0) flag("power_nonnegative", i, P);
        // local completion S*C/f <= T; an idle device (f = 0) is left
        // unflagged, mode semantics treat its task as simply unprocessed
        if (beta == 0 && f > 0.0) {
            double slack = sys.T - d.S_bits * d.C / f;
            if (slack < -1e-12 * sys.T) flag("local_deadline", i, slack);
        }
        for (double th : (i < sol.theta.size() ? sol.theta[i]
                                               : std::vector<double>{})) {
            if (th < 0.0 || th >= 2.0 * M_PI) {
                flag("phase_range", i, th < 0.0 ? th : 2.0 * M_PI - th);
                break;
            }
        }
    }
    if (sum_tau > sys.T * (1.0 + 1e-12)) {
        flag("time_budget", kSystemWide, sys.T - sum_tau);
    }

    rep.total_energy = total;
    return rep;
}

} // namespace irsmec
