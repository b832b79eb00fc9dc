#include "irsmec/channel.hpp"

#include <algorithm>
#include <cmath>

#include "irsmec/errors.hpp"

namespace irsmec {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double wrap_2pi(double x) {
    double y = std::fmod(x, kTwoPi);
    if (y < 0.0) y += kTwoPi;
    return y;
}

cplx composite_sum(cplx g, const std::vector<cplx>& h,
                   const std::vector<cplx>& r,
                   const std::vector<double>& theta) {
    cplx acc = g;
    for (std::size_t m = 0; m < h.size(); ++m) {
        acc += r[m] * std::polar(1.0, theta[m]) * h[m];
    }
    return acc;
}

} // namespace

void PathLossParams::validate() const {
    if (!(lambda > 0.0) || !(D0 > 0.0) || !(alpha > 0.0)) {
        throw DomainError("PathLossParams: lambda, D0, alpha must be > 0");
    }
}

double path_loss(double d, const PathLossParams& p) {
    if (!(d > 0.0)) throw DomainError("path_loss: distance must be > 0");
    return p.lambda * std::pow(d / p.D0, -p.alpha);
}

std::vector<cplx> sample_rayleigh(std::size_t count, double scale, Rng& rng) {
    if (scale < 0.0) throw DomainError("sample_rayleigh: scale must be >= 0");
    std::vector<cplx> out(count);
    const double amp = std::sqrt(scale);
    for (auto& v : out) v = amp * rng.complex_gaussian();
    return out;
}

std::vector<cplx> sample_rician(std::size_t count, double scale, double K,
                                Rng& rng) {
    if (scale < 0.0) throw DomainError("sample_rician: scale must be >= 0");
    if (K < 0.0) throw DomainError("sample_rician: K must be >= 0");
    std::vector<cplx> out(count);
    const double amp = std::sqrt(scale);
    const double los = std::sqrt(K / (K + 1.0));
    const double nlos = std::sqrt(1.0 / (K + 1.0));
    // unit-modulus all-ones LoS profile; the IRS phases absorb any fixed
    // per-element rotation, so the profile choice does not affect results
    for (auto& v : out) v = amp * (los + nlos * rng.complex_gaussian());
    return out;
}

std::vector<double> optimal_phases_continuous(cplx g,
                                              const std::vector<cplx>& h,
                                              const std::vector<cplx>& r) {
    const double g_phase = (g == cplx(0.0, 0.0)) ? 0.0 : std::arg(g);
    std::vector<double> theta(h.size());
    for (std::size_t m = 0; m < h.size(); ++m) {
        theta[m] = wrap_2pi(g_phase - std::arg(r[m] * h[m]));
    }
    return theta;
}

double composite_amplitude(cplx g, const std::vector<cplx>& h,
                           const std::vector<cplx>& r,
                           const std::vector<double>& theta) {
    return std::abs(composite_sum(g, h, r, theta));
}

EffectiveLink effective_gain(cplx g, const std::vector<cplx>& h,
                             const std::vector<cplx>& r,
                             const std::vector<double>& theta, double sigma2) {
    EffectiveLink link;
    link.theta = theta;
    link.gain2 = std::norm(composite_sum(g, h, r, theta));
    if (link.gain2 < kDegenerateGain2) {
        link.degenerate = true;
        link.b = std::numeric_limits<double>::infinity();
    } else {
        link.b = sigma2 / link.gain2;
    }
    return link;
}

std::vector<double> quantize_phases(const std::vector<double>& theta_cont,
                                    std::size_t L) {
    if (L < 1) throw DomainError("quantize_phases: L must be >= 1");
    const double step = kTwoPi / static_cast<double>(L);
    std::vector<double> out(theta_cont.size());
    for (std::size_t m = 0; m < theta_cont.size(); ++m) {
        // circular distance: values near 2pi round down to 0
        auto idx = static_cast<long>(std::llround(theta_cont[m] / step));
        out[m] = static_cast<double>(idx % static_cast<long>(L)) * step;
        if (out[m] < 0.0) out[m] += kTwoPi;
    }
    return out;
}

std::vector<double> am_discrete_phases(cplx g, const std::vector<cplx>& h,
                                       const std::vector<cplx>& r,
                                       std::size_t L,
                                       const std::vector<double>& theta_init) {
    if (L < 1) throw DomainError("am_discrete_phases: L must be >= 1");
    const double step = kTwoPi / static_cast<double>(L);
    std::vector<double> theta = theta_init;
    cplx acc = composite_sum(g, h, r, theta);

    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t m = 0; m < theta.size(); ++m) {
            const cplx term = r[m] * h[m];
            const cplx rest = acc - std::polar(1.0, theta[m]) * term;
            double best_amp = std::abs(acc);
            double best_theta = theta[m];
            for (std::size_t l = 0; l < L; ++l) {
                const double cand = static_cast<double>(l) * step;
                const double amp = std::abs(rest + std::polar(1.0, cand) * term);
                if (amp > best_amp) {
                    best_amp = amp;
                    best_theta = cand;
                }
            }
            if (best_theta != theta[m]) {
                theta[m] = best_theta;
                acc = rest + std::polar(1.0, best_theta) * term;
                changed = true;
            }
        }
    }
    return theta;
}

std::vector<double> brute_force_discrete_phases(cplx g,
                                                const std::vector<cplx>& h,
                                                const std::vector<cplx>& r,
                                                std::size_t L) {
    if (L < 1) throw DomainError("brute_force_discrete_phases: L must be >= 1");
    const std::size_t M = h.size();
    double states = std::pow(static_cast<double>(L), static_cast<double>(M));
    if (states > 1e6) {
        throw BudgetError("brute_force_discrete_phases: L^M exceeds 1e6");
    }
    const double step = kTwoPi / static_cast<double>(L);

    std::vector<std::size_t> idx(M, 0), best_idx(M, 0);
    std::vector<double> theta(M, 0.0);
    double best_amp = -1.0;
    const auto total = static_cast<std::size_t>(states);
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t m = 0; m < M; ++m) {
            idx[m] = c % L;
            c /= L;
            theta[m] = static_cast<double>(idx[m]) * step;
        }
        double amp = composite_amplitude(g, h, r, theta);
        if (amp > best_amp) {
            best_amp = amp;
            best_idx = idx;
        }
    }
    std::vector<double> best(M);
    for (std::size_t m = 0; m < M; ++m) {
        best[m] = static_cast<double>(best_idx[m]) * step;
    }
    return best;
}

} // namespace irsmec
