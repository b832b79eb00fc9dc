#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace irsmec {

// splitmix64 finalizer, used both for seed mixing and stream derivation.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic combination of a base seed with sweep/trial indices, so
/// per-trial streams are reproducible and independent of execution order.
inline std::uint64_t stable_mix(std::uint64_t base_seed, std::uint64_t a,
                                std::uint64_t b = 0) {
    std::uint64_t s = mix64(base_seed);
    s = mix64(s ^ (a + 0x632be59bd9b4e019ULL));
    s = mix64(s ^ (b + 0xd1b54a32d192ed03ULL));
    return s;
}

/// Seedable, cross-platform-deterministic generator.
///
/// Wraps std::mt19937_64 (whose output sequence is fixed by the standard) and
/// supplies its own uniform/Gaussian transforms, since the standard library
/// distributions are not bit-reproducible across implementations. Complex
/// Gaussians are built from two independent real Gaussians of variance 1/2.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard real Gaussian via Box-Muller (pair cached).
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // strictly positive uniform for the log
        double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
        double u2 = uniform();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Circularly-symmetric complex Gaussian CN(0, 1): real and imaginary
    /// parts are independent N(0, 1/2).
    std::complex<double> complex_gaussian() {
        double re = gaussian() * M_SQRT1_2;
        double im = gaussian() * M_SQRT1_2;
        return {re, im};
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace irsmec
