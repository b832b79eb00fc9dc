#include "irsmec/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "irsmec/errors.hpp"

namespace irsmec {

namespace {

constexpr std::size_t kBisectionCap = 200;
constexpr double kInf = std::numeric_limits<double>::infinity();

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

bool usable(double b) { return std::isfinite(b) && b > 0.0; }

/// Offload energy of one device at time tau: b * tau * (2^{S/(tau B)} - 1).
double offload_energy(double S, double B, double b, double tau) {
    return b * tau * (std::exp2(S / (tau * B)) - 1.0);
}

/// Assembles the full solution for a fixed offload set with given times.
OffloadSolution make_solution(const std::vector<DeviceParams>& devs,
                              const SystemParams& sys,
                              const std::vector<double>& b,
                              const std::vector<double>& tau) {
    const std::size_t n = sys.N;
    OffloadSolution sol;
    sol.beta.assign(n, 0);
    sol.tau.assign(n, 0.0);
    sol.f.assign(n, 0.0);
    sol.P.assign(n, 0.0);
    sol.theta.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
        if (tau[i] > 0.0) {
            sol.beta[i] = 1;
            sol.tau[i] = tau[i];
            // P = (2^{S/(tau B)} - 1) * sigma2 / gain2 = (2^{...} - 1) * b
            sol.P[i] = (std::exp2(devs[i].S_bits / (tau[i] * sys.B)) - 1.0) * b[i];
        } else {
            sol.f[i] = optimal_local_frequency(devs[i], sys.T);
        }
    }
    sol.total_energy = evaluate_solution(devs, sys, sol).total_energy;
    return sol;
}

SolverReport finish_report(const std::vector<DeviceParams>& devs,
                           const SystemParams& sys,
                           const std::vector<double>& b,
                           const std::vector<double>& tau,
                           std::size_t iterations, std::size_t bisections,
                           double t_start) {
    SolverReport rep;
    rep.solution = make_solution(devs, sys, b, tau);
    rep.objective = rep.solution.total_energy;
    rep.iterations = iterations;
    rep.inner_bisection_calls = bisections;
    rep.wall_time = now_seconds() - t_start;
    return rep;
}

} // namespace

double psi(double S, double B, double b, double tau) {
    if (!(tau > 0.0)) throw DomainError("psi: tau must be > 0");
    const double x = S / (tau * B);
    return b * (std::exp2(x) * (1.0 - M_LN2 * x) - 1.0);
}

double psi_inverse(double S, double B, double b, double nu) {
    if (!(nu > 0.0)) throw DomainError("psi_inverse: nu must be > 0");
    const double target = -nu;

    // geometric bracket expansion around the natural time scale S/B
    double lo = S / B, hi = S / B;
    std::size_t guard = 0;
    while (psi(S, B, b, lo) > target) {
        lo *= 0.5;
        if (++guard > kBisectionCap) {
            throw ConvergenceError("psi_inverse: bracket expansion failed (lo)");
        }
    }
    guard = 0;
    while (psi(S, B, b, hi) < target) {
        hi *= 2.0;
        if (++guard > kBisectionCap) {
            throw ConvergenceError("psi_inverse: bracket expansion failed (hi)");
        }
    }

    double mid = 0.5 * (lo + hi);
    for (std::size_t it = 0; it < kBisectionCap; ++it) {
        mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // bracket at floating-point limit
        if (psi(S, B, b, mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double tol = 1e-10 * std::max(b, nu);
    if (std::abs(psi(S, B, b, mid) - target) > tol) {
        throw ConvergenceError("psi_inverse: residual tolerance not met");
    }
    return mid;
}

std::vector<double> solve_time_allocation(const AllocationProblem& p,
                                          std::size_t* bisection_calls) {
    if (p.offload_set.empty()) {
        throw DomainError("solve_time_allocation: offload set is empty");
    }
    for (std::size_t i : p.offload_set) {
        if (!usable(p.b[i])) {
            throw DegenerateChannelError(
                "solve_time_allocation: degenerate b in offload set");
        }
    }
    std::size_t calls = 0;
    auto total_time = [&](double nu) {
        double sum = 0.0;
        for (std::size_t i : p.offload_set) {
            sum += psi_inverse(p.S_bits[i], p.B, p.b[i], nu);
            ++calls;
        }
        return sum;
    };

    // sum of psi_inverse is monotone decreasing in nu, so doubling the upper
    // end is guaranteed to bracket the water level
    double nu_lo = 1e-20, nu_hi = 1.0;
    std::size_t guard = 0;
    while (total_time(nu_hi) > p.T) {
        nu_hi *= 2.0;
        if (++guard > kBisectionCap) {
            throw ConvergenceError("solve_time_allocation: nu bracket failed");
        }
    }

    double nu = nu_hi;
    for (std::size_t it = 0; it < kBisectionCap; ++it) {
        nu = 0.5 * (nu_lo + nu_hi);
        if (nu <= nu_lo || nu >= nu_hi) break;
        const double sum = total_time(nu);
        if (std::abs(sum - p.T) <= 1e-12 * p.T) break;
        if (sum > p.T) {
            nu_lo = nu;
        } else {
            nu_hi = nu;
        }
    }

    std::vector<double> tau(p.b.size(), 0.0);
    double sum = 0.0;
    for (std::size_t i : p.offload_set) {
        tau[i] = psi_inverse(p.S_bits[i], p.B, p.b[i], nu);
        ++calls;
        sum += tau[i];
    }
    if (std::abs(sum - p.T) > 1e-9 * p.T) {
        throw ConvergenceError("solve_time_allocation: time budget not met");
    }
    if (bisection_calls) *bisection_calls += calls;
    return tau;
}

double offload_set_objective(const std::vector<DeviceParams>& devs,
                             const SystemParams& sys,
                             const std::vector<double>& b,
                             const std::vector<std::size_t>& offload_set,
                             std::size_t* bisection_calls) {
    double obj = 0.0;
    std::vector<bool> in_set(devs.size(), false);
    if (!offload_set.empty()) {
        AllocationProblem p;
        p.offload_set = offload_set;
        p.b = b;
        p.B = sys.B;
        p.T = sys.T;
        p.S_bits.resize(devs.size());
        for (std::size_t i = 0; i < devs.size(); ++i) p.S_bits[i] = devs[i].S_bits;
        auto tau = solve_time_allocation(p, bisection_calls);
        for (std::size_t i : offload_set) {
            in_set[i] = true;
            obj += offload_energy(devs[i].S_bits, sys.B, b[i], tau[i]);
        }
    }
    for (std::size_t i = 0; i < devs.size(); ++i) {
        if (!in_set[i]) obj += optimal_local_energy(devs[i], sys.T);
    }
    return obj;
}

SolverReport all_local_solve(const std::vector<DeviceParams>& devs,
                             const SystemParams& sys) {
    const double t0 = now_seconds();
    std::vector<double> tau(sys.N, 0.0);
    std::vector<double> b(sys.N, kInf);
    return finish_report(devs, sys, b, tau, 0, 0, t0);
}

SolverReport all_offload_solve(const std::vector<DeviceParams>& devs,
                               const SystemParams& sys,
                               const std::vector<double>& b) {
    const double t0 = now_seconds();
    std::vector<std::size_t> set;
    for (std::size_t i = 0; i < sys.N; ++i) {
        if (usable(b[i])) set.push_back(i);
    }
    std::vector<double> tau(sys.N, 0.0);
    std::size_t calls = 0;
    if (!set.empty()) {
        AllocationProblem p;
        p.offload_set = set;
        p.b = b;
        p.B = sys.B;
        p.T = sys.T;
        p.S_bits.resize(sys.N);
        for (std::size_t i = 0; i < sys.N; ++i) p.S_bits[i] = devs[i].S_bits;
        tau = solve_time_allocation(p, &calls);
    }
    return finish_report(devs, sys, b, tau, 1, calls, t0);
}

SolverReport greedy_solve(const std::vector<DeviceParams>& devs,
                          const SystemParams& sys,
                          const std::vector<double>& b) {
    const double t0 = now_seconds();
    std::size_t calls = 0;
    std::vector<std::size_t> offload_set;
    std::vector<bool> in_set(sys.N, false);
    double current = offload_set_objective(devs, sys, b, {}, &calls);
    std::size_t rounds = 0;

    while (offload_set.size() < sys.N) {
        double best_obj = kInf;
        std::size_t best_k = sys.N;
        for (std::size_t k = 0; k < sys.N; ++k) {
            if (in_set[k] || !usable(b[k])) continue;
            auto candidate = offload_set;
            candidate.push_back(k);
            const double obj =
                offload_set_objective(devs, sys, b, candidate, &calls);
            if (obj < best_obj) { // ties keep the smallest index
                best_obj = obj;
                best_k = k;
            }
        }
        if (best_k == sys.N || best_obj >= current) break;
        offload_set.push_back(best_k);
        in_set[best_k] = true;
        current = best_obj;
        ++rounds;
    }

    std::vector<double> tau(sys.N, 0.0);
    if (!offload_set.empty()) {
        AllocationProblem p;
        p.offload_set = offload_set;
        p.b = b;
        p.B = sys.B;
        p.T = sys.T;
        p.S_bits.resize(sys.N);
        for (std::size_t i = 0; i < sys.N; ++i) p.S_bits[i] = devs[i].S_bits;
        tau = solve_time_allocation(p, &calls);
    }
    return finish_report(devs, sys, b, tau, rounds, calls, t0);
}

double penalty_a_step(const DeviceParams& dev, double B, double T, double b,
                      double tau, double rho) {
    if (tau < 0.0) throw DomainError("penalty_a_step: tau must be >= 0");
    if (!(rho > 0.0)) throw DomainError("penalty_a_step: rho must be > 0");
    const double local_obj = optimal_local_energy(dev, T) + rho * tau * tau;
    if (!usable(b)) return 0.0;

    // the a > 0 branch objective b*phi(a) + rho*(tau-a)^2 is convex; its
    // derivative psi(a) + 2*rho*(a - tau) rises from -inf to +inf
    auto deriv = [&](double a) {
        return psi(dev.S_bits, B, b, a) + 2.0 * rho * (a - tau);
    };
    double lo = dev.S_bits / B, hi = lo;
    std::size_t guard = 0;
    while (deriv(lo) > 0.0) {
        lo *= 0.5;
        if (++guard > kBisectionCap) return 0.0;
    }
    guard = 0;
    while (deriv(hi) < 0.0) {
        hi *= 2.0;
        if (++guard > kBisectionCap) {
            throw ConvergenceError("penalty_a_step: bracket expansion failed");
        }
    }
    double a = 0.5 * (lo + hi);
    for (std::size_t it = 0; it < kBisectionCap; ++it) {
        a = 0.5 * (lo + hi);
        if (a <= lo || a >= hi) break;
        if (deriv(a) < 0.0) {
            lo = a;
        } else {
            hi = a;
        }
    }
    const double branch_obj =
        offload_energy(dev.S_bits, B, b, a) + rho * (tau - a) * (tau - a);
    return branch_obj < local_obj ? a : 0.0;
}

std::vector<double> project_simplex(const std::vector<double>& t, double T) {
    if (!(T > 0.0)) throw DomainError("project_simplex: T must be > 0");
    std::vector<double> tau(t.size());
    double sum = 0.0;
    double t_max = -kInf;
    for (std::size_t i = 0; i < t.size(); ++i) {
        tau[i] = std::max(t[i], 0.0);
        sum += tau[i];
        t_max = std::max(t_max, t[i]);
    }
    if (sum <= T) return tau;

    auto excess = [&](double mu) {
        double s = 0.0;
        for (double v : t) s += std::max(v - mu, 0.0);
        return s;
    };
    double lo = 0.0, hi = t_max;
    double mu = 0.0;
    for (std::size_t it = 0; it < kBisectionCap; ++it) {
        mu = 0.5 * (lo + hi);
        if (mu <= lo || mu >= hi) break;
        if (excess(mu) > T) {
            lo = mu;
        } else {
            hi = mu;
        }
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
        tau[i] = std::max(t[i] - mu, 0.0);
    }
    return tau;
}

std::vector<double> pgd_tau_step(const std::vector<double>& a,
                                 const std::vector<double>& tau_init,
                                 double T) {
    constexpr double kStep = 0.5; // 1/L for the 2-Lipschitz gradient 2(tau - a)
    std::vector<double> tau = tau_init;
    for (std::size_t it = 0; it < 100; ++it) {
        std::vector<double> t(tau.size());
        double sum = 0.0;
        bool nonneg = true;
        for (std::size_t i = 0; i < tau.size(); ++i) {
            t[i] = tau[i] - kStep * (2.0 * tau[i] - 2.0 * a[i]);
            sum += t[i];
            nonneg = nonneg && t[i] >= 0.0;
        }
        std::vector<double> next =
            (nonneg && sum <= T) ? t : project_simplex(t, T);
        double delta = 0.0;
        for (std::size_t i = 0; i < tau.size(); ++i) {
            delta = std::max(delta, std::abs(next[i] - tau[i]));
        }
        tau = std::move(next);
        if (delta <= 1e-14 * T) break;
    }
    return tau;
}

SolverReport penalty_solve(const std::vector<DeviceParams>& devs,
                           const SystemParams& sys,
                           const std::vector<double>& b,
                           const PenaltyOptions& opts) {
    if (!(opts.rho > 0.0)) throw DomainError("penalty_solve: rho must be > 0");
    const double t0 = now_seconds();
    const std::size_t n = sys.N;

    std::vector<double> tau(n, sys.T / static_cast<double>(n));
    std::vector<double> a(n, 0.0);

    auto penalized = [&]() {
        double obj = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (a[i] > 0.0) {
                obj += offload_energy(devs[i].S_bits, sys.B, b[i], a[i]);
            } else {
                obj += optimal_local_energy(devs[i], sys.T);
            }
            obj += opts.rho * (tau[i] - a[i]) * (tau[i] - a[i]);
        }
        return obj;
    };

    // Warm start with the penalty weight ramped up from a value comparable
    // to the energies involved. Starting the BCD directly at full weight
    // makes the coupling term dwarf the local-computing branch of the
    // a-step, which locks every device into offloading regardless of its
    // channel; the ramp lets the early mode decisions compare real energies
    // before the coupling tightens.
    for (double rho_w = opts.rho / 256.0; rho_w < opts.rho; rho_w *= 2.0) {
        for (int warm = 0; warm < 3; ++warm) {
            for (std::size_t i = 0; i < n; ++i) {
                a[i] = penalty_a_step(devs[i], sys.B, sys.T, b[i], tau[i],
                                      rho_w);
            }
            tau = pgd_tau_step(a, tau, sys.T);
        }
    }

    SolverReport rep;
    double prev = penalized();
    std::size_t iters = 0;
    for (; iters < opts.max_iters; ++iters) {
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = penalty_a_step(devs[i], sys.B, sys.T, b[i], tau[i], opts.rho);
        }
        rep.penalty_trace.push_back(penalized());
        tau = pgd_tau_step(a, tau, sys.T);
        const double cur = penalized();
        rep.penalty_trace.push_back(cur);
        if (std::abs(prev - cur) <= opts.rel_tol * std::max(prev, 1e-300)) {
            prev = cur;
            ++iters;
            break;
        }
        prev = cur;
    }

    // round tiny times to local mode and repair with an exact re-solve
    std::vector<std::size_t> offload_set;
    for (std::size_t i = 0; i < n; ++i) {
        if (tau[i] >= 1e-6 * sys.T && usable(b[i])) offload_set.push_back(i);
    }
    std::size_t calls = 0;

    AllocationProblem p;
    p.b = b;
    p.B = sys.B;
    p.T = sys.T;
    p.S_bits.resize(n);
    for (std::size_t i = 0; i < n; ++i) p.S_bits[i] = devs[i].S_bits;

    // The a-step alone cannot retire a device whose channel is only
    // moderately bad: the offload branch may assume extra time a > tau at a
    // small coupling cost, so its energy is always understated. Repair with
    // the dual price of the shared budget: freeing tau_i is worth about
    // nu*tau_i to the remaining devices, so estimate the gain of switching
    // device i local as localE_i - b_i*phi(tau_i) - nu*tau_i, then confirm
    // each candidate drop exactly before accepting it.
    std::vector<std::size_t> best_set = offload_set;
    double best_obj = offload_set_objective(devs, sys, b, best_set, &calls);
    if (!offload_set.empty()) {
        p.offload_set = offload_set;
        const std::vector<double> tau_exact = solve_time_allocation(p, &calls);
        const std::size_t front = offload_set.front();
        const double nu =
            -psi(devs[front].S_bits, sys.B, b[front], tau_exact[front]);
        std::vector<std::pair<double, std::size_t>> drops;
        for (std::size_t i : offload_set) {
            DeviceParams dev = devs[i];
            const double gain = optimal_local_energy(dev, sys.T) -
                                b[i] * phi(dev, sys.B, tau_exact[i]) -
                                nu * tau_exact[i];
            if (gain < 0.0) drops.emplace_back(gain, i);
        }
        std::sort(drops.begin(), drops.end());
        std::vector<std::size_t> cur = offload_set;
        for (const auto& [gain, i] : drops) {
            cur.erase(std::find(cur.begin(), cur.end(), i));
            const double obj = offload_set_objective(devs, sys, b, cur, &calls);
            if (obj < best_obj) {
                best_obj = obj;
                best_set = cur;
            }
        }
    }
    const double all_local = offload_set_objective(devs, sys, b, {}, &calls);
    if (all_local < best_obj) best_set.clear();

    std::vector<double> tau_final(n, 0.0);
    if (!best_set.empty()) {
        p.offload_set = best_set;
        tau_final = solve_time_allocation(p, &calls);
    }

    auto trace = std::move(rep.penalty_trace);
    rep = finish_report(devs, sys, b, tau_final, iters, calls, t0);
    rep.penalty_trace = std::move(trace);
    return rep;
}

SolverReport enumerate_solve(const std::vector<DeviceParams>& devs,
                             const SystemParams& sys,
                             const std::vector<double>& b) {
    if (sys.N > 20) throw BudgetError("enumerate_solve: N must be <= 20");
    const double t0 = now_seconds();
    std::size_t calls = 0;

    std::vector<std::size_t> best_set;
    double best = kInf;
    const std::size_t total = std::size_t{1} << sys.N;
    for (std::size_t mask = 0; mask < total; ++mask) {
        std::vector<std::size_t> set;
        bool ok = true;
        for (std::size_t i = 0; i < sys.N; ++i) {
            if (mask & (std::size_t{1} << i)) {
                if (!usable(b[i])) {
                    ok = false;
                    break;
                }
                set.push_back(i);
            }
        }
        if (!ok) continue;
        const double obj = offload_set_objective(devs, sys, b, set, &calls);
        if (obj < best) { // strict: ties keep the earlier (smaller) set
            best = obj;
            best_set = std::move(set);
        }
    }

    std::vector<double> tau(sys.N, 0.0);
    if (!best_set.empty()) {
        AllocationProblem p;
        p.offload_set = best_set;
        p.b = b;
        p.B = sys.B;
        p.T = sys.T;
        p.S_bits.resize(sys.N);
        for (std::size_t i = 0; i < sys.N; ++i) p.S_bits[i] = devs[i].S_bits;
        tau = solve_time_allocation(p, &calls);
    }
    return finish_report(devs, sys, b, tau, total, calls, t0);
}

} // namespace irsmec
