#pragma once

#include <cstddef>
#include <vector>

#include "irsmec/model.hpp"

namespace irsmec {

/// Time-allocation subproblem over a fixed offload set.
struct AllocationProblem {
    std::vector<std::size_t> offload_set; ///< device indices with tau > 0
    std::vector<double> b;                ///< per-device inverse gain, W (size N)
    std::vector<double> S_bits;           ///< per-device task size (size N)
    double B = 0.0;                       ///< Hz
    double T = 0.0;                       ///< s
};

struct SolverReport {
    OffloadSolution solution;
    double objective = 0.0; ///< J, equals evaluate_solution of .solution
    std::size_t iterations = 0;
    std::size_t inner_bisection_calls = 0;
    double wall_time = 0.0; ///< s, solver only
    /// Penalized objective after every half-step of the BCD iteration
    /// (a-step then tau-step); empty for non-penalty solvers.
    std::vector<double> penalty_trace;
};

struct PenaltyOptions {
    double rho = 300.0;      ///< penalty weight, J/s^2
    double rel_tol = 1e-8;   ///< stop when the penalized objective stalls
    std::size_t max_iters = 500;
};

/// Derivative of the offload energy b*tau*(2^{S/(tau B)}-1):
/// psi(tau) = b*(2^{S/(tau B)}*(1 - ln2*S/(tau B)) - 1).
/// Strictly negative and strictly increasing on tau > 0.
double psi(double S, double B, double b, double tau);

/// Solves psi(tau) = -nu for tau > 0 by bracketing bisection with geometric
/// bracket expansion. Requires nu > 0 (psi ranges over (-inf, 0)).
double psi_inverse(double S, double B, double b, double nu);

/// KKT water-level solve of the convex time-allocation problem: finds the
/// common dual price nu* with sum_n psi_inverse(nu*) = T and returns the
/// per-device times (zeros outside the offload set).
std::vector<double> solve_time_allocation(const AllocationProblem& p,
                                          std::size_t* bisection_calls = nullptr);

/// Incremental device selection: starting from all-local, each round re-solves
/// the time allocation with each remaining candidate added and accepts the
/// best strictly-positive energy decrease, until none exists.
SolverReport greedy_solve(const std::vector<DeviceParams>& devs,
                          const SystemParams& sys,
                          const std::vector<double>& b);

/// Exact minimizer over a >= 0 of
///   b*phi(a) + [a == 0]*eps*S^3*C^3/T^2 + rho*(tau - a)^2,
/// comparing the a = 0 branch against the bisection root of the smooth branch.
double penalty_a_step(const DeviceParams& dev, double B, double T, double b,
                      double tau, double rho);

/// Euclidean projection onto {tau >= 0, sum tau <= T}. Componentwise clamp
/// when already inside, otherwise water-level mu from bisection on
/// sum (t - mu)_+ = T.
std::vector<double> project_simplex(const std::vector<double>& t, double T);

/// Projected gradient descent on sum(tau^2 - 2 a tau) over the simplex.
/// With step 1/2 the first projected step lands on project_simplex(a, T).
std::vector<double> pgd_tau_step(const std::vector<double>& a,
                                 const std::vector<double>& tau_init, double T);

/// Penalty-based block coordinate descent: alternates the per-device a-step
/// and the projected tau-step, then rounds small taus to local mode and
/// re-solves the time allocation on the surviving offload set.
SolverReport penalty_solve(const std::vector<DeviceParams>& devs,
                           const SystemParams& sys,
                           const std::vector<double>& b,
                           const PenaltyOptions& opts = {});

/// Exhaustive minimum over all 2^N offload sets; the optimal baseline.
/// Refuses N > 20.
SolverReport enumerate_solve(const std::vector<DeviceParams>& devs,
                             const SystemParams& sys,
                             const std::vector<double>& b);

/// All devices local at their minimum completion frequency.
SolverReport all_local_solve(const std::vector<DeviceParams>& devs,
                             const SystemParams& sys);

/// Every usable device offloads; time allocation solved exactly. Devices with
/// degenerate channels stay local.
SolverReport all_offload_solve(const std::vector<DeviceParams>& devs,
                               const SystemParams& sys,
                               const std::vector<double>& b);

/// Objective of a given offload set with exact inner time allocation.
double offload_set_objective(const std::vector<DeviceParams>& devs,
                             const SystemParams& sys,
                             const std::vector<double>& b,
                             const std::vector<std::size_t>& offload_set,
                             std::size_t* bisection_calls = nullptr);

} // namespace irsmec
