#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "irsmec/channel.hpp"
#include "irsmec/config_io.hpp"
#include "irsmec/experiments.hpp"
#include "irsmec/model.hpp"
#include "irsmec/scenario.hpp"
#include "irsmec/solvers.hpp"

namespace py = pybind11;
using namespace irsmec;

PYBIND11_MODULE(_irsmec, m) {
    m.doc() = "IRS-aided MEC binary-offloading energy minimization";

    py::class_<DeviceParams>(m, "DeviceParams")
        .def(py::init([](double epsilon, double S_bits, double C, double f_max) {
                 DeviceParams d{epsilon, S_bits, C, f_max};
                 d.validate();
                 return d;
             }),
             py::arg("epsilon"), py::arg("S_bits"), py::arg("C"),
             py::arg("f_max"))
        .def_readwrite("epsilon", &DeviceParams::epsilon)
        .def_readwrite("S_bits", &DeviceParams::S_bits)
        .def_readwrite("C", &DeviceParams::C)
        .def_readwrite("f_max", &DeviceParams::f_max);

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def_readwrite("N", &SystemParams::N)
        .def_readwrite("M", &SystemParams::M)
        .def_readwrite("B", &SystemParams::B)
        .def_readwrite("sigma2", &SystemParams::sigma2)
        .def_readwrite("T", &SystemParams::T)
        .def_readwrite("L", &SystemParams::L);

    py::class_<OffloadSolution>(m, "OffloadSolution")
        .def_readonly("beta", &OffloadSolution::beta)
        .def_readonly("tau", &OffloadSolution::tau)
        .def_readonly("f", &OffloadSolution::f)
        .def_readonly("P", &OffloadSolution::P)
        .def_readonly("theta", &OffloadSolution::theta)
        .def_readonly("total_energy", &OffloadSolution::total_energy);

    py::class_<SolverReport>(m, "SolverReport")
        .def_readonly("solution", &SolverReport::solution)
        .def_readonly("objective", &SolverReport::objective)
        .def_readonly("iterations", &SolverReport::iterations)
        .def_readonly("inner_bisection_calls",
                      &SolverReport::inner_bisection_calls)
        .def_readonly("wall_time", &SolverReport::wall_time)
        .def_readonly("penalty_trace", &SolverReport::penalty_trace);

    m.def("local_energy", &local_energy, py::arg("dev"), py::arg("f"));
    m.def("optimal_local_frequency", &optimal_local_frequency, py::arg("dev"),
          py::arg("T"));
    m.def("optimal_local_energy", &optimal_local_energy, py::arg("dev"),
          py::arg("T"));
    m.def("phi", &phi, py::arg("dev"), py::arg("B"), py::arg("tau"));
    m.def("offload_power", &offload_power, py::arg("dev"), py::arg("B"),
          py::arg("sigma2"), py::arg("gain2"), py::arg("tau"));
    m.def("achievable_rate", &achievable_rate, py::arg("P"), py::arg("gain2"),
          py::arg("B"), py::arg("sigma2"));

    m.def("path_loss",
          [](double d, double lambda, double D0, double alpha) {
              return path_loss(d, PathLossParams{lambda, D0, alpha});
          },
          py::arg("d"), py::arg("lambda_") = 1e-3, py::arg("D0") = 1.0,
          py::arg("alpha") = 3.0);
    m.def("optimal_phases_continuous", &optimal_phases_continuous, py::arg("g"),
          py::arg("h"), py::arg("r"));
    m.def("composite_amplitude", &composite_amplitude, py::arg("g"),
          py::arg("h"), py::arg("r"), py::arg("theta"));
    m.def("quantize_phases", &quantize_phases, py::arg("theta_cont"),
          py::arg("L"));
    m.def("am_discrete_phases", &am_discrete_phases, py::arg("g"), py::arg("h"),
          py::arg("r"), py::arg("L"), py::arg("theta_init"));
    m.def("brute_force_discrete_phases", &brute_force_discrete_phases,
          py::arg("g"), py::arg("h"), py::arg("r"), py::arg("L"));

    m.def("psi", &psi, py::arg("S"), py::arg("B"), py::arg("b"),
          py::arg("tau"));
    m.def("psi_inverse", &psi_inverse, py::arg("S"), py::arg("B"), py::arg("b"),
          py::arg("nu"));
    m.def("project_simplex", &project_simplex, py::arg("t"), py::arg("T"));
    m.def("pgd_tau_step", &pgd_tau_step, py::arg("a"), py::arg("tau_init"),
          py::arg("T"));
    m.def("penalty_a_step", &penalty_a_step, py::arg("dev"), py::arg("B"),
          py::arg("T"), py::arg("b"), py::arg("tau"), py::arg("rho"));

    m.def("solve_time_allocation",
          [](const std::vector<std::size_t>& offload_set,
             const std::vector<double>& b, const std::vector<double>& S_bits,
             double B, double T) {
              AllocationProblem p{offload_set, b, S_bits, B, T};
              return solve_time_allocation(p);
          },
          py::arg("offload_set"), py::arg("b"), py::arg("S_bits"), py::arg("B"),
          py::arg("T"));

    m.def("greedy_solve", &greedy_solve, py::arg("devs"), py::arg("sys"),
          py::arg("b"));
    m.def("penalty_solve",
          [](const std::vector<DeviceParams>& devs, const SystemParams& sys,
             const std::vector<double>& b, double rho) {
              PenaltyOptions opts;
              opts.rho = rho;
              return penalty_solve(devs, sys, b, opts);
          },
          py::arg("devs"), py::arg("sys"), py::arg("b"), py::arg("rho") = 300.0);
    m.def("enumerate_solve", &enumerate_solve, py::arg("devs"), py::arg("sys"),
          py::arg("b"));
    m.def("all_local_solve", &all_local_solve, py::arg("devs"), py::arg("sys"));
    m.def("all_offload_solve", &all_offload_solve, py::arg("devs"),
          py::arg("sys"), py::arg("b"));

    py::class_<TrialMetrics>(m, "TrialMetrics")
        .def_readonly("scheme", &TrialMetrics::scheme)
        .def_readonly("total_energy", &TrialMetrics::total_energy)
        .def_readonly("near_irs_energy", &TrialMetrics::near_irs_energy)
        .def_readonly("near_server_energy", &TrialMetrics::near_server_energy)
        .def_readonly("offloaded", &TrialMetrics::offloaded)
        .def_readonly("solver_wall_time", &TrialMetrics::solver_wall_time)
        .def_readonly("seed", &TrialMetrics::seed)
        .def_readonly("failed", &TrialMetrics::failed);

    m.def("run_trial",
          [](std::size_t N, std::size_t M, const std::string& scheme,
             std::uint64_t seed) {
              auto parsed = Scheme::parse(scheme);
              if (!parsed) throw py::value_error("unknown scheme: " + scheme);
              return run_trial(default_scenario(N, M), *parsed, seed);
          },
          py::arg("N"), py::arg("M"), py::arg("scheme"), py::arg("seed"));

    m.def("stable_mix", &stable_mix, py::arg("base_seed"), py::arg("a"),
          py::arg("b") = 0);
}
