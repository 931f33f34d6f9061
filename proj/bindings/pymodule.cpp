// Python bindings for the main operations of the GAVC laboratory.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gavc/common.hpp"
#include "gavc/dpc_opt.hpp"
#include "gavc/mimo.hpp"
#include "gavc/rates.hpp"
#include "gavc/rng.hpp"
#include "gavc/sim.hpp"

namespace py = pybind11;
using namespace gavc;

PYBIND11_MODULE(_gavclab, m) {
  m.doc() = "Gaussian arbitrarily varying channel laboratory (C++ core)";

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  m.def(
      "randomized_capacity",
      [](double gamma, double lambda, double sigma_w2) {
        return rates::randomized_capacity({gamma, lambda, sigma_w2});
      },
      py::arg("gamma"), py::arg("lambda_"), py::arg("sigma_w2"),
      "Randomized-code capacity in bits per channel use.");

  m.def(
      "deterministic_capacity",
      [](double gamma, double lambda, double sigma_w2) {
        return rates::deterministic_capacity({gamma, lambda, sigma_w2});
      },
      py::arg("gamma"), py::arg("lambda_"), py::arg("sigma_w2"),
      "Deterministic-code capacity in bits per channel use.");

  m.def(
      "broadcast_sum_rate",
      [](double gamma, double lambda, double s1, double s2) {
        return rates::broadcast_sum_rate({gamma, lambda, s1, s2});
      },
      py::arg("gamma"), py::arg("lambda_"), py::arg("sigma1_2"), py::arg("sigma2_2"));

  m.def(
      "dpc_rate",
      [](double gamma, double lambda, double sigma_t2, double sigma_w2,
         double alpha, double rho) {
        return rates::dpc_rate({gamma, lambda, sigma_t2, sigma_w2}, alpha, rho);
      },
      py::arg("gamma"), py::arg("lambda_"), py::arg("sigma_t2"), py::arg("sigma_w2"),
      py::arg("alpha"), py::arg("rho"));

  m.def(
      "optimize_dpc",
      [](double gamma, double lambda, double sigma_t2, double sigma_w2) {
        auto r = dpc::optimize_dpc({gamma, lambda, sigma_t2, sigma_w2});
        return py::make_tuple(r.feasible, r.best_rate, r.alpha, r.rho);
      },
      py::arg("gamma"), py::arg("lambda_"), py::arg("sigma_t2"), py::arg("sigma_w2"),
      "Returns (feasible, best_rate_bits, alpha, rho).");

  m.def(
      "dpc_gamma_threshold",
      [](double lambda, double sigma_t2, double sigma_w2) {
        return dpc::dpc_gamma_threshold(lambda, sigma_t2, sigma_w2);
      },
      py::arg("lambda_"), py::arg("sigma_t2"), py::arg("sigma_w2"));

  m.def(
      "watermark_covertext_power",
      [](double gamma, double lambda) {
        auto r = rates::watermark_covertext_power(gamma, lambda);
        return py::make_tuple(r.sigma_t2, r.clamped);
      },
      py::arg("gamma"), py::arg("lambda_"));

  m.def(
      "waterfill",
      [](const Eigen::VectorXd& noise, double budget) {
        auto r = mimo::waterfill(noise, budget);
        return py::make_tuple(r.powers, r.water_level);
      },
      py::arg("noise"), py::arg("budget"),
      "Water-filling power allocation; returns (powers, level).");

  m.def(
      "maxmin_rate_221",
      [](double nu1, double nu2, double gamma, double lambda) {
        Eigen::VectorXd nu(2);
        nu << nu1, nu2;
        auto r = mimo::maxmin_rate_221({nu, gamma, lambda});
        py::dict d;
        d["rate"] = r.rate;
        d["alloc"] = r.alloc;
        d["case"] = r.kase;
        d["is_capacity"] = r.is_capacity;
        return d;
      },
      py::arg("nu1"), py::arg("nu2"), py::arg("gamma"), py::arg("lambda_"),
      "Closed-form max-min rate for two antennas against a rank-one jammer.");

  m.def(
      "maxmin_solver_general",
      [](const Eigen::VectorXd& nu, double gamma, double lambda, double tol) {
        auto r = mimo::maxmin_solver_general({nu, gamma, lambda}, tol);
        py::dict d;
        d["rate"] = r.rate;
        d["alloc"] = r.alloc;
        d["active_jam_index"] = r.active_jam_index;
        return d;
      },
      py::arg("nu"), py::arg("gamma"), py::arg("lambda_"), py::arg("tol") = 1e-6,
      "Numerical max-min allocation for M antennas against a rank-one jammer.");

  m.def(
      "optimal_jam_index",
      [](const Eigen::VectorXd& powers, const Eigen::VectorXd& nu, double lambda) {
        return mimo::optimal_jam_index(powers, nu, lambda);
      },
      py::arg("powers"), py::arg("nu"), py::arg("lambda_"),
      "Best single channel for a rank-one jammer (0-based).");

  m.def(
      "sim_error_rate",
      [](int n, double gamma, double lambda, double sigma_w2, double rate_frac,
         std::int64_t big_n, std::int64_t k, std::int64_t trials,
         std::uint64_t seed) {
        rates::ScalarAvcSpec spec{gamma, lambda, sigma_w2};
        core::SeededRng root(seed, 0);
        const std::int64_t keys =
            k >= 1 ? k : rates::key_size_schedule(n, rates::KeyRule::NLogN);
        auto scen = sim::make_scenario({spec, n, rate_frac, big_n, keys}, root);
        sim::TrialConfig tc;
        tc.trials = trials;
        auto rep = sim::run_trials(scen.codebook, scen.keys,
                                   sim::JammerStrategy::gaussian(lambda),
                                   sigma_w2, tc, root);
        py::dict d;
        d["big_n"] = scen.big_n;
        d["realized_rate_bits"] = scen.realized_rate;
        d["rate_hat"] = rep.average.rate_hat;
        d["wilson_lo"] = rep.average.ci_lo;
        d["wilson_hi"] = rep.average.ci_hi;
        d["errors"] = rep.average.errors;
        d["trials"] = rep.average.trials;
        return d;
      },
      py::arg("n"), py::arg("gamma"), py::arg("lambda_"), py::arg("sigma_w2"),
      py::arg("rate_frac") = 0.5, py::arg("big_n") = 0, py::arg("k") = 0,
      py::arg("trials") = 200, py::arg("seed") = 12345,
      "Small rotated-codebook Monte Carlo with a Gaussian jammer.");
}
