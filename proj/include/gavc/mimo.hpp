#pragma once

#include <Eigen/Core>

#include "gavc/rng.hpp"

namespace gavc::mimo {

// Diagonal (M, M, 1) AVC: y = x + g*s + w, transmitter power gamma, rank-one
// jammer power lambda along unit direction g, noise covariance diag(nu) with
// nu sorted ascending and strictly positive.
struct MimoSpec {
  Eigen::VectorXd nu;
  double gamma;
  double lambda;

  int m() const { return static_cast<int>(nu.size()); }
  void validate() const;
};

struct PowerAllocation {
  Eigen::VectorXd powers;
  double water_level;
};

// Classic waterfilling of `budget` over channels with noise `noise`:
// powers_m = (level - noise_m)^+, sum = budget.  Bisection on the level to
// 1e-12 * max(1, budget).
PowerAllocation waterfill(const Eigen::VectorXd& noise, double budget);

// Unit jam direction with canonical sign (first nonzero component positive).
Eigen::VectorXd canonical_direction(const Eigen::VectorXd& g);

// det(A + u v^T) = det(A) (1 + v^T A^{-1} u) for invertible A.
double det_rank_one_update(const Eigen::MatrixXd& a, const Eigen::VectorXd& u,
                           const Eigen::VectorXd& v);

// L(Sigma_X, g) = 0.5*log2 det(Sigma_X + Sigma_W + lambda g g^T)
//                        / det(Sigma_W + lambda g g^T),
// evaluated with the rank-one determinant identity and cross-checked against
// direct determinants to 1e-10 relative (NumericError on mismatch).
double mimo_rate(const Eigen::MatrixXd& sigma_x, const Eigen::MatrixXd& sigma_w,
                 double lambda, const Eigen::VectorXd& g);

// Mutual-waterfilling baseline: the jammer waterfills lambda over nu, then the
// transmitter waterfills gamma over nu + jam.  This is the max-min value when
// the jammer may use full-rank strategies.
double full_rank_rate(const MimoSpec& spec);
// Transmitter allocation of full_rank_rate played against the rank-one jammer
// pinned to channel 1 (the smallest nu): the realized rate of that pairing.
double rate_wfillnew(const MimoSpec& spec);
// Waterfilling upper bound: transmitter waterfills against
// (nu_1 + lambda, nu_2, ..., nu_M).
double upper_bound_rate(const MimoSpec& spec);

// For diagonal inputs, the best elementary jam direction: argmax over m of
// (gamma_m/nu_m) / (gamma_m + nu_m + lambda), lowest index on ties (0-based).
int optimal_jam_index(const Eigen::VectorXd& gamma_alloc, const Eigen::VectorXd& nu,
                      double lambda);

struct WorstDirection {
  Eigen::VectorXd g;  // canonical unit direction
  double rate;        // min over directions of mimo_rate
};

// Continuous minimization of mimo_rate over unit g.  M = 2: dense angle grid
// (default 10^4 points) with golden-section polish; M > 2: multi-start
// projected gradient descent on the sphere (default 10^4 starts).
WorstDirection worst_g_oracle(const Eigen::MatrixXd& sigma_x,
                              const Eigen::MatrixXd& sigma_w, double lambda,
                              core::SeededRng& rng, int starts = 10000);

// Closed form for M = 2.  kase 1: lambda <= nu2 - nu1 (waterfilling optimal,
// capacity); kase 2: gamma large enough and the waterfilling split exceeds the
// balanced root beta (capacity); kase 3: allocation beta equalizing the two
// elementary jam responses (achievable max-min value).
struct Maxmin221Result {
  double rate = 0.0;
  Eigen::Vector2d alloc;
  int kase = 0;
  double beta = 0.0;         // balanced-response root in [0, gamma]
  double gamma_split = 0.0;  // waterfilling split against (nu1+lambda, nu2)
  bool is_capacity = false;
};
Maxmin221Result maxmin_rate_221(const MimoSpec& spec);

// lambda -> inf limit: rate 0.5*log2(1 + gamma/(nu1+nu2)), allocation
// proportional to nu.
struct Asymptotic221 {
  double rate;
  Eigen::Vector2d alloc;
};
Asymptotic221 asymptotic_rate_221(const MimoSpec& spec);

// General-M max-min over diagonal allocations against elementary jam
// directions: max_{p >= 0, sum p <= gamma} min_m L(diag(p), e_m).  Projected
// subgradient ascent followed by pairwise golden-section exchange passes.
struct GeneralMaxminResult {
  double rate = 0.0;
  Eigen::VectorXd alloc;
  int active_jam_index = 0;  // argmin_m at the optimum (0-based, lowest tie)
  int subgradient_iters = 0;
};
GeneralMaxminResult maxmin_solver_general(const MimoSpec& spec, double tol = 1e-6);

// Rate of allocation p against the elementary jammer on channel m.
double elementary_rate(const Eigen::VectorXd& p, const Eigen::VectorXd& nu,
                       double lambda, int m);

}  // namespace gavc::mimo
