#include "gavc/mimo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "gavc/common.hpp"
#include "gavc/detail/golden.hpp"

namespace gavc::mimo {

namespace {

constexpr double kLn2Inv2 = 0.72134752044448170368;  // 1 / (2 ln 2)

// Projection onto the simplex {p >= 0, sum p = budget}.
Eigen::VectorXd project_simplex(Eigen::VectorXd p, double budget) {
  const int m = static_cast<int>(p.size());
  std::vector<double> u(p.data(), p.data() + m);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0, theta = 0.0;
  int k = 0;
  for (int i = 0; i < m; ++i) {
    css += u[i];
    const double t = (css - budget) / (i + 1);
    if (u[i] - t > 0.0) {
      k = i + 1;
      theta = t;
    }
  }
  (void)k;
  for (int i = 0; i < m; ++i) p[i] = std::max(0.0, p[i] - theta);
  return p;
}

}  // namespace

void MimoSpec::validate() const {
  require(nu.size() >= 1, "MimoSpec: need at least one channel");
  require(gamma >= 0.0, "MimoSpec: gamma must be >= 0");
  require(lambda >= 0.0, "MimoSpec: lambda must be >= 0");
  for (int i = 0; i < nu.size(); ++i)
    require(nu[i] > 0.0, "MimoSpec: noise variances must be > 0");
  for (int i = 1; i < nu.size(); ++i)
    require(nu[i] >= nu[i - 1], "MimoSpec: nu must be sorted ascending");
}

PowerAllocation waterfill(const Eigen::VectorXd& noise, double budget) {
  require(noise.size() >= 1, "waterfill: need at least one channel");
  for (int i = 0; i < noise.size(); ++i)
    require(noise[i] > 0.0, "waterfill: noise must be > 0");
  require(budget >= 0.0, "waterfill: budget must be >= 0");
  const double lo0 = noise.minCoeff();
  if (budget == 0.0)
    return {Eigen::VectorXd::Zero(noise.size()), lo0};
  auto filled = [&](double level) {
    double s = 0.0;
    for (int i = 0; i < noise.size(); ++i) s += std::max(0.0, level - noise[i]);
    return s;
  };
  double lo = lo0, hi = noise.maxCoeff() + budget;
  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * std::max(1.0, budget); ++it) {
    const double mid = 0.5 * (lo + hi);
    (filled(mid) < budget ? lo : hi) = mid;
  }
  const double level = 0.5 * (lo + hi);
  Eigen::VectorXd powers(noise.size());
  for (int i = 0; i < noise.size(); ++i) powers[i] = std::max(0.0, level - noise[i]);
  const double s = powers.sum();
  if (s > 0.0) powers *= budget / s;  // exact budget despite bisection tolerance
  return {powers, level};
}

Eigen::VectorXd canonical_direction(const Eigen::VectorXd& g) {
  require(g.size() >= 1, "canonical_direction: empty vector");
  const double nrm = g.norm();
  require(nrm > 0.0, "canonical_direction: zero vector");
  Eigen::VectorXd u = g / nrm;
  for (int i = 0; i < u.size(); ++i) {
    if (u[i] != 0.0) {
      if (u[i] < 0.0) u = -u;
      break;
    }
  }
  return u;
}

double det_rank_one_update(const Eigen::MatrixXd& a, const Eigen::VectorXd& u,
                           const Eigen::VectorXd& v) {
  require(a.rows() == a.cols(), "det_rank_one_update: matrix must be square");
  require(u.size() == a.rows() && v.size() == a.rows(),
          "det_rank_one_update: vector sizes must match the matrix");
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  const double det_a = lu.determinant();
  require(det_a != 0.0, "det_rank_one_update: matrix must be invertible");
  return det_a * (1.0 + v.dot(lu.solve(u)));
}

double mimo_rate(const Eigen::MatrixXd& sigma_x, const Eigen::MatrixXd& sigma_w,
                 double lambda, const Eigen::VectorXd& g) {
  const int m = static_cast<int>(sigma_w.rows());
  require(sigma_x.rows() == m && sigma_x.cols() == m && sigma_w.cols() == m,
          "mimo_rate: covariance shapes must agree");
  require(g.size() == m, "mimo_rate: direction size must match");
  require(lambda >= 0.0, "mimo_rate: lambda must be >= 0");
  require(std::abs(g.norm() - 1.0) <= 1e-9, "mimo_rate: g must be unit norm");

  const Eigen::MatrixXd total = sigma_x + sigma_w;
  const Eigen::VectorXd lg = lambda * g;
  const double num = det_rank_one_update(total, lg, g);
  const double den = det_rank_one_update(sigma_w, lg, g);
  require(den > 0.0 && num > 0.0, "mimo_rate: sigma_w must be positive definite");
  const double ratio = num / den;

  // Direct-determinant cross check of the rank-one identity.
  const Eigen::MatrixXd jam = lambda * g * g.transpose();
  const double direct =
      (total + jam).determinant() / (sigma_w + jam).determinant();
  if (std::abs(ratio - direct) > 1e-10 * std::max(1.0, std::abs(direct)))
    throw NumericError("mimo_rate: determinant identity cross-check failed");
  return half_log2(ratio);
}

double full_rank_rate(const MimoSpec& spec) {
  spec.validate();
  const Eigen::VectorXd jam = waterfill(spec.nu, spec.lambda).powers;
  const Eigen::VectorXd eff = spec.nu + jam;
  const Eigen::VectorXd tx = waterfill(eff, spec.gamma).powers;
  double r = 0.0;
  for (int i = 0; i < spec.m(); ++i) r += half_log2(1.0 + tx[i] / eff[i]);
  return r;
}

double rate_wfillnew(const MimoSpec& spec) {
  spec.validate();
  const Eigen::VectorXd jam = waterfill(spec.nu, spec.lambda).powers;
  const Eigen::VectorXd tx = waterfill(spec.nu + jam, spec.gamma).powers;
  double r = half_log2(1.0 + tx[0] / (spec.nu[0] + spec.lambda));
  for (int i = 1; i < spec.m(); ++i) r += half_log2(1.0 + tx[i] / spec.nu[i]);
  return r;
}

double upper_bound_rate(const MimoSpec& spec) {
  spec.validate();
  Eigen::VectorXd tau = spec.nu;
  tau[0] += spec.lambda;
  const Eigen::VectorXd tx = waterfill(tau, spec.gamma).powers;
  double r = 0.0;
  for (int i = 0; i < spec.m(); ++i) r += half_log2(1.0 + tx[i] / tau[i]);
  return r;
}

double elementary_rate(const Eigen::VectorXd& p, const Eigen::VectorXd& nu,
                       double lambda, int m) {
  require(p.size() == nu.size(), "elementary_rate: size mismatch");
  require(m >= 0 && m < p.size(), "elementary_rate: bad channel index");
  double r = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    const double eff = (i == m) ? nu[i] + lambda : nu[i];
    r += half_log2(1.0 + p[i] / eff);
  }
  return r;
}

int optimal_jam_index(const Eigen::VectorXd& gamma_alloc, const Eigen::VectorXd& nu,
                      double lambda) {
  require(gamma_alloc.size() == nu.size(), "optimal_jam_index: size mismatch");
  require(lambda >= 0.0, "optimal_jam_index: lambda must be >= 0");
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < nu.size(); ++i) {
    require(nu[i] > 0.0, "optimal_jam_index: noise must be > 0");
    require(gamma_alloc[i] >= 0.0, "optimal_jam_index: powers must be >= 0");
    const double val =
        (gamma_alloc[i] / nu[i]) / (gamma_alloc[i] + nu[i] + lambda);
    if (val > best_val) {  // strict: lowest index wins ties
      best_val = val;
      best = i;
    }
  }
  return best;
}

namespace {

// log ratio objective without the determinant prefactors; minimizing it over
// unit g is equivalent to minimizing mimo_rate.
struct RatioObjective {
  Eigen::MatrixXd ainv, binv;
  double lambda;

  double value(const Eigen::VectorXd& g) const {
    const double a = 1.0 + lambda * g.dot(ainv * g);
    const double b = 1.0 + lambda * g.dot(binv * g);
    return std::log(a / b);
  }
  // Euclidean gradient; caller projects to the sphere tangent.
  Eigen::VectorXd grad(const Eigen::VectorXd& g) const {
    const Eigen::VectorXd pa = ainv * g, pb = binv * g;
    const double a = 1.0 + lambda * g.dot(pa);
    const double b = 1.0 + lambda * g.dot(pb);
    return 2.0 * lambda * (pa / a - pb / b);
  }
};

// Backtracking projected gradient descent on the unit sphere.
Eigen::VectorXd polish_direction(const RatioObjective& obj, Eigen::VectorXd g) {
  g.normalize();
  double val = obj.value(g);
  double step = 0.5;
  for (int it = 0; it < 800; ++it) {
    Eigen::VectorXd grad = obj.grad(g);
    Eigen::VectorXd tang = grad - g.dot(grad) * g;
    if (tang.norm() < 1e-12) break;
    bool moved = false;
    while (step > 1e-14) {
      Eigen::VectorXd trial = (g - step * tang).normalized();
      const double tv = obj.value(trial);
      if (tv < val - 1e-18) {
        g = trial;
        val = tv;
        step = std::min(step * 1.5, 1.0);
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return g;
}

// Second-stage refinement. A stationary direction of log(a/b) on the sphere
// satisfies (ainv/a - binv/b) g = theta g with the scalars a, b evaluated at
// g, so the minimizer is a fixed point of "take the best eigenvector of the
// current weighted matrix". Iterating that self-consistently converges far
// past where first-order steps stall; we only ever accept improvements, so
// the value is monotone.
Eigen::VectorXd eig_refine(const RatioObjective& obj, Eigen::VectorXd g) {
  double val = obj.value(g);
  for (int it = 0; it < 50; ++it) {
    const double a = 1.0 + obj.lambda * g.dot(obj.ainv * g);
    const double b = 1.0 + obj.lambda * g.dot(obj.binv * g);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(obj.ainv / a -
                                                      obj.binv / b);
    Eigen::VectorXd best = g;
    double best_val = val;
    for (int k = 0; k < es.eigenvectors().cols(); ++k) {
      Eigen::VectorXd cand = es.eigenvectors().col(k);
      const double v = obj.value(cand);
      if (v < best_val) {
        best_val = v;
        best = cand;
      }
    }
    if (best_val >= val - 1e-16) break;
    g = best;
    val = best_val;
  }
  return g;
}

}  // namespace

WorstDirection worst_g_oracle(const Eigen::MatrixXd& sigma_x,
                              const Eigen::MatrixXd& sigma_w, double lambda,
                              core::SeededRng& rng, int starts) {
  const int m = static_cast<int>(sigma_w.rows());
  require(m >= 2, "worst_g_oracle: need M >= 2");
  require(starts >= 8, "worst_g_oracle: starts must be >= 8");

  RatioObjective obj{(sigma_x + sigma_w).inverse(), sigma_w.inverse(), lambda};

  Eigen::VectorXd best_g;
  if (m == 2) {
    // Dense angle grid over [0, pi) (g and -g coincide) plus golden polish.
    double best_val = std::numeric_limits<double>::infinity();
    double best_theta = 0.0;
    auto val_at = [&](double th) {
      Eigen::VectorXd g(2);
      g << std::cos(th), std::sin(th);
      return obj.value(g);
    };
    const double dth = M_PI / starts;
    for (int i = 0; i < starts; ++i) {
      const double th = i * dth;
      const double v = val_at(th);
      if (v < best_val) {
        best_val = v;
        best_theta = th;
      }
    }
    auto [th, negv] = detail::golden_max(
        [&](double t) { return -val_at(t); }, best_theta - dth, best_theta + dth,
        1e-14);
    (void)negv;
    best_g = Eigen::VectorXd(2);
    best_g << std::cos(th), std::sin(th);
  } else {
    // Multi-start projected gradient descent: coarse synchronized sweeps over
    // all starts, then deep polish of the best few.
    Eigen::MatrixXd g(m, starts);
    for (int j = 0; j < starts; ++j) g.col(j) = rng.gaussian_vector(m).normalized();
    for (int it = 0; it < 60; ++it) {
      const double step = 0.5 / (1.0 + it / 8.0);
      const Eigen::MatrixXd pa = obj.ainv * g;
      const Eigen::MatrixXd pb = obj.binv * g;
      const Eigen::ArrayXd a =
          1.0 + lambda * (g.array() * pa.array()).colwise().sum().transpose();
      const Eigen::ArrayXd b =
          1.0 + lambda * (g.array() * pb.array()).colwise().sum().transpose();
      Eigen::MatrixXd grad =
          2.0 * lambda *
          (pa * (1.0 / a).matrix().asDiagonal() - pb * (1.0 / b).matrix().asDiagonal());
      const Eigen::ArrayXd inner = (g.array() * grad.array()).colwise().sum().transpose();
      grad -= g * inner.matrix().asDiagonal();  // tangent component
      g -= step * grad;
      g.colwise().normalize();
    }
    // Rank the converged starts and polish the leaders.
    std::vector<std::pair<double, int>> order(starts);
    for (int j = 0; j < starts; ++j) order[j] = {obj.value(g.col(j)), j};
    const int leaders = std::min(5, starts);
    std::partial_sort(order.begin(), order.begin() + leaders, order.end());
    double best_val = std::numeric_limits<double>::infinity();
    for (int r = 0; r < leaders; ++r) {
      Eigen::VectorXd cand =
          eig_refine(obj, polish_direction(obj, g.col(order[r].second)));
      const double v = obj.value(cand);
      if (v < best_val) {
        best_val = v;
        best_g = cand;
      }
    }
  }

  best_g = canonical_direction(best_g);
  return {best_g, mimo_rate(sigma_x, sigma_w, lambda, best_g)};
}

Maxmin221Result maxmin_rate_221(const MimoSpec& spec) {
  spec.validate();
  require(spec.m() == 2, "maxmin_rate_221: M must be 2");
  const double nu1 = spec.nu[0], nu2 = spec.nu[1];
  const double gamma = spec.gamma, lambda = spec.lambda;

  auto rate_vs_e1 = [&](double g1) {
    return half_log2(1.0 + g1 / (nu1 + lambda)) +
           half_log2(1.0 + (gamma - g1) / nu2);
  };

  Eigen::VectorXd tau(2);
  tau << nu1 + lambda, nu2;
  const double split = waterfill(tau, gamma).powers[0];

  Maxmin221Result out;
  out.gamma_split = split;

  // Balanced-response root: the allocation where the two elementary jam
  // responses coincide.  q(0) < 0 < q(gamma) always, so a root exists.
  auto q = [&](double b) {
    return (nu1 - nu2) * b * b +
           b * (nu2 * gamma + nu2 * (nu2 + lambda) + nu1 * (nu1 + lambda) -
                nu1 * gamma) -
           nu1 * gamma * (nu1 + lambda);
  };
  double beta;
  if (gamma == 0.0) {
    beta = 0.0;
  } else {
    if (!(q(0.0) <= 0.0 && q(gamma) >= 0.0))
      throw NumericError("maxmin_rate_221: beta root bracket failed");
    double lo = 0.0, hi = gamma;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, gamma); ++it) {
      const double mid = 0.5 * (lo + hi);
      (q(mid) < 0.0 ? lo : hi) = mid;
    }
    beta = 0.5 * (lo + hi);
  }
  out.beta = beta;

  if (nu1 + lambda <= nu2) {
    out.kase = 1;
    out.is_capacity = true;
    out.rate = rate_vs_e1(split);
    out.alloc << split, gamma - split;
    return out;
  }
  if (gamma > nu1 + lambda - nu2 && split > beta) {
    out.kase = 2;
    out.is_capacity = true;
    out.rate = rate_vs_e1(split);
    out.alloc << split, gamma - split;
    return out;
  }
  out.kase = 3;
  out.is_capacity = false;
  out.rate = rate_vs_e1(beta);
  out.alloc << beta, gamma - beta;
  return out;
}

Asymptotic221 asymptotic_rate_221(const MimoSpec& spec) {
  spec.validate();
  require(spec.m() == 2, "asymptotic_rate_221: M must be 2");
  const double denom = spec.nu[0] + spec.nu[1];
  Asymptotic221 out;
  out.rate = half_log2(1.0 + spec.gamma / denom);
  out.alloc << spec.gamma * spec.nu[0] / denom, spec.gamma * spec.nu[1] / denom;
  return out;
}

GeneralMaxminResult maxmin_solver_general(const MimoSpec& spec, double tol) {
  spec.validate();
  require(tol > 0.0, "maxmin_solver_general: tol must be > 0");
  const int m = spec.m();
  const Eigen::VectorXd& nu = spec.nu;
  const double gamma = spec.gamma, lambda = spec.lambda;

  auto fmin = [&](const Eigen::VectorXd& p) {
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) worst = std::min(worst, elementary_rate(p, nu, lambda, i));
    return worst;
  };
  auto arg_worst = [&](const Eigen::VectorXd& p) {
    int idx = 0;
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      const double v = elementary_rate(p, nu, lambda, i);
      if (v < worst) {
        worst = v;
        idx = i;
      }
    }
    return idx;
  };

  GeneralMaxminResult out;
  if (gamma == 0.0) {
    out.alloc = Eigen::VectorXd::Zero(m);
    out.rate = 0.0;
    return out;
  }

  // Start from the better of waterfilling against nu and against nu + lambda.
  Eigen::VectorXd p = waterfill(nu, gamma).powers;
  {
    Eigen::VectorXd alt = waterfill(nu.array() + lambda, gamma).powers;
    if (fmin(alt) > fmin(p)) p = alt;
    Eigen::VectorXd uni = Eigen::VectorXd::Constant(m, gamma / m);
    if (fmin(uni) > fmin(p)) p = uni;
  }

  // Phase 1: projected subgradient ascent (min of concave pieces is concave).
  Eigen::VectorXd best_p = p;
  double best_f = fmin(p);
  const int iters = 4000;
  for (int k = 0; k < iters; ++k) {
    const int w = arg_worst(p);
    Eigen::VectorXd grad(m);
    for (int i = 0; i < m; ++i) {
      const double eff = (i == w) ? nu[i] + lambda : nu[i];
      grad[i] = kLn2Inv2 / (p[i] + eff);
    }
    p = project_simplex(p + (gamma / 8.0 / std::sqrt(k + 1.0)) * grad, gamma);
    const double f = fmin(p);
    if (f > best_f) {
      best_f = f;
      best_p = p;
    }
  }
  out.subgradient_iters = iters;
  p = best_p;

  // Phase 2: pairwise golden-section exchanges (1-D slices of a concave
  // function, so each line search is exact).
  for (int pass = 0; pass < 200; ++pass) {
    double gain = 0.0;
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        auto slice = [&](double t) {
          Eigen::VectorXd q = p;
          q[i] += t;
          q[j] -= t;
          return fmin(q);
        };
        auto [t, f] = detail::golden_max(slice, -p[i], p[j], 1e-13);
        if (f > best_f) {
          gain += f - best_f;
          best_f = f;
          p[i] += t;
          p[j] -= t;
        }
      }
    }
    if (gain < tol * 1e-3) break;
  }

  out.alloc = p;
  out.rate = best_f;
  out.active_jam_index = arg_worst(p);
  return out;
}

}  // namespace gavc::mimo
