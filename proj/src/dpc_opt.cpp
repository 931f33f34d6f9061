#include "gavc/dpc_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gavc/common.hpp"
#include "gavc/detail/golden.hpp"

namespace gavc::dpc {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

OptResult optimize_dpc(const rates::DpcSpec& spec, const OptConfig& cfg) {
  spec.validate();
  require(cfg.alpha_steps >= 2 && cfg.rho_steps >= 2,
          "optimize_dpc: need at least 2 grid steps per axis");
  const double delta = cfg.delta_scale * (spec.lambda + 1.0);
  const double rho_lo = -1.0 + cfg.rho_margin;
  const double rho_hi = 1.0 - cfg.rho_margin;

  // Rate over the delta-shrunken admissible set; -inf outside.
  auto value = [&](double a, double r) {
    rates::DpcParams p = rates::DpcParams::derive(spec, a, r);
    if (!(p.received_power > spec.lambda + delta)) return kNegInf;
    return dpc_rate(spec, a, r);
  };

  const double da = (cfg.alpha_hi - cfg.alpha_lo) / (cfg.alpha_steps - 1);
  const double dr = (rho_hi - rho_lo) / (cfg.rho_steps - 1);

  // Grid sweep keeping a handful of spatially separated top cells: near the
  // feasibility boundary the rate surface splits into basins, and refining
  // only the single best cell can strand the search in the wrong one.
  struct Cell {
    double v = kNegInf, a = 0.0, r = 0.0;
  };
  constexpr int kCandidates = 8;
  Cell top[kCandidates];
  auto offer = [&](double v, double a, double r) {
    if (v == kNegInf) return;
    for (auto& t : top) {  // merge with a nearby candidate if one exists
      if (std::abs(t.a - a) <= 3 * da && std::abs(t.r - r) <= 3 * dr) {
        if (v > t.v) t = Cell{v, a, r};
        return;
      }
    }
    int worst = 0;
    for (int i = 1; i < kCandidates; ++i)
      if (top[i].v < top[worst].v) worst = i;
    if (v > top[worst].v) top[worst] = Cell{v, a, r};
  };
  for (int i = 0; i < cfg.alpha_steps; ++i) {
    const double a = cfg.alpha_lo + i * da;
    for (int j = 0; j < cfg.rho_steps; ++j) {
      const double r = rho_lo + j * dr;
      offer(value(a, r), a, r);
    }
  }

  OptResult out;
  if (top[0].v == kNegInf) {
    out.feasible = false;
    out.best_rate = 0.0;
    return out;
  }

  auto refine = [&](Cell c) {
    // Golden-section coordinate descent, window re-centered on the incumbent.
    for (int pass = 0; pass < 60; ++pass) {
      const double prev = c.v;
      auto [a_new, va] = detail::golden_max(
          [&](double a) { return value(a, c.r); },
          std::max(cfg.alpha_lo, c.a - da), std::min(cfg.alpha_hi, c.a + da));
      if (va > c.v) {
        c.v = va;
        c.a = a_new;
      }
      auto [r_new, vr] = detail::golden_max(
          [&](double r) { return value(c.a, r); },
          std::max(rho_lo, c.r - dr), std::min(rho_hi, c.r + dr));
      if (vr > c.v) {
        c.v = vr;
        c.r = r_new;
      }
      if (c.v - prev < cfg.refine_tol && pass > 0) break;
    }
    // Compass polish catches diagonal ridges the coordinate sweep stalls on.
    double sa = da, sr = dr;
    int budget = 4000;
    while ((sa > 1e-12 || sr > 1e-12) && budget > 0) {
      bool moved = false;
      const double moves[8][2] = {{sa, 0},   {-sa, 0},  {0, sr},   {0, -sr},
                                  {sa, sr},  {sa, -sr}, {-sa, sr}, {-sa, -sr}};
      for (const auto& mv : moves) {
        const double a2 = std::clamp(c.a + mv[0], cfg.alpha_lo, cfg.alpha_hi);
        const double r2 = std::clamp(c.r + mv[1], rho_lo, rho_hi);
        const double v2 = value(a2, r2);
        --budget;
        if (v2 > c.v) {
          c = Cell{v2, a2, r2};
          moved = true;
        }
      }
      if (!moved) {
        sa *= 0.5;
        sr *= 0.5;
      }
    }
    return c;
  };

  Cell best;
  for (const auto& t : top) {
    if (t.v == kNegInf) continue;
    const Cell r = refine(t);
    if (r.v > best.v) best = r;
  }

  out.feasible = true;
  out.best_rate = best.v;
  out.alpha = best.a;
  out.rho = best.r;
  out.params = rates::DpcParams::derive(spec, best.a, best.r);
  return out;
}

double dpc_gamma_threshold(double lambda, double sigma_t2, double sigma_w2,
                           double tol) {
  require(lambda >= 0.0, "dpc_gamma_threshold: lambda must be >= 0");
  require(sigma_t2 >= 0.0, "dpc_gamma_threshold: sigma_t2 must be >= 0");
  require(sigma_w2 > 0.0, "dpc_gamma_threshold: sigma_w2 must be > 0");
  require(tol > 0.0, "dpc_gamma_threshold: tol must be > 0");
  if (lambda == 0.0) return 0.0;   // condition holds for every gamma > 0
  if (sigma_t2 == 0.0) return lambda;  // condition degenerates to gamma > lambda

  auto h = [&](double g) {
    const double a0 = g / (g + lambda + sigma_w2);
    const double num = g + a0 * sigma_t2;
    return num * num / (g + a0 * a0 * sigma_t2) - lambda;
  };

  double lo = lambda * 1e-9;
  if (h(lo) >= 0.0) return lo;  // threshold below numeric resolution
  double hi = lambda;
  if (h(hi) <= 0.0) throw NumericError("dpc_gamma_threshold: bracket sign change missing");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace gavc::dpc
