#include "gavc/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gavc/common.hpp"

namespace gavc::rates {

void ScalarAvcSpec::validate() const {
  require(gamma >= 0.0, "ScalarAvcSpec: gamma must be >= 0");
  require(lambda >= 0.0, "ScalarAvcSpec: lambda must be >= 0");
  require(sigma_w2 > 0.0, "ScalarAvcSpec: sigma_w2 must be > 0");
}

double randomized_capacity(const ScalarAvcSpec& spec) {
  spec.validate();
  return half_log2(1.0 + spec.gamma / (spec.lambda + spec.sigma_w2));
}

double deterministic_capacity(const ScalarAvcSpec& spec) {
  spec.validate();
  if (spec.gamma <= spec.lambda) return 0.0;
  return randomized_capacity(spec);
}

void BroadcastSpec::validate() const {
  require(gamma >= 0.0, "BroadcastSpec: gamma must be >= 0");
  require(lambda >= 0.0, "BroadcastSpec: lambda must be >= 0");
  require(sigma1_2 > 0.0, "BroadcastSpec: sigma1_2 must be > 0");
  require(sigma1_2 < sigma2_2, "BroadcastSpec: need sigma1_2 < sigma2_2");
}

double broadcast_r1(const BroadcastSpec& spec, double alpha) {
  spec.validate();
  return half_log2(1.0 + (1.0 - alpha) * spec.gamma / (spec.lambda + spec.sigma1_2));
}

double broadcast_r2(const BroadcastSpec& spec, double alpha) {
  spec.validate();
  return half_log2(1.0 + alpha * spec.gamma /
                             ((1.0 - alpha) * spec.gamma + spec.lambda + spec.sigma2_2));
}

double broadcast_sum_rate(const BroadcastSpec& spec) {
  spec.validate();
  return half_log2(1.0 + (spec.gamma - spec.lambda) / (spec.lambda + spec.sigma1_2)) +
         half_log2(1.0 + spec.lambda / (spec.gamma + spec.sigma2_2));
}

BroadcastRegion broadcast_region(const BroadcastSpec& spec,
                                 const std::vector<double>& alpha_grid) {
  spec.validate();
  BroadcastRegion region;
  if (spec.lambda >= spec.gamma) {
    region.empty = true;
    return region;
  }
  const double alpha_min = spec.lambda / spec.gamma;
  region.points.reserve(alpha_grid.size());
  for (double a : alpha_grid) {
    require(a > alpha_min && a <= 1.0,
            "broadcast_region: alpha grid must lie in (lambda/gamma, 1]");
    region.points.push_back({broadcast_r1(spec, a), broadcast_r2(spec, a), a});
  }
  // Sum-rate corner at alpha -> lambda/gamma, plus rate splitting that hands
  // the weak user's rate to the strong user.
  const double s1 = broadcast_r1(spec, alpha_min);
  const double s2 = broadcast_r2(spec, alpha_min);
  region.sum_rate = broadcast_sum_rate(spec);
  region.timeshare[0] = {s1, s2, alpha_min};
  region.timeshare[1] = {s1 + s2, 0.0, alpha_min};
  return region;
}

void DpcSpec::validate() const {
  require(gamma > 0.0, "DpcSpec: gamma must be > 0");
  require(lambda >= 0.0, "DpcSpec: lambda must be >= 0");
  require(sigma_t2 >= 0.0, "DpcSpec: sigma_t2 must be >= 0");
  require(sigma_w2 > 0.0, "DpcSpec: sigma_w2 must be > 0");
}

DpcParams DpcParams::derive(const DpcSpec& spec, double alpha, double rho) {
  spec.validate();
  require(rho >= -1.0 && rho <= 1.0, "DpcParams: rho must lie in [-1, 1]");
  DpcParams p;
  p.alpha = alpha;
  p.rho = rho;
  const double gst = std::sqrt(spec.gamma * spec.sigma_t2);
  p.p_u = spec.gamma + 2.0 * rho * alpha * gst + alpha * alpha * spec.sigma_t2;
  p.p_i = spec.lambda + spec.sigma_w2;
  p.p_y = spec.gamma + 2.0 * rho * gst + spec.sigma_t2 + spec.lambda + spec.sigma_w2;
  const double resid = p.p_u - (1.0 - rho * rho) * spec.gamma;
  if (spec.sigma_t2 > 0.0 && resid > 0.0)
    p.beta2 = (p.p_u / spec.sigma_t2) * (1.0 + (1.0 - rho * rho) * spec.gamma / resid);
  else
    p.beta2 = std::numeric_limits<double>::quiet_NaN();
  const double num = spec.gamma + (1.0 + alpha) * rho * gst + alpha * spec.sigma_t2;
  p.received_power = (p.p_u > 0.0) ? num * num / p.p_u
                                   : std::numeric_limits<double>::quiet_NaN();
  return p;
}

Feasibility dpc_feasible(const DpcSpec& spec, double alpha, double rho) {
  DpcParams p = DpcParams::derive(spec, alpha, rho);
  require(std::isfinite(p.received_power),
          "dpc_feasible: degenerate operating point (p_u = 0)");
  return {p.received_power > spec.lambda, p.received_power - spec.lambda};
}

double dpc_rate(const DpcSpec& spec, double alpha, double rho) {
  DpcParams p = DpcParams::derive(spec, alpha, rho);
  const double r2 = 1.0 - rho * rho;
  const double num = r2 * spec.gamma * p.p_y;
  const double den =
      (1.0 - alpha) * (1.0 - alpha) * r2 * spec.gamma * spec.sigma_t2 + p.p_i * p.p_u;
  if (num <= 0.0) return -std::numeric_limits<double>::infinity();
  return half_log2(num / den);
}

double dpc_alpha0(const DpcSpec& spec) {
  spec.validate();
  return spec.gamma / (spec.gamma + spec.lambda + spec.sigma_w2);
}

bool dpc_capacity_condition(const DpcSpec& spec) {
  const double a0 = dpc_alpha0(spec);
  const double num = spec.gamma + a0 * spec.sigma_t2;
  const double den = spec.gamma + a0 * a0 * spec.sigma_t2;
  return spec.lambda < num * num / den;
}

double dpc_outer_bound(const DpcSpec& spec) {
  spec.validate();
  const double reach = std::sqrt(spec.sigma_t2) + std::sqrt(spec.gamma);
  if (spec.lambda > reach * reach) return 0.0;
  return half_log2(1.0 + spec.gamma / (spec.lambda + spec.sigma_w2));
}

WatermarkResult watermark_covertext_power(double gamma, double lambda) {
  require(gamma > 0.0, "watermark_covertext_power: gamma must be > 0");
  require(lambda >= 0.0, "watermark_covertext_power: lambda must be >= 0");
  const double beta = lambda / gamma;
  const double value =
      gamma * (0.5 * beta * std::sqrt(5.0 + 4.0 * beta) - 0.5 * beta - 1.0);
  if (value < 0.0) return {0.0, true};
  return {value, false};
}

bool key_rule_valid(KeyRule rule) { return rule != KeyRule::Exp2N; }

std::int64_t key_size_schedule(int n, KeyRule rule, double c) {
  require(n >= 2, "key_size_schedule: n must be >= 2");
  switch (rule) {
    case KeyRule::NLogN: {
      const auto bits = static_cast<std::int64_t>(std::ceil(std::log2(double(n))));
      return static_cast<std::int64_t>(n) * bits;
    }
    case KeyRule::NSquared:
      return static_cast<std::int64_t>(n) * n;
    case KeyRule::LinearC:
      require(c > 0.0, "key_size_schedule: c must be > 0");
      return static_cast<std::int64_t>(std::ceil(c * n));
    case KeyRule::Exp2N:
      throw ParameterError(
          "key_size_schedule: rule K=2^n violates log(K)/n -> 0 (schedule-invalid)");
  }
  throw ParameterError("key_size_schedule: unknown rule");
}

}  // namespace gavc::rates
