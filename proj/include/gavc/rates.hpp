#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace gavc::rates {

// Scalar Gaussian AVC: y = x + s + w with ||x||^2 <= n*gamma,
// ||s||^2 <= n*lambda, w ~ N(0, sigma_w2 I).  All rates in bits/symbol.
struct ScalarAvcSpec {
  double gamma;     // transmitter power
  double lambda;    // jammer power
  double sigma_w2;  // ambient noise variance, strictly positive

  void validate() const;
};

// Randomized-code capacity: 0.5*log2(1 + gamma/(lambda + sigma_w2)).
double randomized_capacity(const ScalarAvcSpec& spec);

// Deterministic-code capacity: 0 when gamma <= lambda (symmetrizable),
// otherwise equal to the randomized value.
double deterministic_capacity(const ScalarAvcSpec& spec);

// Degraded two-user broadcast GAVC.  User 1 observes the less noisy channel.
struct BroadcastSpec {
  double gamma;
  double lambda;
  double sigma1_2;  // strong user noise, 0 < sigma1_2 < sigma2_2
  double sigma2_2;  // weak user noise

  void validate() const;
};

struct RateRegionPoint {
  double r1;     // strong user rate, bits
  double r2;     // weak user rate, bits
  double alpha;  // cloud power fraction generating the point
};

struct BroadcastRegion {
  bool empty = false;                       // lambda >= gamma
  std::vector<RateRegionPoint> points;      // one per grid alpha
  // Time-sharing segment on the sum-rate line: from the alpha -> lambda/gamma
  // corner to the all-rate-to-user-1 endpoint (r2 = 0).
  std::array<RateRegionPoint, 2> timeshare{};
  double sum_rate = 0.0;
};

// Strong-user bound at cloud fraction alpha: 0.5*log2(1 + (1-alpha)g/(l+s1)).
double broadcast_r1(const BroadcastSpec& spec, double alpha);
// Weak-user bound: 0.5*log2(1 + alpha*g/((1-alpha)g + l + s2)).
double broadcast_r2(const BroadcastSpec& spec, double alpha);
// Sum-rate bound 0.5*log2(1+(g-l)/(l+s1)) + 0.5*log2(1+l/(g+s2)).
double broadcast_sum_rate(const BroadcastSpec& spec);

// Achievable region over the given alpha grid; every grid point must lie in
// (lambda/gamma, 1].  Returns the empty region when lambda >= gamma.
BroadcastRegion broadcast_region(const BroadcastSpec& spec,
                                 const std::vector<double>& alpha_grid);

// Dirty paper coding over the GAVC: x = u - alpha*t against a known Gaussian
// interference t ~ N(0, sigma_t2 I), jammer power lambda, noise sigma_w2.
struct DpcSpec {
  double gamma;
  double lambda;
  double sigma_t2;
  double sigma_w2;

  void validate() const;
};

// Derived auxiliary powers for a (alpha, rho) operating point.
struct DpcParams {
  double alpha = 0.0;
  double rho = 0.0;             // correlation between u - alpha*t and t
  double p_u = 0.0;             // auxiliary power
  double p_i = 0.0;             // jam + noise power
  double p_y = 0.0;             // received power
  double beta2 = 0.0;           // quantization scaling, valid when p_u > (1-rho^2)gamma
  double received_power = 0.0;  // gamma(alpha, rho), the feasibility functional

  static DpcParams derive(const DpcSpec& spec, double alpha, double rho);
};

struct Feasibility {
  bool feasible;
  double margin;  // received_power - lambda (positive iff feasible)
};

// (alpha, rho) is admissible iff the decoder-side received power functional
// exceeds lambda strictly.
Feasibility dpc_feasible(const DpcSpec& spec, double alpha, double rho);

// Achievable rate at (alpha, rho); may be negative away from good operating
// points, and -inf as |rho| -> 1.
double dpc_rate(const DpcSpec& spec, double alpha, double rho);

// alpha0 = gamma / (gamma + lambda + sigma_w2), the AWGN-optimal scaling.
double dpc_alpha0(const DpcSpec& spec);

// True iff lambda < (gamma + alpha0*sigma_t2)^2 / (gamma + alpha0^2*sigma_t2),
// in which case the no-interference randomized capacity is attainable.
bool dpc_capacity_condition(const DpcSpec& spec);

// 0 when lambda > (sigma_t + sqrt(gamma))^2, else the no-interference
// randomized capacity 0.5*log2(1 + gamma/(lambda + sigma_w2)).
double dpc_outer_bound(const DpcSpec& spec);

// Smallest covertext power making the capacity condition hold with equality
// for the watermarking channel (jammer power lambda = beta*gamma):
// sigma_t2 = gamma*(beta/2*sqrt(5+4*beta) - beta/2 - 1), clamped at zero.
struct WatermarkResult {
  double sigma_t2;
  bool clamped;  // true when the closed form was negative (beta < 1)
};
WatermarkResult watermark_covertext_power(double gamma, double lambda);

// Key size schedules K(n).  Valid rules keep log(K)/n -> 0; Exp2N exists to
// be rejected.
enum class KeyRule { NLogN, NSquared, LinearC, Exp2N };

bool key_rule_valid(KeyRule rule);
// K for the given rule: n*ceil(log2 n), n^2, or ceil(c*n).  Throws
// ParameterError for invalid rules or arguments.
std::int64_t key_size_schedule(int n, KeyRule rule, double c = 1.0);

}  // namespace gavc::rates
