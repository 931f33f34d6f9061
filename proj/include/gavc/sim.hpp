#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "gavc/codebook.hpp"
#include "gavc/rates.hpp"

namespace gavc::sim {

// Jamming strategies.  All of them know the codebook (the code is public) but
// never the key; every emitted vector obeys ||s||^2 <= n*lambda + 1e-9.
enum class JammerKind {
  None,
  GaussianNoise,       // iid N(0, lambda), rescaled down on the rare over-power draw
  FixedVector,         // caller-supplied vector, validated against lambda
  SphereUniform,       // uniform on the radius-sqrt(n*lambda) sphere
  SymmetrizeCodeword,  // uniformly chosen codeword rescaled to full jam power
  OrthogonalNoise,     // sphere-uniform in the orthogonal complement of the code span
};

struct JammerStrategy {
  JammerKind kind = JammerKind::None;
  double lambda = 0.0;
  Eigen::VectorXd fixed;

  static JammerStrategy none();
  static JammerStrategy gaussian(double lambda);
  static JammerStrategy sphere(double lambda);
  static JammerStrategy symmetrize(double lambda);
  static JammerStrategy orthogonal(double lambda);
  // Validates ||s||^2 <= n*lambda + 1e-9 at construction.
  static JammerStrategy fixed_vector(Eigen::VectorXd s, double lambda);
};

Eigen::VectorXd draw_jam(const JammerStrategy& strategy, const core::Codebook& code,
                         core::SeededRng& rng);

// argmin_j || y - U x_j ||, lowest index on ties.
std::int64_t min_distance_decode(const core::Codebook& code,
                                 const Eigen::MatrixXd& rotation,
                                 const Eigen::VectorXd& y);
std::int64_t min_distance_decode(const core::Codebook& code,
                                 const core::RotationKeySet& keys, std::int64_t key,
                                 const Eigen::VectorXd& y);

// Smallest pairwise codeword distance; +inf for a single codeword.
double pairwise_min_distance(const core::Codebook& code);

struct ErrorEstimate {
  std::int64_t trials = 0;
  std::int64_t errors = 0;
  double rate_hat = 0.0;
  double ci_lo = 0.0;  // Wilson 95% interval
  double ci_hi = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

ErrorEstimate make_estimate(std::int64_t trials, std::int64_t errors,
                            std::uint64_t seed, std::uint64_t stream_id);

struct TrialConfig {
  std::int64_t trials = 10000;
  int workers = 1;
  // Trials are partitioned into fixed blocks, one RNG stream per block, so
  // results are a function of (seed, block_size) alone, not worker count.
  std::int64_t block_size = 256;
  // Sweep every message when big_n <= max_sweep_messages, otherwise cycle a
  // deterministic sample of sample_messages messages.
  std::int64_t max_sweep_messages = 1024;
  int sample_messages = 8;
};

struct TrialReport {
  ErrorEstimate average;
  ErrorEstimate worst_message;
  std::int64_t worst_message_index = 0;
  std::vector<std::int64_t> message_ids;
  std::vector<std::int64_t> message_trials;
  std::vector<std::int64_t> message_errors;
  double max_jam_energy_ratio = 0.0;  // max over trials of ||s||^2 / (n*lambda)
};

// Rotated-codebook Monte Carlo.  Per trial: pick the message, draw s (the
// jammer moves before the key is known), draw the key uniformly, add noise,
// decode with the key.
TrialReport run_trials(const core::Codebook& code, const core::RotationKeySet& keys,
                       const JammerStrategy& strategy, double sigma_w2,
                       const TrialConfig& cfg, const core::SeededRng& root);

// Symmetrization attack against a deterministic code (K = 1, identity key):
// the jammer plays a uniformly chosen codeword at the codeword power.
TrialReport symmetrize_attack(const core::Codebook& code, double sigma_w2,
                              std::int64_t trials, const core::SeededRng& root);

// Codebook/key-set construction at a rate fraction of randomized capacity.
// big_n = round(2^(n * rate_frac * C_r)) clamped to [1, 4096] unless
// big_n_override > 0.
struct ScenarioConfig {
  rates::ScalarAvcSpec spec;
  int n = 0;
  double rate_frac = 0.5;
  std::int64_t big_n_override = 0;
  std::int64_t k = 1;
};

struct Scenario {
  core::Codebook codebook;
  core::RotationKeySet keys;
  std::int64_t big_n;
  double realized_rate;  // log2(big_n)/n
};

Scenario make_scenario(const ScenarioConfig& cfg, const core::SeededRng& root);

struct KeySweepRow {
  int n;
  std::int64_t k;
  std::int64_t big_n;
  double realized_rate;
  double avg_error;
  double wilson_hi;
};

// Error-vs-blocklength sweep with K(n) from the schedule rule.
std::vector<KeySweepRow> key_size_sweep(const rates::ScalarAvcSpec& spec,
                                        const std::vector<int>& n_list,
                                        rates::KeyRule rule, double rate_frac,
                                        const JammerStrategy& strategy,
                                        const TrialConfig& cfg,
                                        const core::SeededRng& root);

// Binned auxiliary-codebook encoder for dirty paper coding.  The bin quantizes
// beta*t; the transmitted vector is u - alpha*t.
struct DpcEncoderConfig {
  int n = 0;
  double r_bin = 0.0;  // bits/symbol per bin, 0 <= r_bin <= r_u
  double r_u = 0.0;    // total auxiliary rate
  double alpha = 0.0;
  double rho = 0.0;
  rates::DpcSpec spec{};
  double eps2 = -1.0;  // correlation slack; < 0 selects 0.05*sqrt(gamma*sigma_t2)
};

class DpcEncoder {
 public:
  DpcEncoder(const DpcEncoderConfig& cfg, core::SeededRng& rng);

  std::int64_t num_bins() const { return static_cast<std::int64_t>(bins_.size()); }
  std::int64_t num_aux() const { return aux_.size(); }
  const core::Codebook& aux() const { return aux_; }
  const std::vector<std::int64_t>& bin(std::int64_t b) const { return bins_[b]; }
  double beta() const { return beta_; }
  double eps2() const { return eps2_; }
  // Encoder success needs r_bin at or above this rate:
  // 0.5*log2(p_u / ((1-rho^2)*gamma)).
  double threshold_rate() const;

  struct Encoding {
    Eigen::VectorXd x;
    std::int64_t aux_index;
    bool power_ok;
    bool corr_ok;
    bool success;
  };
  Encoding encode(std::int64_t message, const Eigen::VectorXd& t) const;

 private:
  DpcEncoderConfig cfg_;
  rates::DpcParams params_;
  double beta_;
  double eps2_;
  core::Codebook aux_;
  std::vector<std::vector<std::int64_t>> bins_;
};

// Superposition code for the degraded broadcast GAVC: cloud centers u_i carry
// the weak user's message at power alpha*gamma; satellites v_ij live on an
// (n-1)-sphere rotated per cloud and embedded isometrically into the
// hyperplane orthogonal to u_i.
class SuperpositionCode {
 public:
  SuperpositionCode(int n, std::int64_t n_clouds, std::int64_t n_satellites,
                    double alpha, double gamma, const core::SeededRng& root);

  int n() const { return n_; }
  double alpha() const { return alpha_; }
  double gamma() const { return gamma_; }
  const core::Codebook& clouds() const { return clouds_; }
  const core::Codebook& satellites() const { return satellites_; }
  double total_power() const;  // ||x||^2, message-independent

  Eigen::VectorXd encode(std::int64_t i, std::int64_t j) const;
  std::int64_t decode_cloud(const Eigen::VectorXd& y) const;
  std::int64_t decode_satellite(const Eigen::VectorXd& y, std::int64_t cloud) const;

  Eigen::MatrixXd cloud_rotation(std::int64_t i) const;

 private:
  Eigen::VectorXd householder_apply(std::int64_t cloud, Eigen::VectorXd z) const;
  const Eigen::MatrixXd& rotation_memo(std::int64_t i) const;

  int n_;
  double alpha_, gamma_;
  core::Codebook clouds_;
  core::Codebook satellites_;
  core::RotationKeySet rotations_;
  // Rotation regeneration is ~n^3; memoize a few (not thread-safe by design).
  mutable std::unordered_map<std::int64_t, Eigen::MatrixXd> memo_;
};

struct BroadcastTrialConfig {
  std::int64_t trials = 1000;
  int sample_pairs = 8;
  std::int64_t block_size = 256;
};

struct BroadcastReport {
  ErrorEstimate strong;  // joint (cloud, satellite) decoding at the strong user
  ErrorEstimate weak;    // cloud decoding at the weak user
  double realized_r1 = 0.0;
  double realized_r2 = 0.0;
  double max_jam_energy_ratio = 0.0;
};

BroadcastReport run_broadcast_trials(const SuperpositionCode& code, double sigma1_2,
                                     double sigma2_2, const JammerStrategy& strategy,
                                     const BroadcastTrialConfig& cfg,
                                     const core::SeededRng& root);

}  // namespace gavc::sim
