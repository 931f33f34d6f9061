#include "gavc/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include <Eigen/QR>

#include "gavc/common.hpp"
#include "gavc/geometry.hpp"

namespace gavc::sim {

namespace {

constexpr double kZ95 = 1.959963984540054;

// Deterministic sample of `count` distinct indices from [0, bound).
std::vector<std::int64_t> sample_indices(std::int64_t bound, std::int64_t count,
                                         core::SeededRng rng) {
  count = std::min(count, bound);
  std::vector<std::int64_t> ids(count);
  // Floyd's algorithm keeps memory at O(count) even for huge bound.
  std::vector<std::int64_t> seen;
  for (std::int64_t i = bound - count; i < bound; ++i) {
    std::int64_t t = static_cast<std::int64_t>(rng.uniform_index(i + 1));
    if (std::find(seen.begin(), seen.end(), t) != seen.end()) t = i;
    seen.push_back(t);
  }
  std::sort(seen.begin(), seen.end());
  std::copy(seen.begin(), seen.end(), ids.begin());
  return ids;
}

std::int64_t decode_with_rotation(const core::Codebook& code,
                                  const Eigen::MatrixXd* rotation,
                                  const Eigen::VectorXd& y) {
  // || y - U x ||^2 = ||U^T y||^2 - 2 <U^T y, x> + ||x||^2; the first term is
  // message-independent, so score with the exact remaining distance terms.
  Eigen::VectorXd z = rotation ? Eigen::VectorXd(rotation->transpose() * y) : y;
  Eigen::VectorXd scores = code.words() * z;
  std::int64_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::int64_t j = 0; j < code.size(); ++j) {
    const double d = code.norms2()[j] - 2.0 * scores[j];
    if (d < best_d) {  // strict: lowest index wins ties
      best_d = d;
      best = j;
    }
  }
  return best;
}

}  // namespace

JammerStrategy JammerStrategy::none() { return {JammerKind::None, 0.0, {}}; }

JammerStrategy JammerStrategy::gaussian(double lambda) {
  require(lambda >= 0.0, "JammerStrategy: lambda must be >= 0");
  return {JammerKind::GaussianNoise, lambda, {}};
}

JammerStrategy JammerStrategy::sphere(double lambda) {
  require(lambda >= 0.0, "JammerStrategy: lambda must be >= 0");
  return {JammerKind::SphereUniform, lambda, {}};
}

JammerStrategy JammerStrategy::symmetrize(double lambda) {
  require(lambda >= 0.0, "JammerStrategy: lambda must be >= 0");
  return {JammerKind::SymmetrizeCodeword, lambda, {}};
}

JammerStrategy JammerStrategy::orthogonal(double lambda) {
  require(lambda >= 0.0, "JammerStrategy: lambda must be >= 0");
  return {JammerKind::OrthogonalNoise, lambda, {}};
}

JammerStrategy JammerStrategy::fixed_vector(Eigen::VectorXd s, double lambda) {
  require(lambda >= 0.0, "JammerStrategy: lambda must be >= 0");
  const double bound = lambda * static_cast<double>(s.size());
  require(s.squaredNorm() <= bound + 1e-9,
          "JammerStrategy: fixed vector exceeds the jam power constraint");
  return {JammerKind::FixedVector, lambda, std::move(s)};
}

Eigen::VectorXd draw_jam(const JammerStrategy& strategy, const core::Codebook& code,
                         core::SeededRng& rng) {
  const int n = code.n();
  const double budget = strategy.lambda * n;
  switch (strategy.kind) {
    case JammerKind::None:
      return Eigen::VectorXd::Zero(n);
    case JammerKind::GaussianNoise: {
      Eigen::VectorXd s = rng.gaussian_vector(n, strategy.lambda);
      const double e = s.squaredNorm();
      if (e > budget) s *= std::sqrt(budget / e);  // hard power constraint
      return s;
    }
    case JammerKind::FixedVector:
      require(strategy.fixed.size() == n, "draw_jam: fixed vector length mismatch");
      return strategy.fixed;
    case JammerKind::SphereUniform:
      return core::sample_sphere(n, std::sqrt(budget), rng);
    case JammerKind::SymmetrizeCodeword: {
      const std::int64_t i = static_cast<std::int64_t>(rng.uniform_index(code.size()));
      Eigen::VectorXd s = code.word(i);
      const double nrm = s.norm();
      if (nrm == 0.0) return Eigen::VectorXd::Zero(n);
      return s * (std::sqrt(budget) / nrm);
    }
    case JammerKind::OrthogonalNoise: {
      require(code.size() < n,
              "draw_jam: orthogonal complement of the code span is empty");
      // Orthonormalize the code span once per draw; intended for small N.
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(code.words().transpose());
      Eigen::MatrixXd q = qr.householderQ() *
                          Eigen::MatrixXd::Identity(n, code.size());
      for (int attempt = 0; attempt < 64; ++attempt) {
        Eigen::VectorXd g = rng.gaussian_vector(n);
        g -= q * (q.transpose() * g);
        const double nrm = g.norm();
        if (nrm > 1e-12) return g * (std::sqrt(budget) / nrm);
      }
      throw NumericError("draw_jam: failed to sample the orthogonal complement");
    }
  }
  throw ParameterError("draw_jam: unknown jammer kind");
}

std::int64_t min_distance_decode(const core::Codebook& code,
                                 const Eigen::MatrixXd& rotation,
                                 const Eigen::VectorXd& y) {
  require(rotation.rows() == code.n() && rotation.cols() == code.n(),
          "min_distance_decode: rotation shape mismatch");
  require(y.size() == code.n(), "min_distance_decode: received vector length mismatch");
  return decode_with_rotation(code, &rotation, y);
}

std::int64_t min_distance_decode(const core::Codebook& code,
                                 const core::RotationKeySet& keys, std::int64_t key,
                                 const Eigen::VectorXd& y) {
  require(keys.n() == code.n(), "min_distance_decode: key set dimension mismatch");
  if (keys.cached()) return decode_with_rotation(code, &keys.matrix_ref(key), y);
  const Eigen::MatrixXd u = keys.matrix(key);
  return decode_with_rotation(code, &u, y);
}

double pairwise_min_distance(const core::Codebook& code) {
  if (code.size() < 2) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i + 1 < code.size(); ++i) {
    const auto rest = code.words().bottomRows(code.size() - i - 1);
    Eigen::VectorXd scores = rest * code.words().row(i).transpose();
    for (std::int64_t j = 0; j < scores.size(); ++j) {
      const double d2 =
          code.norms2()[i] + code.norms2()[i + 1 + j] - 2.0 * scores[j];
      best = std::min(best, std::max(0.0, d2));
    }
  }
  return std::sqrt(best);
}

ErrorEstimate make_estimate(std::int64_t trials, std::int64_t errors,
                            std::uint64_t seed, std::uint64_t stream_id) {
  ErrorEstimate e;
  e.trials = trials;
  e.errors = errors;
  e.seed = seed;
  e.stream_id = stream_id;
  if (trials <= 0) {
    e.ci_hi = 1.0;
    return e;
  }
  const double p = static_cast<double>(errors) / trials;
  e.rate_hat = p;
  const double z2 = kZ95 * kZ95;
  const double den = 1.0 + z2 / trials;
  const double center = (p + z2 / (2.0 * trials)) / den;
  const double half =
      kZ95 * std::sqrt(p * (1.0 - p) / trials + z2 / (4.0 * trials * trials)) / den;
  e.ci_lo = std::max(0.0, center - half);
  e.ci_hi = std::min(1.0, center + half);
  // The score interval touches the boundary exactly at the extremes; don't
  // let roundoff leave residual dust there.
  if (errors == 0) e.ci_lo = 0.0;
  if (errors >= trials) e.ci_hi = 1.0;
  return e;
}

TrialReport run_trials(const core::Codebook& code, const core::RotationKeySet& keys,
                       const JammerStrategy& strategy, double sigma_w2,
                       const TrialConfig& cfg, const core::SeededRng& root) {
  require(cfg.trials >= 1, "run_trials: trials must be >= 1");
  require(cfg.workers >= 1, "run_trials: workers must be >= 1");
  require(cfg.block_size >= 1, "run_trials: block_size must be >= 1");
  require(cfg.sample_messages >= 1, "run_trials: sample_messages must be >= 1");
  require(sigma_w2 >= 0.0, "run_trials: sigma_w2 must be >= 0");
  require(keys.n() == code.n(), "run_trials: key set dimension mismatch");
  if (strategy.kind == JammerKind::FixedVector)
    require(strategy.fixed.size() == code.n(), "run_trials: fixed jam length mismatch");

  const std::int64_t big_n = code.size();
  std::vector<std::int64_t> ids;
  if (big_n <= cfg.max_sweep_messages) {
    ids.resize(big_n);
    for (std::int64_t i = 0; i < big_n; ++i) ids[i] = i;
  } else {
    ids = sample_indices(big_n, cfg.sample_messages,
                         root.substream(0x4d455353ULL));
  }
  const std::int64_t slots = static_cast<std::int64_t>(ids.size());
  const std::int64_t blocks = (cfg.trials + cfg.block_size - 1) / cfg.block_size;

  std::vector<std::vector<std::int32_t>> block_errors(blocks),
      block_counts(blocks);
  std::vector<double> block_ratio(blocks, 0.0);

  std::atomic<std::int64_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::int64_t b = next.fetch_add(1);
      if (b >= blocks) return;
      core::SeededRng rng = root.substream(static_cast<std::uint64_t>(b));
      std::vector<std::int32_t> errs(slots, 0), cnts(slots, 0);
      double ratio = 0.0;
      const std::int64_t t0 = b * cfg.block_size;
      const std::int64_t t1 = std::min(cfg.trials, t0 + cfg.block_size);
      for (std::int64_t t = t0; t < t1; ++t) {
        const std::int64_t slot = t % slots;
        const std::int64_t msg = ids[slot];
        // Order matters for the model: the jammer commits to s before the key
        // is drawn.
        const Eigen::VectorXd s = draw_jam(strategy, code, rng);
        const std::int64_t k =
            static_cast<std::int64_t>(rng.uniform_index(keys.size()));
        const Eigen::VectorXd w = core::awgn(code.n(), sigma_w2, rng);
        if (strategy.lambda > 0.0)
          ratio = std::max(ratio, s.squaredNorm() / (strategy.lambda * code.n()));
        std::int64_t dec;
        if (keys.cached()) {
          const Eigen::MatrixXd& u = keys.matrix_ref(k);
          const Eigen::VectorXd y = u * code.word(msg) + s + w;
          dec = decode_with_rotation(code, &u, y);
        } else {
          const Eigen::MatrixXd u = keys.matrix(k);
          const Eigen::VectorXd y = u * code.word(msg) + s + w;
          dec = decode_with_rotation(code, &u, y);
        }
        ++cnts[slot];
        if (dec != msg) ++errs[slot];
      }
      block_errors[b] = std::move(errs);
      block_counts[b] = std::move(cnts);
      block_ratio[b] = ratio;
    }
  };

  const int nthreads = static_cast<int>(
      std::min<std::int64_t>(cfg.workers, blocks));
  if (nthreads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  TrialReport report;
  report.message_ids = ids;
  report.message_trials.assign(slots, 0);
  report.message_errors.assign(slots, 0);
  for (std::int64_t b = 0; b < blocks; ++b) {
    for (std::int64_t s = 0; s < slots; ++s) {
      report.message_trials[s] += block_counts[b][s];
      report.message_errors[s] += block_errors[b][s];
    }
    report.max_jam_energy_ratio = std::max(report.max_jam_energy_ratio, block_ratio[b]);
  }

  std::int64_t total_err = 0;
  for (std::int64_t s = 0; s < slots; ++s) total_err += report.message_errors[s];
  report.average =
      make_estimate(cfg.trials, total_err, root.seed(), root.stream_id());

  std::int64_t worst = 0;
  double worst_rate = -1.0;
  for (std::int64_t s = 0; s < slots; ++s) {
    if (report.message_trials[s] == 0) continue;
    const double r = static_cast<double>(report.message_errors[s]) /
                     report.message_trials[s];
    if (r > worst_rate) {
      worst_rate = r;
      worst = s;
    }
  }
  report.worst_message_index = ids[worst];
  report.worst_message = make_estimate(report.message_trials[worst],
                                       report.message_errors[worst], root.seed(),
                                       root.stream_id());
  return report;
}

TrialReport symmetrize_attack(const core::Codebook& code, double sigma_w2,
                              std::int64_t trials, const core::SeededRng& root) {
  // Deterministic code: a single identity key, so the jammer's codeword play
  // symmetrizes the channel.
  core::RotationKeySet keys =
      core::RotationKeySet::haar(code.n(), 1, root.substream(0x53594dULL));
  TrialConfig cfg;
  cfg.trials = trials;
  return run_trials(code, keys, JammerStrategy::symmetrize(code.power()), sigma_w2,
                    cfg, root);
}

Scenario make_scenario(const ScenarioConfig& cfg, const core::SeededRng& root) {
  cfg.spec.validate();
  require(cfg.n >= 1, "make_scenario: n must be >= 1");
  require(cfg.k >= 1, "make_scenario: k must be >= 1");
  std::int64_t big_n = cfg.big_n_override;
  if (big_n <= 0) {
    require(cfg.rate_frac > 0.0 && cfg.rate_frac <= 1.0,
            "make_scenario: rate_frac must lie in (0, 1]");
    const double cr = rates::randomized_capacity(cfg.spec);
    const double exponent = cfg.n * cfg.rate_frac * cr;
    big_n = exponent > 13.0
                ? 4096
                : std::min<std::int64_t>(
                      4096, std::max<std::int64_t>(
                                1, std::llround(std::exp2(exponent))));
  }
  core::SeededRng code_rng = root.substream(0xc0deULL);
  Scenario scen{
      core::Codebook::random_sphere(cfg.n, big_n, cfg.spec.gamma, code_rng),
      core::RotationKeySet::haar(cfg.n, cfg.k, root.substream(0x4b4559ULL)), big_n,
      std::log2(static_cast<double>(big_n)) / cfg.n};
  return scen;
}

std::vector<KeySweepRow> key_size_sweep(const rates::ScalarAvcSpec& spec,
                                        const std::vector<int>& n_list,
                                        rates::KeyRule rule, double rate_frac,
                                        const JammerStrategy& strategy,
                                        const TrialConfig& cfg,
                                        const core::SeededRng& root) {
  require(!n_list.empty(), "key_size_sweep: empty n list");
  std::vector<KeySweepRow> rows;
  rows.reserve(n_list.size());
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const int n = n_list[i];
    const std::int64_t k = rates::key_size_schedule(n, rule);
    ScenarioConfig sc{spec, n, rate_frac, 0, k};
    core::SeededRng sub = root.substream(0x5357ULL + i);
    Scenario scen = make_scenario(sc, sub);
    TrialReport rep =
        run_trials(scen.codebook, scen.keys, strategy, spec.sigma_w2, cfg, sub);
    rows.push_back({n, k, scen.big_n, scen.realized_rate, rep.average.rate_hat,
                    rep.average.ci_hi});
  }
  return rows;
}

double DpcEncoder::threshold_rate() const {
  return half_log2(params_.p_u / ((1.0 - cfg_.rho * cfg_.rho) * cfg_.spec.gamma));
}

DpcEncoder::DpcEncoder(const DpcEncoderConfig& cfg, core::SeededRng& rng)
    : cfg_(cfg),
      params_(rates::DpcParams::derive(cfg.spec, cfg.alpha, cfg.rho)),
      beta_(0.0),
      eps2_(cfg.eps2),
      aux_(core::Codebook(Eigen::MatrixXd::Zero(1, 1), 0.0)) {
  require(cfg_.n >= 1, "DpcEncoder: n must be >= 1");
  require(cfg_.r_bin >= 0.0 && cfg_.r_bin <= cfg_.r_u,
          "DpcEncoder: need 0 <= r_bin <= r_u");
  require(params_.p_u > 0.0, "DpcEncoder: degenerate operating point (p_u = 0)");
  if (cfg_.spec.sigma_t2 > 0.0) {
    require(std::isfinite(params_.beta2) && params_.beta2 > 0.0,
            "DpcEncoder: quantization scaling undefined (p_u <= (1-rho^2)*gamma)");
    beta_ = std::sqrt(params_.beta2);
  }
  if (eps2_ < 0.0)
    eps2_ = 0.05 * std::sqrt(cfg_.spec.gamma * cfg_.spec.sigma_t2);

  const double aux_bits = cfg_.n * cfg_.r_u;
  require(aux_bits <= 25.0, "DpcEncoder: auxiliary codebook too large for desk scale");
  const auto num_aux =
      std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(std::exp2(aux_bits))));
  auto num_bins = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(
             std::ceil(std::exp2(cfg_.n * (cfg_.r_u - cfg_.r_bin)))));
  num_bins = std::min(num_bins, num_aux);

  aux_ = core::Codebook::random_sphere(cfg_.n, num_aux, params_.p_u, rng);

  std::vector<std::int64_t> perm(num_aux);
  for (std::int64_t i = 0; i < num_aux; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng.engine());
  bins_.assign(num_bins, {});
  for (std::int64_t i = 0; i < num_aux; ++i)
    bins_[i % num_bins].push_back(perm[i]);  // sizes equal up to 1
  for (const auto& b : bins_)
    require(!b.empty(), "DpcEncoder: empty bin");
}

DpcEncoder::Encoding DpcEncoder::encode(std::int64_t message,
                                        const Eigen::VectorXd& t) const {
  require(message >= 0, "DpcEncoder: message must be >= 0");
  require(t.size() == cfg_.n, "DpcEncoder: interference length mismatch");
  const auto& bin = bins_[message % num_bins()];
  const Eigen::VectorXd target = beta_ * t;
  std::int64_t best = bin.front();
  double best_d = std::numeric_limits<double>::infinity();
  for (std::int64_t id : bin) {
    const double d = aux_.norms2()[id] - 2.0 * aux_.words().row(id).dot(target);
    if (d < best_d) {
      best_d = d;
      best = id;
    }
  }
  Encoding enc;
  enc.aux_index = best;
  enc.x = aux_.word(best) - cfg_.alpha * t;
  const double gamma_n = cfg_.spec.gamma * cfg_.n;
  enc.power_ok = enc.x.squaredNorm() <= gamma_n + 1e-9 * std::max(1.0, gamma_n);
  enc.corr_ok = enc.x.dot(t) / cfg_.n >=
                cfg_.rho * std::sqrt(cfg_.spec.gamma * cfg_.spec.sigma_t2) - eps2_;
  enc.success = enc.power_ok && enc.corr_ok;
  return enc;
}

SuperpositionCode::SuperpositionCode(int n, std::int64_t n_clouds,
                                     std::int64_t n_satellites, double alpha,
                                     double gamma, const core::SeededRng& root)
    : n_(n),
      alpha_(alpha),
      gamma_(gamma),
      clouds_(core::Codebook(Eigen::MatrixXd::Zero(1, 1), 0.0)),
      satellites_(core::Codebook(Eigen::MatrixXd::Zero(1, 1), 0.0)),
      rotations_(core::RotationKeySet::haar(1, 1, root)) {
  require(n >= 2, "SuperpositionCode: n must be >= 2");
  require(n_clouds >= 1 && n_satellites >= 1,
          "SuperpositionCode: need at least one message per user");
  require(alpha > 0.0 && alpha <= 1.0, "SuperpositionCode: alpha must lie in (0, 1]");
  require(gamma > 0.0, "SuperpositionCode: gamma must be > 0");
  core::SeededRng cloud_rng = root.substream(0x434cULL);
  core::SeededRng sat_rng = root.substream(0x5341ULL);
  clouds_ = core::Codebook::random_sphere(n, n_clouds, alpha * gamma, cloud_rng);
  satellites_ = core::Codebook::random_sphere(n - 1, n_satellites,
                                              (1.0 - alpha) * gamma, sat_rng);
  rotations_ = core::RotationKeySet::haar(n - 1, n_clouds, root.substream(0x524fULL),
                                          /*first_is_identity=*/false);
}

double SuperpositionCode::total_power() const {
  return n_ * alpha_ * gamma_ + (n_ - 1) * (1.0 - alpha_) * gamma_;
}

const Eigen::MatrixXd& SuperpositionCode::rotation_memo(std::int64_t i) const {
  auto it = memo_.find(i);
  if (it != memo_.end()) return it->second;
  if (memo_.size() > 64) memo_.clear();
  return memo_.emplace(i, rotations_.matrix(i)).first->second;
}

Eigen::MatrixXd SuperpositionCode::cloud_rotation(std::int64_t i) const {
  return rotations_.matrix(i);
}

Eigen::VectorXd SuperpositionCode::householder_apply(std::int64_t cloud,
                                                     Eigen::VectorXd z) const {
  // Reflection mapping e_n to the cloud direction; self-inverse, so the same
  // map embeds satellites and strips them at the decoder.
  Eigen::VectorXd hv = -clouds_.word(cloud).normalized();
  hv[n_ - 1] += 1.0;
  const double s2 = hv.squaredNorm();
  if (s2 < 1e-24) return z;  // cloud already along e_n
  z -= hv * (2.0 * hv.dot(z) / s2);
  return z;
}

Eigen::VectorXd SuperpositionCode::encode(std::int64_t i, std::int64_t j) const {
  require(i >= 0 && i < clouds_.size(), "SuperpositionCode: cloud index out of range");
  require(j >= 0 && j < satellites_.size(),
          "SuperpositionCode: satellite index out of range");
  Eigen::VectorXd z(n_);
  z.head(n_ - 1) = rotation_memo(i) * satellites_.word(j);
  z[n_ - 1] = 0.0;
  return clouds_.word(i) + householder_apply(i, std::move(z));
}

std::int64_t SuperpositionCode::decode_cloud(const Eigen::VectorXd& y) const {
  require(y.size() == n_, "SuperpositionCode: received vector length mismatch");
  return decode_with_rotation(clouds_, nullptr, y);
}

std::int64_t SuperpositionCode::decode_satellite(const Eigen::VectorXd& y,
                                                 std::int64_t cloud) const {
  require(y.size() == n_, "SuperpositionCode: received vector length mismatch");
  require(cloud >= 0 && cloud < clouds_.size(),
          "SuperpositionCode: cloud index out of range");
  Eigen::VectorXd z = householder_apply(cloud, y - clouds_.word(cloud));
  Eigen::VectorXd v = rotation_memo(cloud).transpose() * z.head(n_ - 1);
  return decode_with_rotation(satellites_, nullptr, v);
}

BroadcastReport run_broadcast_trials(const SuperpositionCode& code, double sigma1_2,
                                     double sigma2_2, const JammerStrategy& strategy,
                                     const BroadcastTrialConfig& cfg,
                                     const core::SeededRng& root) {
  require(cfg.trials >= 1, "run_broadcast_trials: trials must be >= 1");
  require(cfg.sample_pairs >= 1, "run_broadcast_trials: sample_pairs must be >= 1");
  require(cfg.block_size >= 1, "run_broadcast_trials: block_size must be >= 1");
  require(sigma1_2 > 0.0 && sigma2_2 > 0.0,
          "run_broadcast_trials: noise variances must be > 0");

  const std::int64_t n2 = code.clouds().size();
  const std::int64_t n1 = code.satellites().size();
  // Deterministic sample of message pairs.
  const std::int64_t total_pairs = n1 * n2;
  std::vector<std::int64_t> pair_ids =
      sample_indices(total_pairs, cfg.sample_pairs, root.substream(0x5041ULL));

  const std::int64_t blocks = (cfg.trials + cfg.block_size - 1) / cfg.block_size;
  std::int64_t weak_err = 0, strong_err = 0;
  double ratio = 0.0;
  for (std::int64_t b = 0; b < blocks; ++b) {
    core::SeededRng rng = root.substream(static_cast<std::uint64_t>(b));
    const std::int64_t t0 = b * cfg.block_size;
    const std::int64_t t1 = std::min(cfg.trials, t0 + cfg.block_size);
    for (std::int64_t t = t0; t < t1; ++t) {
      const std::int64_t pair = pair_ids[t % pair_ids.size()];
      const std::int64_t i = pair % n2;
      const std::int64_t j = pair / n2;
      const Eigen::VectorXd s = draw_jam(strategy, code.clouds(), rng);
      const Eigen::VectorXd w1 = core::awgn(code.n(), sigma1_2, rng);
      const Eigen::VectorXd w2 = core::awgn(code.n(), sigma2_2, rng);
      if (strategy.lambda > 0.0)
        ratio = std::max(ratio, s.squaredNorm() / (strategy.lambda * code.n()));
      const Eigen::VectorXd x = code.encode(i, j);
      const Eigen::VectorXd y1 = x + s + w1;
      const Eigen::VectorXd y2 = x + s + w2;
      if (code.decode_cloud(y2) != i) ++weak_err;
      const std::int64_t c1 = code.decode_cloud(y1);
      if (c1 != i || code.decode_satellite(y1, c1) != j) ++strong_err;
    }
  }

  BroadcastReport rep;
  rep.weak = make_estimate(cfg.trials, weak_err, root.seed(), root.stream_id());
  rep.strong = make_estimate(cfg.trials, strong_err, root.seed(), root.stream_id());
  rep.realized_r1 = std::log2(static_cast<double>(n1)) / code.n();
  rep.realized_r2 = std::log2(static_cast<double>(n2)) / code.n();
  rep.max_jam_energy_ratio = ratio;
  return rep;
}

}  // namespace gavc::sim
