#include "gavc/codebook.hpp"

#include <cmath>

#include "gavc/common.hpp"
#include "gavc/geometry.hpp"

namespace gavc::core {

Codebook::Codebook(Eigen::MatrixXd words, double power)
    : words_(std::move(words)), power_(power) {
  require(words_.rows() >= 1, "Codebook: need at least one codeword");
  require(words_.cols() >= 1, "Codebook: n must be >= 1");
  require(power_ >= 0.0, "Codebook: power must be >= 0");
  const double target = power_ * static_cast<double>(n());
  norms2_ = words_.rowwise().squaredNorm();
  const double tol = 1e-9 * std::max(1.0, target);
  for (std::int64_t i = 0; i < size(); ++i)
    require(std::abs(norms2_[i] - target) <= tol,
            "Codebook: codeword energy must equal n*power (1e-9 relative)");
}

Codebook Codebook::random_sphere(int n, std::int64_t big_n, double power,
                                 SeededRng& rng) {
  require(n >= 1, "Codebook: n must be >= 1");
  require(big_n >= 1, "Codebook: big_n must be >= 1");
  require(power >= 0.0, "Codebook: power must be >= 0");
  const double radius = std::sqrt(power * n);
  Eigen::MatrixXd words(big_n, n);
  for (std::int64_t i = 0; i < big_n; ++i)
    words.row(i) = sample_sphere(n, radius, rng);
  return Codebook(std::move(words), power);
}

RotationKeySet RotationKeySet::haar(int n, std::int64_t k, const SeededRng& root,
                                    bool first_is_identity,
                                    std::size_t cache_limit_bytes) {
  require(n >= 1, "RotationKeySet: n must be >= 1");
  require(k >= 1, "RotationKeySet: need at least one key");
  RotationKeySet ks;
  ks.n_ = n;
  ks.k_ = k;
  ks.first_is_identity_ = first_is_identity;
  ks.seed_ = root.seed();
  ks.stream_ = root.stream_id();
  const std::size_t bytes =
      static_cast<std::size_t>(k) * static_cast<std::size_t>(n) * n * sizeof(double);
  if (bytes <= cache_limit_bytes) {
    ks.cache_.reserve(k);
    for (std::int64_t i = 0; i < k; ++i) ks.cache_.push_back(ks.generate(i));
  }
  return ks;
}

Eigen::MatrixXd RotationKeySet::generate(std::int64_t idx) const {
  require(idx >= 0 && idx < k_, "RotationKeySet: key index out of range");
  if (first_is_identity_ && idx == 0) return Eigen::MatrixXd::Identity(n_, n_);
  SeededRng rng = SeededRng(seed_, stream_).substream(0x526f74ULL).substream(
      static_cast<std::uint64_t>(idx));
  return haar_rotation(n_, rng);
}

Eigen::MatrixXd RotationKeySet::matrix(std::int64_t idx) const {
  if (cached()) return cache_[idx];
  return generate(idx);
}

const Eigen::MatrixXd& RotationKeySet::matrix_ref(std::int64_t idx) const {
  require(cached(), "RotationKeySet: matrix_ref requires the cached set");
  require(idx >= 0 && idx < k_, "RotationKeySet: key index out of range");
  return cache_[idx];
}

double RotationKeySet::max_orthogonality_defect() const {
  double worst = 0.0;
  for (std::int64_t i = 0; i < k_; ++i)
    worst = std::max(worst, orthogonality_defect(matrix(i)));
  return worst;
}

}  // namespace gavc::core
