#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "gavc/rng.hpp"

namespace gavc::core {

// Equal-energy codebook: big_n codewords of length n, each with squared norm
// n * power (checked to 1e-9 relative).  Rows of words() are codewords.
class Codebook {
 public:
  Codebook(Eigen::MatrixXd words, double power);

  // big_n independent uniform draws from the sphere of radius sqrt(n*power).
  static Codebook random_sphere(int n, std::int64_t big_n, double power,
                                SeededRng& rng);

  int n() const { return static_cast<int>(words_.cols()); }
  std::int64_t size() const { return static_cast<std::int64_t>(words_.rows()); }
  double power() const { return power_; }
  const Eigen::MatrixXd& words() const { return words_; }
  Eigen::VectorXd word(std::int64_t i) const { return words_.row(i); }
  // Cached squared row norms (decoder hot path).
  const Eigen::VectorXd& norms2() const { return norms2_; }

 private:
  Eigen::MatrixXd words_;  // big_n x n
  double power_;
  Eigen::VectorXd norms2_;
};

// Shared key set of K orthogonal n x n rotations.  Entry 0 is the identity;
// the rest are iid Haar, derived deterministically from (seed, stream, index)
// so the set never depends on evaluation order.  When the full set fits under
// cache_limit_bytes the matrices are materialized once up front; otherwise
// matrix() regenerates on demand (pure function, thread-safe).
class RotationKeySet {
 public:
  static constexpr std::size_t kDefaultCacheBytes = std::size_t(2) << 30;

  static RotationKeySet haar(int n, std::int64_t k, const SeededRng& root,
                             bool first_is_identity = true,
                             std::size_t cache_limit_bytes = kDefaultCacheBytes);

  int n() const { return n_; }
  std::int64_t size() const { return k_; }
  bool cached() const { return !cache_.empty(); }

  Eigen::MatrixXd matrix(std::int64_t idx) const;
  // O(1) access; valid only when cached().
  const Eigen::MatrixXd& matrix_ref(std::int64_t idx) const;

  // max over keys of the orthogonality defect (invariant helper; materializes
  // every key, intended for desk-scale n).
  double max_orthogonality_defect() const;

 private:
  RotationKeySet() = default;
  Eigen::MatrixXd generate(std::int64_t idx) const;

  int n_ = 0;
  std::int64_t k_ = 0;
  bool first_is_identity_ = true;
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::vector<Eigen::MatrixXd> cache_;
};

}  // namespace gavc::core
