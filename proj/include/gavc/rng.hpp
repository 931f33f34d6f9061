#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace gavc::core {

// Reproducible generator addressed by (seed, stream_id).  Runs that fan work
// out across threads give each fixed-size block its own stream id, so results
// depend only on the seed and the block layout, never on the worker count.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed, std::uint64_t stream_id = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Child generator with a stream id derived from (stream_id, tag).  Pure in
  // its inputs: the parent's draw position does not matter.
  SeededRng substream(std::uint64_t tag) const;

  double gaussian();                 // N(0, 1)
  double uniform();                  // [0, 1)
  std::uint64_t uniform_index(std::uint64_t bound);  // uniform over [0, bound)

  Eigen::VectorXd gaussian_vector(int n, double variance = 1.0);
  Eigen::MatrixXd gaussian_matrix(int rows, int cols);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// SplitMix64 finalizer; used to decorrelate (seed, stream) pairs.
std::uint64_t mix64(std::uint64_t x);

}  // namespace gavc::core
