#include "gavc/rng.hpp"

#include "gavc/common.hpp"

namespace gavc::core {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  // Two rounds through the finalizer keep distinct (seed, stream) pairs far
  // apart even when both are small consecutive integers.
  std::uint64_t s0 = mix64(seed);
  std::uint64_t s1 = mix64(s0 ^ mix64(stream_id * 0xd1342543de82ef95ULL + 1));
  engine_.seed(s1);
}

SeededRng SeededRng::substream(std::uint64_t tag) const {
  return SeededRng(seed_, mix64(stream_id_ ^ mix64(tag + 0x517cc1b727220a95ULL)));
}

double SeededRng::gaussian() { return normal_(engine_); }

double SeededRng::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

std::uint64_t SeededRng::uniform_index(std::uint64_t bound) {
  require(bound > 0, "uniform_index: bound must be positive");
  return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
}

Eigen::VectorXd SeededRng::gaussian_vector(int n, double variance) {
  require(n >= 1, "gaussian_vector: n must be >= 1");
  require(variance >= 0.0, "gaussian_vector: variance must be >= 0");
  Eigen::VectorXd v(n);
  const double sd = std::sqrt(variance);
  for (int i = 0; i < n; ++i) v[i] = sd * gaussian();
  return v;
}

Eigen::MatrixXd SeededRng::gaussian_matrix(int rows, int cols) {
  require(rows >= 1 && cols >= 1, "gaussian_matrix: dimensions must be >= 1");
  Eigen::MatrixXd m(rows, cols);
  // Column-major fill so draws match gaussian_vector stacking.
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = gaussian();
  return m;
}

}  // namespace gavc::core
