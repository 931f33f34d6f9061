#include "gavc/geometry.hpp"

#include <Eigen/QR>

#include "gavc/common.hpp"

namespace gavc::core {

Eigen::VectorXd sample_sphere(int n, double radius, SeededRng& rng) {
  require(n >= 1, "sample_sphere: n must be >= 1");
  require(radius >= 0.0, "sample_sphere: radius must be >= 0");
  if (radius == 0.0) return Eigen::VectorXd::Zero(n);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Eigen::VectorXd v = rng.gaussian_vector(n);
    const double nrm = v.norm();
    if (nrm > 0.0) return (radius / nrm) * v;
  }
  throw NumericError("sample_sphere: repeated zero-norm draws");
}

Eigen::MatrixXd haar_rotation(int n, SeededRng& rng) {
  require(n >= 1, "haar_rotation: n must be >= 1");
  for (int attempt = 0; attempt < 8; ++attempt) {
    Eigen::MatrixXd z = rng.gaussian_matrix(n, n);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    bool degenerate = false;
    for (int i = 0; i < n; ++i)
      if (std::abs(r(i, i)) < 1e-12) degenerate = true;
    if (degenerate) continue;  // rank-deficient draw, resample
    Eigen::MatrixXd q = qr.householderQ();
    // Multiply column j by sign(r_jj): makes the factorization unique and the
    // resulting Q exactly Haar.
    for (int j = 0; j < n; ++j)
      if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    if (orthogonality_defect(q) > 1e-10)
      throw NumericError("haar_rotation: orthogonality defect above 1e-10");
    return q;
  }
  throw NumericError("haar_rotation: repeated degenerate draws");
}

Eigen::VectorXd awgn(int n, double variance, SeededRng& rng) {
  require(n >= 1, "awgn: n must be >= 1");
  require(variance >= 0.0, "awgn: variance must be >= 0");
  if (variance == 0.0) return Eigen::VectorXd::Zero(n);
  return rng.gaussian_vector(n, variance);
}

double orthogonality_defect(const Eigen::MatrixXd& u) {
  const int n = static_cast<int>(u.cols());
  Eigen::MatrixXd d = u.transpose() * u - Eigen::MatrixXd::Identity(n, n);
  return d.cwiseAbs().maxCoeff();
}

}  // namespace gavc::core
