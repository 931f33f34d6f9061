#pragma once

#include <Eigen/Core>

#include "gavc/rng.hpp"

namespace gavc::core {

// Uniform point on the sphere of the given radius in R^n.  The norm is exact
// up to normalization roundoff (<= 1e-12 relative).  radius = 0 gives the
// zero vector; a (measure-zero) zero-norm Gaussian draw is resampled.
Eigen::VectorXd sample_sphere(int n, double radius, SeededRng& rng);

// Haar-distributed random orthogonal n x n matrix: QR of an iid Gaussian
// matrix with the R-diagonal sign correction (without it the QR convention
// biases the distribution).  Orthogonality defect is checked to 1e-10.
Eigen::MatrixXd haar_rotation(int n, SeededRng& rng);

// iid N(0, variance) vector; variance = 0 gives zeros, negative throws.
Eigen::VectorXd awgn(int n, double variance, SeededRng& rng);

// max |U^T U - I|, used by invariant checks.
double orthogonality_defect(const Eigen::MatrixXd& u);

}  // namespace gavc::core
