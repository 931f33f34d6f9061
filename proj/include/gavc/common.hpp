#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace gavc {

// Parameter violations (bad shapes, negative powers, invalid grids, ...).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Numeric failures: missing sign change in a bracket, determinant cross-check
// mismatch, non-convergence.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested object does not exist (empty rate region, infeasible config).
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& msg) : std::runtime_error(msg) {}
};

// All rates are in bits: 0.5 * log2(1 + snr).
inline double half_log2(double x) { return 0.5 * std::log2(x); }

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw ParameterError(msg);
}

}  // namespace gavc
