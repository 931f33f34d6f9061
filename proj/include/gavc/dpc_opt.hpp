#pragma once

#include "gavc/rates.hpp"

namespace gavc::dpc {

// Search configuration for the (alpha, rho) rate maximization.  The admissible
// set is shrunk by delta = delta_scale*(lambda+1) to keep the optimum strictly
// inside; the alpha box [-2, 3] covers every regime at desk scale.
struct OptConfig {
  double alpha_lo = -2.0;
  double alpha_hi = 3.0;
  int alpha_steps = 501;
  int rho_steps = 401;
  double rho_margin = 1e-9;   // grid stays inside (-1, 1)
  double delta_scale = 1e-6;  // admissibility shrink factor
  double refine_tol = 1e-9;   // coordinate-descent stopping tolerance (rate)
};

struct OptResult {
  bool feasible = false;   // admissible grid point found
  double best_rate = 0.0;  // 0 when infeasible; otherwise max of the rate map
  double alpha = 0.0;
  double rho = 0.0;
  rates::DpcParams params;
};

// Grid search over [alpha_lo, alpha_hi] x (-1, 1) restricted to the shrunken
// admissible set, then golden-section coordinate descent around the best grid
// point.  Infeasible specs return {feasible=false, best_rate=0}.
OptResult optimize_dpc(const rates::DpcSpec& spec, const OptConfig& cfg = {});

// Smallest gamma for which the capacity condition holds at (lambda, sigma_t2,
// sigma_w2); bisection to tol.  sigma_t2 = 0 gives lambda exactly; lambda = 0
// gives 0.
double dpc_gamma_threshold(double lambda, double sigma_t2, double sigma_w2,
                           double tol = 1e-9);

}  // namespace gavc::dpc
