#pragma once

#include <cmath>
#include <utility>

namespace gavc::detail {

// Golden-section maximization of f on [lo, hi].  Exact for concave slices,
// local polish otherwise.  Returns (argmax, max).
template <typename F>
std::pair<double, double> golden_max(F&& f, double lo, double hi,
                                     double xtol = 1e-12, int max_iter = 200) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  const double xm = 0.5 * (a + b);
  const double fm = f(xm);
  if (fm >= f1 && fm >= f2) return {xm, fm};
  return (f1 >= f2) ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

}  // namespace gavc::detail
