#ifndef DGPDYN_QUADRATURE_HPP
#define DGPDYN_QUADRATURE_HPP

#include <functional>

#include "dgpdyn/specfun.hpp"

namespace dgpdyn {

struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 200;
  /// 0 = automatic tail cutoff (max(40, mode + 40) on the chi_m axis).
  double cutoff_override = 0.0;
};

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a, b].
/// Throws NumericalError if the subdivision budget is exhausted before the
/// error estimate meets the tolerances.
EvalResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, const QuadratureConfig& cfg = {});

/// E[g(X)] for X ~ chi_m, by adaptive quadrature against the chi density,
/// split at the mode with the tail truncated at max(40, mode + 40).
EvalResult chi_density_expectation(int m, const std::function<double(double)>& g,
                                   const QuadratureConfig& cfg = {});

}  // namespace dgpdyn

#endif
