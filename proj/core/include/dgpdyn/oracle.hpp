#ifndef DGPDYN_ORACLE_HPP
#define DGPDYN_ORACLE_HPP

#include <cstdint>

#include "dgpdyn/quadrature.hpp"
#include "dgpdyn/recurrence.hpp"

namespace dgpdyn {

/// Exact one-step conditional expectation E[2m k(0) - 2m k(sqrt(s) X)] with
/// s = u/m and X ~ chi_m, by adaptive quadrature -- the ground truth each
/// analytic map is tested against. For SM the kernel acts per dimension
/// (the product-across-dimensions construction), so the expectation is
/// [E_{chi_1} k(sqrt(s) x)]^m with k(0) = 1; at m = 1 this is identical to
/// the chi_m form. Returns exactly 0 at u = 0.
EvalResult expected_step(const RecurrenceMap& map, double u,
                         const QuadratureConfig& cfg = {});

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Monte-Carlo cross-check of expected_step: averages the same integrand over
/// n_samples chi_m draws (per-dimension chi_1 draws for SM). Deterministic for
/// a fixed seed; single-stream generation.
McEstimate mc_expected_step(const RecurrenceMap& map, double u, long n_samples,
                            std::uint64_t seed);

}  // namespace dgpdyn

#endif
