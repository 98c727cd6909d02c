#ifndef DGPDYN_SPECFUN_HPP
#define DGPDYN_SPECFUN_HPP

#include "dgpdyn/errors.hpp"

namespace dgpdyn {

/// Value of a numerically evaluated special function together with an
/// absolute error estimate (same units as value) and the number of series
/// terms or quadrature nodes consumed. Non-finite values are never returned;
/// they raise NumericalError instead.
struct EvalResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  long terms_or_nodes_used = 0;
};

/// ln Gamma(x) for x > 0. Throws std::domain_error for x <= 0.
double ln_gamma(double x);

/// Scaled complementary error function e^{x^2} erfc(x) for x >= 0.
double erfcx(double x);

/// Kummer's confluent hypergeometric function 1F1(a, b, z).
///
/// b must not be zero or a negative integer. z <= 50 (larger arguments are
/// outside the range the recurrence maps produce and fail loudly). Negative z
/// is evaluated through the Kummer transformation
///   1F1(a,b,z) = e^z 1F1(b-a, b, -z)
/// so the series is summed at a nonnegative argument; when b-a is a
/// nonpositive integer the transformed series terminates and is valid for any
/// z, and for z < -500 with a non-terminating series the large-|z| asymptotic
/// expansion is used.
EvalResult kummer_1f1(double a, double b, double z);

/// Moment-generating function of the chi-squared distribution with m degrees
/// of freedom: (1 - 2t)^{-m/2}, t < 1/2.
double chi2_mgf(double t, int m);

/// Moment-generating function of the chi distribution with m degrees of
/// freedom, E[e^{tX}], for t <= 0. Equal to
///   1F1(m/2, 1/2, t^2/2) + t sqrt(2) (Gamma((m+1)/2)/Gamma(m/2))
///     1F1((m+1)/2, 3/2, t^2/2),
/// but evaluated through the half-Gaussian moment integrals
/// I_k(z) = Int_0^inf x^{k-1} e^{-x^2/2 - zx} dx (z = -t), whose three-term
/// recurrence is run backward (Miller) and normalized at
/// I_1 = sqrt(pi/2) erfcx(z/sqrt(2)); the 1F1 form cancels catastrophically
/// once t^2/2 exceeds a few units.
EvalResult chi_mgf(double t, int m);

/// Moment-generating function of the non-central chi-squared distribution
/// with k degrees of freedom and noncentrality lambda >= 0:
///   (1 - 2t)^{-k/2} exp(lambda t / (1 - 2t)), t < 1/2.
/// Reduces exactly to chi2_mgf when lambda = 0.
double noncentral_chi2_mgf(double t, double lambda, int k);

/// E[X^k e^{tX}] for X ~ chi_m, t <= 0, k >= 1, via
///   sqrt(2^k) Gamma((m+k)/2)/Gamma(m/2) M_{chi_{m+k}}(t).
EvalResult chi_weighted_mgf(double t, int m, int k);

}  // namespace dgpdyn

#endif
