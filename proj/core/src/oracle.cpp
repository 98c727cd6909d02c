#include "dgpdyn/oracle.hpp"

#include <cmath>
#include <random>

namespace dgpdyn {

EvalResult expected_step(const RecurrenceMap& map, double u,
                         const QuadratureConfig& cfg) {
  if (!(u >= 0.0) || !std::isfinite(u)) {
    throw std::domain_error("expected_step: requires finite u >= 0");
  }
  if (u == 0.0) return {0.0, 0.0, 0};

  const KernelSpec& spec = map.kernel();
  const double m = map.m();
  const double s = u / m;
  const double sqrt_s = std::sqrt(s);

  if (spec.kind == KernelKind::kSpectralMixture) {
    EvalResult per_dim = chi_density_expectation(
        1, [&](double x) { return kernel_eval(spec, sqrt_s * x); }, cfg);
    const double e = per_dim.value;  // the per-dimension factor, in (0, 1]
    if (!(e > 0.0)) {
      throw NumericalError("expected_step: SM per-dimension expectation not positive",
                           per_dim.terms_or_nodes_used);
    }
    const double v = 2.0 * m * (-std::expm1(m * std::log(e)));
    const double dv_de = 2.0 * m * m * std::pow(e, m - 1.0);
    return {v, dv_de * per_dim.abs_error_estimate, per_dim.terms_or_nodes_used};
  }

  EvalResult ek = chi_density_expectation(
      map.m(), [&](double x) { return kernel_eval(spec, sqrt_s * x); }, cfg);
  const double k0 = kernel_eval(spec, 0.0);
  return {2.0 * m * (k0 - ek.value), 2.0 * m * ek.abs_error_estimate,
          ek.terms_or_nodes_used};
}

McEstimate mc_expected_step(const RecurrenceMap& map, double u, long n_samples,
                            std::uint64_t seed) {
  if (n_samples < 100) {
    throw std::domain_error("mc_expected_step: requires n_samples >= 100");
  }
  if (!(u >= 0.0) || !std::isfinite(u)) {
    throw std::domain_error("mc_expected_step: requires finite u >= 0");
  }
  if (u == 0.0) return {0.0, 0.0};

  const KernelSpec& spec = map.kernel();
  const int m = map.m();
  const double md = m;
  const double s = u / md;
  const double sqrt_s = std::sqrt(s);

  std::mt19937_64 engine(seed);
  double sum = 0.0, sum2 = 0.0;

  if (spec.kind == KernelKind::kSpectralMixture) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (long i = 0; i < n_samples; ++i) {
      double prod = 1.0;
      for (int d = 0; d < m; ++d) {
        prod *= kernel_eval(spec, sqrt_s * std::abs(normal(engine)));
      }
      const double z = 2.0 * md * (1.0 - prod);
      sum += z;
      sum2 += z * z;
    }
  } else {
    const double k0 = kernel_eval(spec, 0.0);
    std::gamma_distribution<double> gamma(0.5 * md, 2.0);  // chi^2_m
    for (long i = 0; i < n_samples; ++i) {
      const double x = std::sqrt(gamma(engine));  // chi_m
      const double z = 2.0 * md * (k0 - kernel_eval(spec, sqrt_s * x));
      sum += z;
      sum2 += z * z;
    }
  }

  const double n = static_cast<double>(n_samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum2 - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n)};
}

}  // namespace dgpdyn
