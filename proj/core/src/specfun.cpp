#include "dgpdyn/specfun.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

namespace dgpdyn {

namespace {

constexpr double kSeriesStop = 1e-16;
constexpr long kSeriesBudget = 10000;

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && std::abs(x - std::round(x)) < 1e-12;
}

void require_finite(double v, const char* what, long used) {
  if (!std::isfinite(v)) {
    throw NumericalError(std::string(what) + ": non-finite result", used);
  }
}

/// Ascending series sum_{n>=0} (a)_n/(b)_n z^n/n! for z >= 0 (or any z when
/// (a)_n terminates). Tracks a power-of-e scale so terminating series with
/// huge z stay representable; result = sum * e^{log_offset}.
struct SeriesSum {
  double sum;
  double log_offset;
  double last_term;
  long terms;
};

SeriesSum ascending_series(double a, double b, double z) {
  double sum = 1.0, term = 1.0, log_offset = 0.0;
  long n = 0;
  while (n < kSeriesBudget) {
    ++n;
    term *= (a + n - 1) / ((b + n - 1) * n) * z;
    if (term == 0.0) return {sum, log_offset, 0.0, n};
    sum += term;
    if (std::abs(term) < kSeriesStop * std::abs(sum) && n > 3) {
      return {sum, log_offset, term, n};
    }
    if (std::abs(sum) > 1e250 || std::abs(term) > 1e250) {
      constexpr double kShift = 600.0;
      const double down = std::exp(-kShift);
      sum *= down;
      term *= down;
      log_offset += kShift;
    }
  }
  throw NumericalError("kummer_1f1: series did not converge within budget", n);
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("ln_gamma: requires x > 0");
  return std::lgamma(x);
}

double erfcx(double x) {
  if (x < 0.0) throw std::domain_error("erfcx: requires x >= 0");
  if (x < 12.0) return std::exp(x * x) * std::erfc(x);
  // asymptotic series: (1/(x sqrt(pi))) sum (-1)^n (2n-1)!! / (2x^2)^n
  const double inv2x2 = 1.0 / (2.0 * x * x);
  double s = 1.0, term = 1.0;
  for (int n = 1; n < 24; ++n) {
    term *= -(2 * n - 1) * inv2x2;
    s += term;
    if (std::abs(term) < 1e-17 * s) break;
  }
  return s / (x * std::sqrt(M_PI));
}

EvalResult kummer_1f1(double a, double b, double z) {
  if (is_nonpositive_integer(b)) {
    throw std::domain_error("kummer_1f1: b must not be zero or a negative integer");
  }
  if (z > 50.0) {
    throw std::domain_error("kummer_1f1: z > 50 is outside the supported range");
  }
  if (z == 0.0 || a == 0.0) return {1.0, 0.0, 0};

  if (z > 0.0) {
    SeriesSum s = ascending_series(a, b, z);
    double v = s.sum * std::exp(s.log_offset);
    require_finite(v, "kummer_1f1", s.terms);
    return {v, std::abs(s.last_term) * std::exp(s.log_offset) +
                   std::numeric_limits<double>::epsilon() * std::abs(v),
            s.terms};
  }

  // z < 0: Kummer transformation.
  const double a2 = b - a;
  const double w = -z;
  if (!is_nonpositive_integer(a2) && z < -500.0) {
    // 1F1(a,b,-w) ~ Gamma(b)/Gamma(b-a) w^{-a} sum (a)_n (a-b+1)_n / (n! w^n);
    // the e^{-w} companion term is below 1e-217 here and is dropped.
    double s = 1.0, term = 1.0, last = 0.0;
    long n = 0;
    for (; n < 40; ++n) {
      double next = term * (a + n) * (a - b + 1 + n) / ((n + 1) * w);
      if (std::abs(next) >= std::abs(term)) break;  // past the optimal cut
      term = next;
      s += term;
      last = term;
      if (std::abs(term) < 1e-17 * std::abs(s)) break;
    }
    const double pref = std::tgamma(b) / std::tgamma(a2) * std::pow(w, -a);
    double v = pref * s;
    require_finite(v, "kummer_1f1 (asymptotic)", n);
    return {v, std::abs(pref) * (std::abs(last) + 1e-16 * std::abs(s)), n};
  }
  SeriesSum s = ascending_series(a2, b, w);
  // value = e^{z} * sum * e^{log_offset}
  const double lg = z + s.log_offset;
  double v;
  if (s.sum == 0.0) {
    v = 0.0;
  } else {
    v = (lg < -745.0) ? 0.0
                      : std::copysign(std::exp(lg + std::log(std::abs(s.sum))), s.sum);
  }
  require_finite(v, "kummer_1f1", s.terms);
  return {v, std::abs(v) * 1e-15 + std::abs(s.last_term) * std::exp(std::min(lg, 0.0)),
          s.terms};
}

double chi2_mgf(double t, int m) {
  if (m < 1) throw std::domain_error("chi2_mgf: requires m >= 1");
  if (t >= 0.5) throw std::domain_error("chi2_mgf: requires t < 1/2");
  return std::exp(-0.5 * m * std::log1p(-2.0 * t));
}

double noncentral_chi2_mgf(double t, double lambda, int k) {
  if (k < 1) throw std::domain_error("noncentral_chi2_mgf: requires k >= 1");
  if (lambda < 0.0) throw std::domain_error("noncentral_chi2_mgf: requires lambda >= 0");
  if (t >= 0.5) throw std::domain_error("noncentral_chi2_mgf: requires t < 1/2");
  return std::exp(-0.5 * k * std::log1p(-2.0 * t) + lambda * t / (1.0 - 2.0 * t));
}

namespace {

/// log of I_m(z)/I_1(z) where I_k(z) = Int_0^inf x^{k-1} e^{-x^2/2 - z x} dx,
/// by backward (Miller) recursion on I_{k+1} = (k-1) I_{k-1} - z I_k.
/// I_m is the minimal solution, so downward recursion from trial seeds
/// converges onto it; all downward coefficients are positive (no
/// cancellation). Returns the log-ratio and the chain length used.
std::pair<double, long> log_im_over_i1_miller(double z, int m) {
  const double sqm = std::sqrt(static_cast<double>(m));
  long mstart = static_cast<long>(std::ceil((sqm + 21.0 / z) * (sqm + 21.0 / z))) + m + 10;
  double f_up = 0.0;   // f_{k+1}
  double f = 1.0;      // f_k
  double f_at_m = 0.0;
  double log_scale = 0.0, log_scale_at_m = 0.0;
  for (long k = mstart; k >= 2; --k) {
    const double f_down = (f_up + z * f) / (k - 1);  // f_{k-1}
    f_up = f;
    f = f_down;
    if (k - 1 == m) {
      f_at_m = f;
      log_scale_at_m = log_scale;
    }
    if (f > 1e250) {
      f *= 1e-250;
      f_up *= 1e-250;
      log_scale += 250.0 * M_LN10;
    } else if (f < 1e-250 && f > 0.0) {
      f *= 1e250;
      f_up *= 1e250;
      log_scale -= 250.0 * M_LN10;
    }
  }
  const double log_ratio =
      std::log(f_at_m) - std::log(f) + (log_scale_at_m - log_scale);
  return {log_ratio, mstart};
}

}  // namespace

EvalResult chi_mgf(double t, int m) {
  if (m < 1) throw std::domain_error("chi_mgf: requires m >= 1");
  if (t > 0.0) {
    throw std::domain_error("chi_mgf: only t <= 0 arises in the recurrences");
  }
  if (t == 0.0) return {1.0, 0.0, 0};

  const double z = -t;
  const double i1 = std::sqrt(M_PI / 2.0) * erfcx(z / std::sqrt(2.0));
  const double log_norm = (0.5 * m - 1.0) * M_LN2 + std::lgamma(0.5 * m);

  double value;
  long used;
  if (m == 1) {
    value = i1 / std::exp(log_norm);
    used = 1;
  } else if (z * std::sqrt(static_cast<double>(m)) <= 0.6) {
    // forward recursion is stable here (error amplification <= e^{4 z sqrt(m)})
    std::vector<double> I(static_cast<size_t>(m) + 1);
    I[1] = i1;
    I[2] = 1.0 - z * i1;
    for (int k = 2; k < m; ++k) I[k + 1] = (k - 1) * I[k - 1] - z * I[k];
    value = I[m] / std::exp(log_norm);
    used = m;
  } else {
    auto [log_ratio, chain] = log_im_over_i1_miller(z, m);
    value = std::exp(log_ratio + std::log(i1) - log_norm);
    used = chain;
  }
  require_finite(value, "chi_mgf", used);
  if (value <= 0.0 || value > 1.0 + 1e-12) {
    throw NumericalError("chi_mgf: result outside (0, 1]", used);
  }
  return {std::min(value, 1.0), 1e-13 * value, used};
}

EvalResult chi_weighted_mgf(double t, int m, int k) {
  if (m < 1) throw std::domain_error("chi_weighted_mgf: requires m >= 1");
  if (k < 1) throw std::domain_error("chi_weighted_mgf: requires k >= 1");
  if (t > 0.0) throw std::domain_error("chi_weighted_mgf: requires t <= 0");
  EvalResult base = chi_mgf(t, m + k);
  const double factor =
      std::exp(0.5 * k * M_LN2 + ln_gamma(0.5 * (m + k)) - ln_gamma(0.5 * m));
  double v = factor * base.value;
  require_finite(v, "chi_weighted_mgf", base.terms_or_nodes_used);
  return {v, factor * base.abs_error_estimate + 1e-15 * v, base.terms_or_nodes_used};
}

}  // namespace dgpdyn
