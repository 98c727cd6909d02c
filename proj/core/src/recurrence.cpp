#include "dgpdyn/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dgpdyn/specfun.hpp"

namespace dgpdyn {

const char* pathology_name(Pathology p) {
  switch (p) {
    case Pathology::kPathological: return "PATHOLOGICAL";
    case Pathology::kNonPathological: return "NON_PATHOLOGICAL";
    case Pathology::kMarginal: return "MARGINAL";
  }
  return "?";
}

namespace {

/// 20-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; symmetric).
constexpr int kGlHalf = 10;
constexpr double kGlX[kGlHalf] = {
    0.0765265211334973, 0.2277858511416451, 0.3737060887154195,
    0.5108670019508271, 0.6360536807265150, 0.7463319064601508,
    0.8391169718222188, 0.9122344282513259, 0.9639719272779138,
    0.9931285991850949};
constexpr double kGlW[kGlHalf] = {
    0.1527533871307258, 0.1491729864726037, 0.1420961093183820,
    0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
    0.0832767415767048, 0.0626720483341091, 0.0406014298003869,
    0.0176140071391521};

/// Composite Gauss-Legendre nodes for E[g(Y)], Y ~ chi^2_m, through the
/// substitution y = x^2 with x ~ chi_m: panels of width <= 1 on
/// [0, sqrt(m-1) + 13], weights absorbing the chi_m density.
void build_chi2_gl_nodes(int m, std::vector<double>* xs, std::vector<double>* ws) {
  const double cutoff = std::sqrt(std::max(static_cast<double>(m - 1), 0.0)) + 13.0;
  const int panels = static_cast<int>(std::ceil(cutoff));
  const double log_norm = (1.0 - 0.5 * m) * M_LN2 - std::lgamma(0.5 * m);
  const double width = cutoff / panels;
  xs->clear();
  ws->clear();
  xs->reserve(static_cast<size_t>(panels) * 2 * kGlHalf);
  ws->reserve(xs->capacity());
  for (int p = 0; p < panels; ++p) {
    const double a = p * width, b = (p + 1) * width;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < kGlHalf; ++i) {
      for (int sgn : {-1, 1}) {
        const double x = mid + sgn * half * kGlX[i];
        if (x <= 0.0) continue;
        const double logf = log_norm + (m - 1) * std::log(x) - 0.5 * x * x;
        if (logf < -745.0) continue;
        xs->push_back(x);
        ws->push_back(kGlW[i] * half * std::exp(logf));
      }
    }
  }
}

}  // namespace

RecurrenceMap::RecurrenceMap(KernelSpec kernel, int m, double input_connect_c)
    : kernel_(kernel), m_(m), c_(input_connect_c) {
  kernel_.validate();
  if (m_ < 1) throw std::invalid_argument("RecurrenceMap: requires m >= 1");
  if (!(c_ >= 0.0) || !std::isfinite(c_)) {
    throw std::invalid_argument("RecurrenceMap: requires input_connect_c >= 0");
  }
  if (kernel_.kind == KernelKind::kCosine && m_ != 1) {
    throw std::invalid_argument(
        "RecurrenceMap: the COS map is restricted to m = 1");
  }
  bound_ = kernel_.kind == KernelKind::kPeriodic ? BoundKind::kLower
                                                 : BoundKind::kUpper;
  heuristic_ = kernel_.kind == KernelKind::kMatern32;
  if (kernel_.kind == KernelKind::kRationalQuadratic) {
    build_chi2_gl_nodes(m_, &rq_nodes_, &rq_weights_);
  }
}

double RecurrenceMap::saturation_cap() const {
  switch (kernel_.kind) {
    case KernelKind::kSquaredExponential:
    case KernelKind::kRationalQuadratic:
    case KernelKind::kMatern32:
      return 2.0 * m_ * kernel_.sigma2;
    case KernelKind::kCosine:
      return 2.0 * kernel_.sigma2;
    case KernelKind::kSpectralMixture:
      return 2.0 * m_;
    case KernelKind::kPeriodic:
      // (2 m s2 / l2)(1 - 1F1) with 1F1 in [-1, 1]
      return 4.0 * m_ * kernel_.sigma2 / kernel_.ell2;
  }
  return 0.0;
}

double RecurrenceMap::step(double u) const {
  if (!(u >= 0.0) || !std::isfinite(u)) {
    throw std::domain_error("step: requires finite u >= 0");
  }
  if (u == 0.0) return c_;  // h(0) = 0 analytically for every kernel

  const double m = m_;
  const double s = u / m;
  double h = 0.0;
  switch (kernel_.kind) {
    case KernelKind::kSquaredExponential:
      h = 2.0 * m * kernel_.sigma2 *
          (-std::expm1(-0.5 * m * std::log1p(u / (m * kernel_.ell2))));
      break;
    case KernelKind::kCosine:
      h = 2.0 * kernel_.sigma2 *
          (-std::expm1(-M_PI * M_PI * u / (2.0 * kernel_.p * kernel_.p)));
      break;
    case KernelKind::kPeriodic: {
      const double z = -2.0 * M_PI * M_PI * s / (kernel_.p * kernel_.p);
      const EvalResult f = kummer_1f1(0.5 * m, 0.5, z);
      h = 2.0 * m * kernel_.sigma2 / kernel_.ell2 * (1.0 - f.value);
      break;
    }
    case KernelKind::kRationalQuadratic: {
      const double scale = s / (2.0 * kernel_.alpha * kernel_.ell2);
      double e = 0.0;
      for (size_t i = 0; i < rq_nodes_.size(); ++i) {
        const double x = rq_nodes_[i];
        e += rq_weights_[i] * std::pow(1.0 + scale * x * x, -kernel_.alpha);
      }
      h = 2.0 * m * kernel_.sigma2 * (1.0 - e);
      break;
    }
    case KernelKind::kSpectralMixture: {
      const double denom = 1.0 + 4.0 * M_PI * M_PI * kernel_.sigma2 * s;
      const double log_phi = -2.0 * M_PI * M_PI * kernel_.mu * kernel_.mu * s / denom -
                             0.5 * std::log(denom);
      h = 2.0 * m * (-std::expm1(m * log_phi));
      break;
    }
    case KernelKind::kMatern32: {
      const double a = std::sqrt(3.0 * s / kernel_.ell2);
      const EvalResult m0 = chi_mgf(-a, m_);
      const EvalResult m1 = chi_weighted_mgf(-a, m_, 1);
      h = 2.0 * m * kernel_.sigma2 * (1.0 - m0.value - a * m1.value);
      break;
    }
  }
  if (!std::isfinite(h)) throw NumericalError("step: non-finite map value");
  if (h < 0.0) {
    if (h > -1e-12 * std::max(1.0, saturation_cap())) {
      h = 0.0;  // quadrature round-off at tiny u
    } else {
      throw NumericalError("step: negative map value");
    }
  }
  return h + c_;
}

Trajectory trajectory(const RecurrenceMap& map, double u0, long n_max, double tol) {
  if (!(u0 >= 0.0) || !std::isfinite(u0)) {
    throw std::domain_error("trajectory: requires finite u0 >= 0");
  }
  if (n_max < 1) throw std::domain_error("trajectory: requires n_max >= 1");
  if (!(tol > 0.0)) throw std::domain_error("trajectory: requires tol > 0");

  Trajectory out;
  out.values.reserve(static_cast<size_t>(std::min(n_max, 100000L)) + 1);
  out.values.push_back(u0);
  double u = u0;
  for (long k = 0; k < n_max; ++k) {
    const double next = map.step(u);
    out.values.push_back(next);
    if (std::abs(next - u) <= tol * std::max(1.0, u)) {
      out.converged = true;
      out.iterations_to_tolerance = k + 1;
      u = next;
      break;
    }
    u = next;
  }
  out.limit_estimate = out.values.back();
  return out;
}

double initial_u_from_inputs(const RecurrenceMap& map, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& x_prime) {
  if (x.size() != x_prime.size()) {
    throw std::domain_error("initial_u_from_inputs: dimension mismatch");
  }
  const double r = (x - x_prime).norm();
  const double k0 = kernel_eval(map.kernel(), 0.0);
  return 2.0 * map.m() * (k0 - kernel_eval(map.kernel(), r));
}

namespace {

/// h'(u) by central finite difference with step 1e-6 max(1, u); second-order
/// one-sided stencil when u - d would leave the domain.
double fd_derivative(const RecurrenceMap& map, double u) {
  const double d = 1e-6 * std::max(1.0, u);
  if (u - d >= 0.0) {
    return (map.step(u + d) - map.step(u - d)) / (2.0 * d);
  }
  return (4.0 * map.step(u + d) - map.step(u + 2.0 * d) - 3.0 * map.step(u)) /
         (2.0 * d);
}

double bisect_root(const RecurrenceMap& map, double lo, double hi, double glo) {
  // g(u) = h(u) - u, sign change guaranteed on [lo, hi]
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 1e-12) return mid;
    const double gm = map.step(mid) - mid;
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

FixedPointReport fixed_points(const RecurrenceMap& map, double u_max) {
  if (u_max <= 0.0) u_max = 4.0 * (map.saturation_cap() + map.input_connect_c());
  constexpr int kCells = 1000;

  FixedPointReport report;
  report.interval_max = u_max;
  report.heuristic = map.heuristic_bound();

  std::vector<double> roots;
  if (map.input_connect_c() == 0.0) roots.push_back(0.0);  // h(0) = 0 exactly

  const double du = u_max / kCells;
  double uprev = 0.0;
  double gprev = map.step(0.0) - 0.0;
  double lips = 0.0;
  for (int i = 1; i <= kCells; ++i) {
    const double u = i * du;
    const double g = map.step(u) - u;
    lips = std::max(lips, (map.step(u) - map.step(uprev)) / du);
    const bool have_prev_root = !roots.empty() && std::abs(uprev - roots.back()) < du * 0.5;
    if (g == 0.0) {
      roots.push_back(u);
    } else if (gprev != 0.0 && (g > 0.0) != (gprev > 0.0)) {
      const double r = bisect_root(map, uprev, u, gprev);
      if (!have_prev_root || std::abs(r - roots.back()) > 1e-9) roots.push_back(r);
    }
    uprev = u;
    gprev = g;
  }

  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-9; }),
              roots.end());

  for (double r : roots) {
    FixedPoint fp;
    fp.location = r;
    fp.derivative = fd_derivative(map, r);
    fp.stable = std::abs(fp.derivative) < 1.0;
    report.fixed_points.push_back(fp);
  }

  report.lipschitz_on_interval = lips;

  if (map.input_connect_c() == 0.0) {
    const double d0 = report.fixed_points.front().derivative;
    if (std::abs(d0 - 1.0) <= 1e-6) {
      report.pathology = Pathology::kMarginal;
    } else if (report.fixed_points.size() == 1 && report.fixed_points.front().stable) {
      report.pathology = Pathology::kPathological;
    } else {
      report.pathology = Pathology::kNonPathological;
    }
  } else {
    report.pathology = Pathology::kNonPathological;  // h(0) = c > 0: no collapse
  }
  return report;
}

double convergence_rate(const RecurrenceMap& map, double u0) {
  if (!(u0 > 0.0)) throw std::domain_error("convergence_rate: requires u0 > 0");
  constexpr long kMaxIters = 1000000;
  constexpr double kTol = 1e-10;
  double u = u0;
  bool converged = false;
  for (long k = 0; k < kMaxIters; ++k) {
    const double next = map.step(u);
    if (std::abs(next - u) <= kTol * std::max(1.0, u)) {
      u = next;
      converged = true;
      break;
    }
    u = next;
  }
  if (!converged) {
    throw NumericalError("convergence_rate: trajectory did not converge within 10^6 iterations",
                         kMaxIters);
  }
  return std::abs(fd_derivative(map, u));
}

}  // namespace dgpdyn
