#include "dgpdyn/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dgpdyn {

const char* kernel_kind_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::kSquaredExponential: return "se";
    case KernelKind::kCosine: return "cos";
    case KernelKind::kPeriodic: return "per";
    case KernelKind::kRationalQuadratic: return "rq";
    case KernelKind::kSpectralMixture: return "sm";
    case KernelKind::kMatern32: return "matern32";
  }
  return "?";
}

namespace {
void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string("KernelSpec: ") + name +
                                " must be strictly positive");
  }
}
}  // namespace

void KernelSpec::validate() const {
  require_positive(sigma2, "sigma2");
  switch (kind) {
    case KernelKind::kSquaredExponential:
    case KernelKind::kMatern32:
      require_positive(ell2, "ell2");
      break;
    case KernelKind::kCosine:
      require_positive(p, "p");
      break;
    case KernelKind::kPeriodic:
      require_positive(ell2, "ell2");
      require_positive(p, "p");
      break;
    case KernelKind::kRationalQuadratic:
      require_positive(ell2, "ell2");
      require_positive(alpha, "alpha");
      break;
    case KernelKind::kSpectralMixture:
      require_positive(mu, "mu");
      break;
  }
}

KernelSpec KernelSpec::squared_exponential(double sigma2, double ell2) {
  KernelSpec s;
  s.kind = KernelKind::kSquaredExponential;
  s.sigma2 = sigma2;
  s.ell2 = ell2;
  return s;
}
KernelSpec KernelSpec::cosine(double sigma2, double p) {
  KernelSpec s;
  s.kind = KernelKind::kCosine;
  s.sigma2 = sigma2;
  s.p = p;
  return s;
}
KernelSpec KernelSpec::periodic(double sigma2, double ell2, double p) {
  KernelSpec s;
  s.kind = KernelKind::kPeriodic;
  s.sigma2 = sigma2;
  s.ell2 = ell2;
  s.p = p;
  return s;
}
KernelSpec KernelSpec::rational_quadratic(double sigma2, double ell2, double alpha) {
  KernelSpec s;
  s.kind = KernelKind::kRationalQuadratic;
  s.sigma2 = sigma2;
  s.ell2 = ell2;
  s.alpha = alpha;
  return s;
}
KernelSpec KernelSpec::spectral_mixture(double sigma2, double mu) {
  KernelSpec s;
  s.kind = KernelKind::kSpectralMixture;
  s.sigma2 = sigma2;
  s.mu = mu;
  return s;
}
KernelSpec KernelSpec::matern32(double sigma2, double ell2) {
  KernelSpec s;
  s.kind = KernelKind::kMatern32;
  s.sigma2 = sigma2;
  s.ell2 = ell2;
  return s;
}

double kernel_eval(const KernelSpec& spec, double r) {
  if (!(r >= 0.0)) throw std::domain_error("kernel_eval: requires r >= 0");
  switch (spec.kind) {
    case KernelKind::kSquaredExponential:
      return spec.sigma2 * std::exp(-r * r / (2.0 * spec.ell2));
    case KernelKind::kCosine:
      return spec.sigma2 * std::cos(M_PI * r / spec.p);
    case KernelKind::kPeriodic: {
      const double s = std::sin(M_PI * r / spec.p);
      return spec.sigma2 * std::exp(-2.0 * s * s / spec.ell2);
    }
    case KernelKind::kRationalQuadratic:
      return spec.sigma2 *
             std::pow(1.0 + r * r / (2.0 * spec.alpha * spec.ell2), -spec.alpha);
    case KernelKind::kSpectralMixture:
      return std::exp(-2.0 * M_PI * M_PI * spec.sigma2 * r * r) *
             std::cos(2.0 * M_PI * spec.mu * r);
    case KernelKind::kMatern32: {
      const double a = std::sqrt(3.0) * r / std::sqrt(spec.ell2);
      return spec.sigma2 * (1.0 + a) * std::exp(-a);
    }
  }
  throw std::logic_error("kernel_eval: unknown kind");
}

Eigen::MatrixXd gram_matrix(const KernelSpec& spec,
                            const std::vector<Eigen::VectorXd>& points) {
  if (points.empty()) throw std::domain_error("gram_matrix: points must be nonempty");
  const Eigen::Index d = points.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(points.size()), d);
  for (size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != d) {
      throw std::domain_error("gram_matrix: points must share one dimension");
    }
    m.row(static_cast<Eigen::Index>(i)) = points[i].transpose();
  }
  return gram_matrix(spec, m);
}

Eigen::MatrixXd gram_matrix(const KernelSpec& spec, const Eigen::MatrixXd& points) {
  spec.validate();
  const Eigen::Index n = points.rows();
  if (n == 0) throw std::domain_error("gram_matrix: points must be nonempty");
  Eigen::MatrixXd g(n, n);
  const double k0 = kernel_eval(spec, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    g(i, i) = k0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double r = (points.row(i) - points.row(j)).norm();
      const double v = kernel_eval(spec, r);
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

}  // namespace dgpdyn
