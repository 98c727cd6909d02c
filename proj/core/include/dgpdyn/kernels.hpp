#ifndef DGPDYN_KERNELS_HPP
#define DGPDYN_KERNELS_HPP

#include <vector>

#include <Eigen/Dense>

namespace dgpdyn {

enum class KernelKind {
  kSquaredExponential,
  kCosine,
  kPeriodic,
  kRationalQuadratic,
  kSpectralMixture,
  kMatern32,
};

const char* kernel_kind_name(KernelKind kind);

/// Stationary kernel hyperparameters. Only the fields used by `kind`
/// participate in evaluation:
///   SE:        sigma2, ell2
///   COS:       sigma2, p
///   PER:       sigma2, ell2, p
///   RQ:        sigma2, ell2, alpha
///   SM:        sigma2 (bandwidth), mu (mean frequency); k(0) = 1
///   MATERN32:  sigma2, ell2
struct KernelSpec {
  KernelKind kind = KernelKind::kSquaredExponential;
  double sigma2 = 1.0;
  double ell2 = 1.0;
  double p = 1.0;
  double alpha = 1.0;
  double mu = 1.0;

  /// Throws std::invalid_argument if any hyperparameter used by `kind`
  /// is not strictly positive.
  void validate() const;

  static KernelSpec squared_exponential(double sigma2, double ell2);
  static KernelSpec cosine(double sigma2, double p);
  static KernelSpec periodic(double sigma2, double ell2, double p);
  static KernelSpec rational_quadratic(double sigma2, double ell2, double alpha);
  static KernelSpec spectral_mixture(double sigma2, double mu);
  static KernelSpec matern32(double sigma2, double ell2);
};

/// k(r) as a function of the Euclidean distance r >= 0.
double kernel_eval(const KernelSpec& spec, double r);

/// Gram matrix M[i][j] = k(||points[i] - points[j]||_2). All points must have
/// the same dimension. For COS (and SM) in dimension > 1 the result may be
/// indefinite; PSD repair is the sampler's job, not this function's.
Eigen::MatrixXd gram_matrix(const KernelSpec& spec,
                            const std::vector<Eigen::VectorXd>& points);

/// Same, points given as rows of a matrix.
Eigen::MatrixXd gram_matrix(const KernelSpec& spec, const Eigen::MatrixXd& points);

}  // namespace dgpdyn

#endif
