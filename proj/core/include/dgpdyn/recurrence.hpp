#ifndef DGPDYN_RECURRENCE_HPP
#define DGPDYN_RECURRENCE_HPP

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dgpdyn/kernels.hpp"

namespace dgpdyn {

/// Direction in which the map bounds the expected squared layer distance.
enum class BoundKind { kUpper, kLower };

enum class Pathology { kPathological, kNonPathological, kMarginal };

const char* pathology_name(Pathology p);

/// One-step map u_n = h(u_{n-1}) on the expected squared distance between two
/// layer outputs, for a kernel with layer width m. Immutable after
/// construction; all operations are pure and thread-safe.
///
/// Maps (s = u/m, c added after h):
///   SE:        2 m s2 (1 - (1 + u/(m l2))^{-m/2})
///   COS (m=1): 2 s2 (1 - exp(-pi^2 u / (2 p^2)))
///   PER:       (2 m s2 / l2) (1 - 1F1(m/2, 1/2, -2 pi^2 s / p^2))
///   RQ:        2 m s2 (1 - E[(1 + s X/(2 a l2))^{-a}]), X ~ chi^2_m
///              (exact fixed-order quadrature; the 2F0 notation is divergent)
///   SM:        2 m (1 - phi(s)^m),
///              phi(s) = exp(-2 pi^2 mu^2 s/(1+4 pi^2 s2 s)) (1+4 pi^2 s2 s)^{-1/2}
///   MATERN32:  2 m s2 (1 - M_chi(-a) - a E[X e^{-aX}]), a = sqrt(3) sqrt(s)/l
class RecurrenceMap {
 public:
  /// Throws std::invalid_argument on invalid hyperparameters, m < 1,
  /// c < 0, or COS with m != 1 (the COS map is only available for m = 1).
  RecurrenceMap(KernelSpec kernel, int m, double input_connect_c = 0.0);

  const KernelSpec& kernel() const { return kernel_; }
  int m() const { return m_; }
  double input_connect_c() const { return c_; }
  BoundKind bound_kind() const { return bound_; }
  /// True where the one-sided bound lacks a convexity proof and the map is a
  /// formally applied estimate (MATERN32).
  bool heuristic_bound() const { return heuristic_; }
  /// sup_u h(u) excluding the additive constant c.
  double saturation_cap() const;

  double step(double u) const;

 private:
  KernelSpec kernel_;
  int m_;
  double c_;
  BoundKind bound_;
  bool heuristic_;
  // fixed Gauss-Legendre nodes (chi_m variable) for the RQ expectation
  std::vector<double> rq_nodes_;
  std::vector<double> rq_weights_;
};

/// Convenience free function mirroring the map's step operation.
inline double step(const RecurrenceMap& map, double u) { return map.step(u); }

struct Trajectory {
  std::vector<double> values;  // u_0 ... u_N
  bool converged = false;
  double limit_estimate = 0.0;
  std::optional<long> iterations_to_tolerance;
};

/// Iterates the map from u0 for at most n_max steps, stopping early once
/// |u_{k+1} - u_k| <= tol * max(1, u_k).
Trajectory trajectory(const RecurrenceMap& map, double u0, long n_max, double tol);

/// E[Z_1] for the raw input pair: 2m (k(0) - k(||x - x'||)).
double initial_u_from_inputs(const RecurrenceMap& map, const Eigen::VectorXd& x,
                             const Eigen::VectorXd& x_prime);

struct FixedPoint {
  double location = 0.0;
  double derivative = 0.0;
  bool stable = false;
};

struct FixedPointReport {
  std::vector<FixedPoint> fixed_points;
  Pathology pathology = Pathology::kNonPathological;
  double lipschitz_on_interval = 0.0;
  double interval_max = 0.0;  // report interval is [0, interval_max]
  bool heuristic = false;
};

/// Locates the fixed points of h on [0, u_max] (sign-change scan on a
/// 1000-cell grid plus bisection to 1e-12 absolute), estimates h' at each by
/// central finite differences (step 1e-6 max(1,u); one-sided at the origin),
/// and classifies the map: MARGINAL if |h'(0) - 1| <= 1e-6, PATHOLOGICAL if 0
/// is the unique fixed point and is stable, NON_PATHOLOGICAL otherwise.
/// u_max <= 0 selects the default 4 (saturation cap + c).
FixedPointReport fixed_points(const RecurrenceMap& map, double u_max = 0.0);

/// |h'(u*)| at the fixed point reached from u0 (trajectory with relative
/// tolerance 1e-10, at most 10^6 iterations; non-convergence raises
/// NumericalError). Values closer to 0 mean faster geometric convergence.
double convergence_rate(const RecurrenceMap& map, double u0);

}  // namespace dgpdyn

#endif
