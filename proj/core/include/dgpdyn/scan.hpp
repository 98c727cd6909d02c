#ifndef DGPDYN_SCAN_HPP
#define DGPDYN_SCAN_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dgpdyn/recurrence.hpp"

namespace dgpdyn {

/// Hyperparameter (or the layer width m) swept by a scan axis.
enum class ScanParameter { kSigma2, kEll2, kP, kAlpha, kMu, kM };

const char* scan_parameter_name(ScanParameter p);

struct AxisSpec {
  ScanParameter parameter;
  std::vector<double> values;  // nonempty, strictly increasing

  void validate() const;
  static AxisSpec linspace(ScanParameter p, double lo, double hi, int n);
};

struct ScanCell {
  std::vector<double> params;
  std::vector<double> asymptotic_values;
  std::optional<Pathology> classification;
  bool failed = false;
  std::string error;
};

struct ScanResult {
  std::vector<AxisSpec> axes;
  std::vector<ScanCell> cells;  // row-major over the axes, fixed order
  long n_iterations = 0;
  long burn_in = 0;
  double u0 = 1.0;
};

using ScalarMap = std::function<double(double)>;

/// Iterates a scalar map burn_in times from u0, then records `record`
/// consecutive iterates; a recorded set spanning < 1e-10 collapses to one
/// value.
std::vector<double> record_orbit(const ScalarMap& map, double u0, long burn_in,
                                 long record);

/// Bifurcation scan of the kernel recurrence over one hyperparameter axis.
/// Per-cell failures are recorded in the cell; the scan continues. Cells are
/// evaluated concurrently (threads = 0 picks hardware concurrency) and
/// assembled in axis order, so results do not depend on scheduling.
ScanResult bifurcation_scan(const KernelSpec& base, int m, const AxisSpec& axis,
                            double u0, long burn_in, long record,
                            double input_connect_c = 0.0, int threads = 0);

/// Bifurcation scan of an arbitrary scalar-map family (e.g. the logistic map),
/// used to validate the scan machinery independently of the kernels.
ScanResult bifurcation_scan_map(const std::function<ScalarMap(double)>& family,
                                const AxisSpec& axis, double u0, long burn_in,
                                long record, int threads = 0);

/// u after exactly n iterations from u0 on a two-axis hyperparameter grid,
/// plus the pathology classification of each cell's map.
ScanResult contour_scan(const KernelSpec& base, int m, const AxisSpec& axis1,
                        const AxisSpec& axis2, double u0, long n = 300,
                        double input_connect_c = 0.0, int threads = 0);

/// SE threshold surface over (m, sigma2/ell2): u after n iterations and the
/// classification, with ell2 fixed at 1 and sigma2 set to the ratio.
ScanResult se_dim_threshold(const AxisSpec& axis_m, const AxisSpec& axis_ratio,
                            long n, double u0, int threads = 0);

}  // namespace dgpdyn

#endif
