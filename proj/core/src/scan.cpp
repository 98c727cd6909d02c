#include "dgpdyn/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace dgpdyn {

const char* scan_parameter_name(ScanParameter p) {
  switch (p) {
    case ScanParameter::kSigma2: return "sigma2";
    case ScanParameter::kEll2: return "ell2";
    case ScanParameter::kP: return "p";
    case ScanParameter::kAlpha: return "alpha";
    case ScanParameter::kMu: return "mu";
    case ScanParameter::kM: return "m";
  }
  return "?";
}

void AxisSpec::validate() const {
  if (values.empty()) throw std::invalid_argument("AxisSpec: values must be nonempty");
  for (size_t i = 0; i + 1 < values.size(); ++i) {
    if (!(values[i] < values[i + 1])) {
      throw std::invalid_argument("AxisSpec: values must be strictly increasing");
    }
  }
  for (double v : values) {
    if (parameter == ScanParameter::kM) {
      if (v < 1.0 || v != std::floor(v)) {
        throw std::invalid_argument("AxisSpec: m values must be positive integers");
      }
    } else if (!(v > 0.0)) {
      throw std::invalid_argument("AxisSpec: hyperparameter values must be positive");
    }
  }
}

AxisSpec AxisSpec::linspace(ScanParameter p, double lo, double hi, int n) {
  if (n < 1 || !(hi >= lo)) throw std::invalid_argument("AxisSpec::linspace: bad range");
  AxisSpec a;
  a.parameter = p;
  a.values.resize(n);
  if (n == 1) {
    a.values[0] = lo;
  } else {
    for (int i = 0; i < n; ++i) a.values[i] = lo + (hi - lo) * i / (n - 1);
  }
  a.validate();
  return a;
}

namespace {

void apply_parameter(ScanParameter p, double v, KernelSpec* spec, int* m) {
  switch (p) {
    case ScanParameter::kSigma2: spec->sigma2 = v; break;
    case ScanParameter::kEll2: spec->ell2 = v; break;
    case ScanParameter::kP: spec->p = v; break;
    case ScanParameter::kAlpha: spec->alpha = v; break;
    case ScanParameter::kMu: spec->mu = v; break;
    case ScanParameter::kM: *m = static_cast<int>(v); break;
  }
}

void parallel_for(size_t n, int threads, const std::function<void(size_t)>& body) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  size_t nt = threads > 0 ? static_cast<size_t>(threads) : hw;
  nt = std::min(nt, n);
  if (nt <= 1) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (size_t t = 0; t < nt; ++t) {
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

constexpr long kMaxScanWork = 1000000;

}  // namespace

std::vector<double> record_orbit(const ScalarMap& map, double u0, long burn_in,
                                 long record) {
  if (burn_in < 0 || record < 1 || burn_in + record > kMaxScanWork) {
    throw std::domain_error("record_orbit: burn_in + record must be in [1, 10^6]");
  }
  double u = u0;
  for (long i = 0; i < burn_in; ++i) u = map(u);
  std::vector<double> rec;
  rec.reserve(static_cast<size_t>(record));
  double lo = u, hi = u;
  for (long i = 0; i < record; ++i) {
    u = map(u);
    rec.push_back(u);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  if (hi - lo < 1e-10) return {rec.back()};
  return rec;
}

ScanResult bifurcation_scan_map(const std::function<ScalarMap(double)>& family,
                                const AxisSpec& axis, double u0, long burn_in,
                                long record, int threads) {
  axis.validate();
  ScanResult out;
  out.axes = {axis};
  out.burn_in = burn_in;
  out.n_iterations = record;
  out.u0 = u0;
  out.cells.resize(axis.values.size());
  parallel_for(axis.values.size(), threads, [&](size_t i) {
    ScanCell& cell = out.cells[i];
    cell.params = {axis.values[i]};
    try {
      cell.asymptotic_values = record_orbit(family(axis.values[i]), u0, burn_in, record);
    } catch (const std::exception& e) {
      cell.failed = true;
      cell.error = e.what();
    }
  });
  return out;
}

ScanResult bifurcation_scan(const KernelSpec& base, int m, const AxisSpec& axis,
                            double u0, long burn_in, long record,
                            double input_connect_c, int threads) {
  axis.validate();
  ScanResult out;
  out.axes = {axis};
  out.burn_in = burn_in;
  out.n_iterations = record;
  out.u0 = u0;
  out.cells.resize(axis.values.size());
  parallel_for(axis.values.size(), threads, [&](size_t i) {
    ScanCell& cell = out.cells[i];
    cell.params = {axis.values[i]};
    try {
      KernelSpec spec = base;
      int mm = m;
      apply_parameter(axis.parameter, axis.values[i], &spec, &mm);
      RecurrenceMap map(spec, mm, input_connect_c);
      cell.asymptotic_values =
          record_orbit([&](double u) { return map.step(u); }, u0, burn_in, record);
      cell.classification = fixed_points(map).pathology;
    } catch (const std::exception& e) {
      cell.failed = true;
      cell.error = e.what();
    }
  });
  return out;
}

namespace {

ScanResult grid_scan(const KernelSpec& base, int m, const AxisSpec& axis1,
                     const AxisSpec& axis2, double u0, long n,
                     double input_connect_c, int threads) {
  axis1.validate();
  axis2.validate();
  const size_t n1 = axis1.values.size(), n2 = axis2.values.size();
  if (n < 1 || static_cast<long>(n1 * n2) > kMaxScanWork) {
    throw std::domain_error("contour_scan: grid must have at most 10^6 cells");
  }
  ScanResult out;
  out.axes = {axis1, axis2};
  out.n_iterations = n;
  out.u0 = u0;
  out.cells.resize(n1 * n2);
  parallel_for(n1 * n2, threads, [&](size_t idx) {
    const size_t i = idx / n2, j = idx % n2;
    ScanCell& cell = out.cells[idx];
    cell.params = {axis1.values[i], axis2.values[j]};
    try {
      KernelSpec spec = base;
      int mm = m;
      apply_parameter(axis1.parameter, axis1.values[i], &spec, &mm);
      apply_parameter(axis2.parameter, axis2.values[j], &spec, &mm);
      RecurrenceMap map(spec, mm, input_connect_c);
      double u = u0;
      for (long k = 0; k < n; ++k) u = map.step(u);
      cell.asymptotic_values = {u};
      cell.classification = fixed_points(map).pathology;
    } catch (const std::exception& e) {
      cell.failed = true;
      cell.error = e.what();
    }
  });
  return out;
}

}  // namespace

ScanResult contour_scan(const KernelSpec& base, int m, const AxisSpec& axis1,
                        const AxisSpec& axis2, double u0, long n,
                        double input_connect_c, int threads) {
  return grid_scan(base, m, axis1, axis2, u0, n, input_connect_c, threads);
}

ScanResult se_dim_threshold(const AxisSpec& axis_m, const AxisSpec& axis_ratio,
                            long n, double u0, int threads) {
  if (axis_m.parameter != ScanParameter::kM) {
    throw std::invalid_argument("se_dim_threshold: first axis must sweep m");
  }
  KernelSpec base = KernelSpec::squared_exponential(1.0, 1.0);
  AxisSpec ratio = axis_ratio;
  ratio.parameter = ScanParameter::kSigma2;  // sigma2 = ratio, ell2 = 1
  return grid_scan(base, 1, axis_m, ratio, u0, n, 0.0, threads);
}

}  // namespace dgpdyn
