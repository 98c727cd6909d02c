#include "dgpdyn/simulator.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>

#include "dgpdyn/errors.hpp"
#include "dgpdyn/recurrence.hpp"

namespace dgpdyn {

void SimConfig::validate() const {
  kernel.validate();
  if (m < 1) throw std::invalid_argument("SimConfig: requires m >= 1");
  if (depth < 1) throw std::invalid_argument("SimConfig: requires depth >= 1");
  if (replications < 1) throw std::invalid_argument("SimConfig: requires replications >= 1");
  if (inputs.size() < 2) {
    throw std::invalid_argument("SimConfig: requires at least 2 input points");
  }
  const Eigen::Index d = inputs.front().size();
  for (const auto& x : inputs) {
    if (x.size() != d) throw std::invalid_argument("SimConfig: input dimension mismatch");
  }
  if (mean_mode == MeanMode::kLinear && !std::isfinite(mean_slope)) {
    throw std::invalid_argument("SimConfig: mean_slope must be finite");
  }
}

namespace {

/// Lower-triangular (or general) factor L with L L^T ~= K. Jitter ladder
/// first; eigendecomposition clamp as the last resort (needed for COS Gram
/// matrices in dimension > 1, which can be indefinite).
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& k, int layer) {
  const Eigen::Index n = k.rows();
  const double mean_diag = k.trace() / static_cast<double>(n);
  const double base = std::abs(mean_diag) > 0 ? std::abs(mean_diag) : 1.0;
  for (double jitter = 1e-8; jitter <= 1.01e-2; jitter *= 10.0) {
    Eigen::MatrixXd kj = k;
    kj.diagonal().array() += jitter * base;
    Eigen::LLT<Eigen::MatrixXd> llt(kj);
    if (llt.info() == Eigen::Success) return llt.matrixL();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
  if (es.info() != Eigen::Success) {
    throw NumericalError("sample_dgp: PSD repair failed at layer " +
                         std::to_string(layer));
  }
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * lam.cwiseSqrt().asDiagonal();
}

Eigen::MatrixXd inputs_as_matrix(const std::vector<Eigen::VectorXd>& inputs) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(inputs.size()), inputs.front().size());
  for (size_t i = 0; i < inputs.size(); ++i) {
    x.row(static_cast<Eigen::Index>(i)) = inputs[i].transpose();
  }
  return x;
}

void parallel_replications(int reps, int threads,
                           const std::function<void(int)>& body) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  int nt = threads > 0 ? threads : static_cast<int>(hw);
  nt = std::min(nt, reps);
  if (nt <= 1) {
    for (int r = 0; r < reps; ++r) body(r);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(nt));
  for (int t = 0; t < nt; ++t) {
    pool.emplace_back([&] {
      for (int r = next.fetch_add(1); r < reps; r = next.fetch_add(1)) body(r);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

std::vector<Eigen::MatrixXd> sample_dgp(const SimConfig& cfg,
                                        std::uint64_t replication_seed) {
  cfg.validate();
  std::mt19937_64 engine(replication_seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  const Eigen::Index n = static_cast<Eigen::Index>(cfg.inputs.size());
  const Eigen::MatrixXd raw = inputs_as_matrix(cfg.inputs);
  Eigen::MatrixXd current = raw;

  std::vector<Eigen::MatrixXd> layers;
  layers.reserve(static_cast<size_t>(cfg.depth));

  for (int layer = 1; layer <= cfg.depth; ++layer) {
    Eigen::MatrixXd rep;
    if (cfg.input_connect && layer > 1) {
      rep.resize(n, current.cols() + raw.cols());
      rep << current, raw;
    } else {
      rep = current;
    }
    Eigen::MatrixXd gram = gram_matrix(cfg.kernel, rep);
    Eigen::MatrixXd factor = psd_factor(gram, layer);

    Eigen::MatrixXd z(n, cfg.m);
    for (Eigen::Index col = 0; col < cfg.m; ++col) {
      for (Eigen::Index row = 0; row < n; ++row) z(row, col) = normal(engine);
    }
    Eigen::MatrixXd f = factor * z;
    if (cfg.mean_mode == MeanMode::kLinear) {
      const Eigen::VectorXd mean = cfg.mean_slope * current.rowwise().mean();
      f.colwise() += mean;
    }
    layers.push_back(f);
    current = std::move(f);
  }
  return layers;
}

std::vector<LayerStats> estimate_mean_z(const SimConfig& cfg, int x_index,
                                        int x_prime_index) {
  cfg.validate();
  const int npts = static_cast<int>(cfg.inputs.size());
  if (x_index < 0 || x_prime_index < 0 || x_index >= npts || x_prime_index >= npts) {
    throw std::domain_error("estimate_mean_z: pair indices out of range");
  }

  const int reps = cfg.replications;
  const int depth = cfg.depth;
  std::vector<std::vector<double>> z(static_cast<size_t>(reps));
  parallel_replications(reps, cfg.threads, [&](int r) {
    auto layers = sample_dgp(cfg, cfg.seed ^ static_cast<std::uint64_t>(r));
    std::vector<double> zr(static_cast<size_t>(depth));
    for (int nlayer = 0; nlayer < depth; ++nlayer) {
      zr[static_cast<size_t>(nlayer)] =
          (layers[static_cast<size_t>(nlayer)].row(x_index) -
           layers[static_cast<size_t>(nlayer)].row(x_prime_index))
              .squaredNorm();
    }
    z[static_cast<size_t>(r)] = std::move(zr);
  });

  const double c =
      cfg.input_connect ? input_connect_constant(cfg.kernel, cfg.m, cfg.inputs) : 0.0;
  RecurrenceMap map(cfg.kernel, cfg.m, c);
  // predicted_u: u_1 = E[Z_1] exactly, then the map layer by layer
  std::vector<double> predicted(static_cast<size_t>(depth));
  double u = initial_u_from_inputs(map, cfg.inputs[static_cast<size_t>(x_index)],
                                   cfg.inputs[static_cast<size_t>(x_prime_index)]);
  for (int nlayer = 0; nlayer < depth; ++nlayer) {
    predicted[static_cast<size_t>(nlayer)] = u;
    u = map.step(u);
  }

  std::vector<LayerStats> out(static_cast<size_t>(depth));
  for (int nlayer = 0; nlayer < depth; ++nlayer) {
    double sum = 0.0, sum2 = 0.0;
    for (int r = 0; r < reps; ++r) {
      const double v = z[static_cast<size_t>(r)][static_cast<size_t>(nlayer)];
      sum += v;
      sum2 += v * v;
    }
    LayerStats& st = out[static_cast<size_t>(nlayer)];
    st.layer = nlayer + 1;
    st.n_samples = reps;
    st.empirical_mean_z = sum / reps;
    if (reps > 1) {
      const double var =
          std::max(0.0, (sum2 - reps * st.empirical_mean_z * st.empirical_mean_z) /
                            (reps - 1.0));
      st.std_error = std::sqrt(var / reps);
    } else {
      st.std_error = 0.0;  // degenerate single-sample case
    }
    st.predicted_u = predicted[static_cast<size_t>(nlayer)];
  }
  return out;
}

double rmsd_of_points(const Eigen::MatrixXd& points) {
  const Eigen::Index n = points.rows();
  if (n < 2) throw std::domain_error("rmsd_of_points: requires at least 2 points");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      sum += 2.0 * (points.row(i) - points.row(j)).squaredNorm();
    }
  }
  return std::sqrt(sum / (static_cast<double>(n) * (n - 1)));
}

double input_connect_constant(const KernelSpec& kernel, int m,
                              const std::vector<Eigen::VectorXd>& inputs) {
  kernel.validate();
  if (inputs.size() < 2) {
    throw std::domain_error("input_connect_constant: requires at least 2 inputs");
  }
  const double k0 = kernel_eval(kernel, 0.0);
  double sum = 0.0;
  long count = 0;
  for (size_t i = 0; i < inputs.size(); ++i) {
    for (size_t j = i + 1; j < inputs.size(); ++j) {
      sum += kernel_eval(kernel, (inputs[i] - inputs[j]).norm());
      ++count;
    }
  }
  return 2.0 * m * (k0 - sum / static_cast<double>(count));
}

std::vector<std::vector<double>> rmsd_trace(const SimConfig& cfg) {
  cfg.validate();
  const int reps = cfg.replications;
  std::vector<std::vector<double>> out(static_cast<size_t>(reps));
  const double rmsd0 = rmsd_of_points(inputs_as_matrix(cfg.inputs));
  parallel_replications(reps, cfg.threads, [&](int r) {
    auto layers = sample_dgp(cfg, cfg.seed ^ static_cast<std::uint64_t>(r));
    std::vector<double> trace(static_cast<size_t>(cfg.depth) + 1);
    trace[0] = rmsd0;
    for (int nlayer = 1; nlayer <= cfg.depth; ++nlayer) {
      trace[static_cast<size_t>(nlayer)] =
          rmsd_of_points(layers[static_cast<size_t>(nlayer - 1)]);
    }
    out[static_cast<size_t>(r)] = std::move(trace);
  });
  return out;
}

}  // namespace dgpdyn
