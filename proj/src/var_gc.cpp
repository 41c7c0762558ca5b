#include "csc/var_gc.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "csc/rng.hpp"

namespace csc {

namespace {

// Stacked lagged regressors over trials. Columns: [1, z_{t-1}, ..., z_{t-p}]
// with channels contiguous within each lag block. `trim` rows are dropped
// from the start of every trial so fits with different orders can share one
// estimation window.
struct StackedData {
  Eigen::MatrixXd x;
  Eigen::MatrixXd y;
  int nvars = 0;
  int order = 0;
};

StackedData stack_lags(const TrialList& trials, int order, int trim) {
  if (trials.empty()) throw std::invalid_argument("var: no trials");
  if (order < 1) throw std::invalid_argument("var: order must be >= 1");
  if (trim < order) trim = order;
  const int nvars = static_cast<int>(trials.front().rows());
  long nobs = 0;
  for (const auto& trial : trials) {
    if (trial.rows() != nvars)
      throw std::invalid_argument("var: trials disagree on channel count");
    if (trial.cols() <= trim)
      throw std::invalid_argument("var: trial shorter than the lag window");
    nobs += trial.cols() - trim;
  }
  StackedData data;
  data.nvars = nvars;
  data.order = order;
  data.x.resize(nobs, 1 + order * nvars);
  data.y.resize(nobs, nvars);
  long row = 0;
  for (const auto& trial : trials) {
    const long len = trial.cols();
    for (long t = trim; t < len; ++t, ++row) {
      data.x(row, 0) = 1.0;
      for (int lag = 1; lag <= order; ++lag)
        for (int c = 0; c < nvars; ++c)
          data.x(row, 1 + (lag - 1) * nvars + c) = trial(c, t - lag);
      for (int c = 0; c < nvars; ++c) data.y(row, c) = trial(c, t);
    }
  }
  return data;
}

void check_channel_variance(const TrialList& trials) {
  const int nvars = static_cast<int>(trials.front().rows());
  for (int c = 0; c < nvars; ++c) {
    double mean = 0.0;
    long count = 0;
    for (const auto& trial : trials) {
      mean += trial.row(c).sum();
      count += trial.cols();
    }
    mean /= static_cast<double>(count);
    double ss = 0.0;
    for (const auto& trial : trials)
      ss += (trial.row(c).array() - mean).square().sum();
    if (ss <= 0.0)
      throw std::invalid_argument("var: zero-variance channel " + std::to_string(c));
  }
}

// Column indices of the design for a predictor-channel subset (intercept
// always included).
std::vector<int> design_columns(int nvars, int order,
                                const std::vector<int>& channels) {
  std::vector<int> cols;
  cols.reserve(1 + static_cast<std::size_t>(order) * channels.size());
  cols.push_back(0);
  for (int lag = 1; lag <= order; ++lag)
    for (int c : channels) cols.push_back(1 + (lag - 1) * nvars + c);
  return cols;
}

struct SubFit {
  Eigen::MatrixXd coef;   // ncols x ntargets
  Eigen::MatrixXd sigma;  // ntargets x ntargets
  long nobs = 0;
  bool rank_warning = false;
};

// Normal-equation OLS over precomputed cross-products. One Gram matrix
// serves every nested fit (order scan, reduced models); orthogonal
// decomposition of the explicit submatrix is the minimum-norm fallback for
// ill-conditioned selections.
class GramOls {
 public:
  explicit GramOls(const StackedData& data)
      : data_(&data),
        xtx_(data.x.transpose() * data.x),
        xty_(data.x.transpose() * data.y),
        yty_(data.y.transpose() * data.y) {}

  SubFit fit(const std::vector<int>& cols, const std::vector<int>& targets) const {
    const auto d = static_cast<Eigen::Index>(cols.size());
    const auto k = static_cast<Eigen::Index>(targets.size());
    Eigen::MatrixXd a(d, d);
    Eigen::MatrixXd b(d, k);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) a(i, j) = xtx_(cols[i], cols[j]);
      for (Eigen::Index t = 0; t < k; ++t) b(i, t) = xty_(cols[i], targets[t]);
    }
    SubFit fit;
    fit.nobs = data_->x.rows();
    Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
    bool ok = ldlt.info() == Eigen::Success;
    if (ok) {
      const auto& diag = ldlt.vectorD();
      const double dmax = diag.maxCoeff();
      ok = diag.minCoeff() > dmax * 1e-13 && dmax > 0.0;
    }
    if (ok) {
      fit.coef = ldlt.solve(b);
      ok = (a * fit.coef - b).norm() <= 1e-8 * (1.0 + b.norm());
    }
    if (!ok) {
      // explicit submatrix, rank-revealing decomposition, min-norm solution
      Eigen::MatrixXd xs(data_->x.rows(), d);
      for (Eigen::Index i = 0; i < d; ++i) xs.col(i) = data_->x.col(cols[i]);
      Eigen::MatrixXd ys(data_->y.rows(), k);
      for (Eigen::Index t = 0; t < k; ++t) ys.col(t) = data_->y.col(targets[t]);
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(xs);
      fit.coef = cod.solve(ys);
      fit.rank_warning = true;
      Eigen::MatrixXd resid = ys - xs * fit.coef;
      fit.sigma = resid.transpose() * resid / static_cast<double>(fit.nobs);
      return fit;
    }
    Eigen::MatrixXd ytys(k, k);
    for (Eigen::Index s = 0; s < k; ++s)
      for (Eigen::Index t = 0; t < k; ++t) ytys(s, t) = yty_(targets[s], targets[t]);
    Eigen::MatrixXd cross = b.transpose() * fit.coef;  // XtY' B
    fit.sigma = (ytys - 0.5 * (cross + cross.transpose())) /
                static_cast<double>(fit.nobs);
    return fit;
  }

 private:
  const StackedData* data_;
  Eigen::MatrixXd xtx_;
  Eigen::MatrixXd xty_;
  Eigen::MatrixXd yty_;
};

std::vector<int> all_channels(int nvars) {
  std::vector<int> channels(static_cast<std::size_t>(nvars));
  for (int c = 0; c < nvars; ++c) channels[static_cast<std::size_t>(c)] = c;
  return channels;
}

TrialList single_trial(const Eigen::MatrixXd& series) { return TrialList{series}; }

void check_sample_size(const TrialList& trials, int order) {
  const int nvars = static_cast<int>(trials.front().rows());
  long total = 0;
  for (const auto& trial : trials) total += trial.cols();
  if (total <= static_cast<long>(order) * nvars + 10)
    throw std::invalid_argument("var: series too short for requested order");
}

double variance_ratio_f(double var_reduced, double var_full) {
  if (!(var_full > 0.0))
    throw std::runtime_error("gc: degenerate fit, full-model residual variance is zero");
  if (!(var_reduced > 0.0))
    throw std::runtime_error("gc: degenerate fit, reduced-model residual variance is zero");
  double f = std::log(var_reduced / var_full);
  if (f < 0.0) {
    if (f <= -1e-12)
      throw std::runtime_error("gc: variance ratio below the numerical floor");
    f = 0.0;
  }
  return f;
}

double score_rate(long hits, long total) {
  return total == 0 ? 1.0 : static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace

double VarModel::spectral_radius() const {
  if (order == 0 || nvars == 0) return 0.0;
  const int dim = nvars * order;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(dim, dim);
  for (int lag = 0; lag < order; ++lag)
    companion.block(0, lag * nvars, nvars, nvars) = coeffs[static_cast<std::size_t>(lag)];
  if (order > 1)
    companion.block(nvars, 0, dim - nvars, dim - nvars)
        .setIdentity();
  return companion.eigenvalues().cwiseAbs().maxCoeff();
}

VarModel fit_var(const TrialList& trials, int order) {
  check_sample_size(trials, order);
  check_channel_variance(trials);
  StackedData data = stack_lags(trials, order, order);
  GramOls solver(data);
  const auto channels = all_channels(data.nvars);
  SubFit fit = solver.fit(design_columns(data.nvars, order, channels), channels);

  VarModel model;
  model.order = order;
  model.nvars = data.nvars;
  model.nobs = fit.nobs;
  model.rank_warning = fit.rank_warning;
  model.sigma = fit.sigma;
  model.intercept = fit.coef.row(0).transpose();
  model.coeffs.resize(static_cast<std::size_t>(order));
  for (int lag = 0; lag < order; ++lag) {
    Eigen::MatrixXd b(data.nvars, data.nvars);
    for (int i = 0; i < data.nvars; ++i)
      for (int j = 0; j < data.nvars; ++j)
        b(i, j) = fit.coef(1 + lag * data.nvars + j, i);
    model.coeffs[static_cast<std::size_t>(lag)] = b;
  }
  return model;
}

VarModel fit_var(const Eigen::MatrixXd& series, int order) {
  return fit_var(single_trial(series), order);
}

int select_order_aic(const TrialList& trials, int max_lags) {
  if (max_lags < 1) throw std::invalid_argument("select_order_aic: max_lags >= 1");
  check_sample_size(trials, max_lags);
  check_channel_variance(trials);
  StackedData data = stack_lags(trials, max_lags, max_lags);
  GramOls solver(data);
  const auto channels = all_channels(data.nvars);
  const double nobs = static_cast<double>(data.x.rows());

  int best_order = 0;
  double best_aic = std::numeric_limits<double>::infinity();
  for (int p = 1; p <= max_lags; ++p) {
    SubFit fit = solver.fit(design_columns(data.nvars, p, channels), channels);
    Eigen::LLT<Eigen::MatrixXd> llt(fit.sigma);
    if (llt.info() != Eigen::Success) continue;
    double log_det = 0.0;
    for (Eigen::Index i = 0; i < fit.sigma.rows(); ++i)
      log_det += 2.0 * std::log(llt.matrixL()(i, i));
    const double aic =
        log_det + 2.0 * p * data.nvars * data.nvars / nobs;
    if (std::isfinite(aic) && aic < best_aic) {
      best_aic = aic;
      best_order = p;
    }
  }
  if (best_order == 0)
    throw std::runtime_error("select_order_aic: every candidate fit failed");
  return best_order;
}

int select_order_aic(const Eigen::MatrixXd& series, int max_lags) {
  return select_order_aic(single_trial(series), max_lags);
}

std::pair<double, bool> gc_significance(double f_stat, long nobs, int order,
                                        int source_channels, double alpha) {
  if (!(std::isfinite(f_stat)) || nobs <= 0)
    throw std::invalid_argument("gc_significance: bad inputs");
  const int dof = order * source_channels;
  if (dof < 1) throw std::invalid_argument("gc_significance: zero degrees of freedom");
  const double stat = std::max(f_stat, 0.0) * static_cast<double>(nobs);
  boost::math::chi_squared dist(static_cast<double>(dof));
  const double p_value = boost::math::cdf(boost::math::complement(dist, stat));
  return {p_value, p_value < alpha};
}

GcResult gc_conditional(const TrialList& trials, int source, int target,
                        int order, double alpha) {
  const int nvars = static_cast<int>(trials.front().rows());
  if (source < 0 || source >= nvars || target < 0 || target >= nvars ||
      source == target)
    throw std::invalid_argument("gc: bad channel indices");
  check_sample_size(trials, order);
  check_channel_variance(trials);
  StackedData data = stack_lags(trials, order, order);
  GramOls solver(data);
  const std::vector<int> targets{target};

  SubFit full = solver.fit(design_columns(nvars, order, all_channels(nvars)), targets);
  std::vector<int> reduced_channels;
  for (int c = 0; c < nvars; ++c)
    if (c != source) reduced_channels.push_back(c);
  SubFit reduced =
      solver.fit(design_columns(nvars, order, reduced_channels), targets);

  GcResult result;
  result.source = source;
  result.target = target;
  for (int c = 0; c < nvars; ++c)
    if (c != source && c != target) result.conditioning.push_back(c);
  result.f_stat = variance_ratio_f(reduced.sigma(0, 0), full.sigma(0, 0));
  std::tie(result.p_value, result.significant) =
      gc_significance(result.f_stat, full.nobs, order, 1, alpha);
  return result;
}

GcResult gc_conditional(const Eigen::MatrixXd& series, int source, int target,
                        int order, double alpha) {
  return gc_conditional(single_trial(series), source, target, order, alpha);
}

GcResult gc_pairwise(const Eigen::VectorXd& source, const Eigen::VectorXd& target,
                     int order, double alpha) {
  if (source.size() != target.size())
    throw std::invalid_argument("gc_pairwise: length mismatch");
  Eigen::MatrixXd series(2, source.size());
  series.row(0) = source.transpose();
  series.row(1) = target.transpose();
  GcResult result = gc_conditional(series, 0, 1, order, alpha);
  return result;
}

namespace {

ConnectivityMatrix connectivity_impl(const TrialList& trials, double alpha,
                                     const std::optional<Eigen::MatrixXi>& reference,
                                     int max_lags) {
  const int nvars = static_cast<int>(trials.front().rows());
  if (nvars < 2) throw std::invalid_argument("connectivity: need >= 2 channels");

  ConnectivityMatrix conn;
  conn.order = select_order_aic(trials, max_lags);
  conn.adjacency = Eigen::MatrixXi::Zero(nvars, nvars);
  conn.fstats = Eigen::MatrixXd::Zero(nvars, nvars);
  conn.pvalues = Eigen::MatrixXd::Ones(nvars, nvars);

  StackedData data = stack_lags(trials, conn.order, conn.order);
  GramOls solver(data);
  const auto channels = all_channels(nvars);
  SubFit full = solver.fit(design_columns(nvars, conn.order, channels), channels);

  for (int source = 0; source < nvars; ++source) {
    std::vector<int> reduced_channels;
    for (int c = 0; c < nvars; ++c)
      if (c != source) reduced_channels.push_back(c);
    SubFit reduced =
        solver.fit(design_columns(nvars, conn.order, reduced_channels), channels);
    for (int target = 0; target < nvars; ++target) {
      if (target == source) continue;
      const double f =
          variance_ratio_f(reduced.sigma(target, target), full.sigma(target, target));
      auto [p_value, significant] =
          gc_significance(f, full.nobs, conn.order, 1, alpha);
      conn.fstats(target, source) = f;
      conn.pvalues(target, source) = p_value;
      conn.adjacency(target, source) = significant ? 1 : 0;
    }
  }

  if (reference) {
    if (reference->rows() != nvars || reference->cols() != nvars)
      throw std::invalid_argument("connectivity: reference dimension mismatch");
    conn.reference = *reference;
    long tp = 0, fn = 0, tn = 0, fp = 0;
    for (int i = 0; i < nvars; ++i)
      for (int j = 0; j < nvars; ++j) {
        if (i == j) continue;
        const bool truth = (*reference)(i, j) != 0;
        const bool found = conn.adjacency(i, j) != 0;
        if (truth && found) ++tp;
        if (truth && !found) ++fn;
        if (!truth && !found) ++tn;
        if (!truth && found) ++fp;
      }
    conn.sensitivity = score_rate(tp, tp + fn);
    conn.specificity = score_rate(tn, tn + fp);
  }
  return conn;
}

}  // namespace

ConnectivityMatrix connectivity_from_trials(
    const TrialList& trials, double alpha,
    const std::optional<Eigen::MatrixXi>& reference, int max_lags) {
  return connectivity_impl(trials, alpha, reference, max_lags);
}

ConnectivityMatrix connectivity_from_series(
    const Eigen::MatrixXd& series, double alpha,
    const std::optional<Eigen::MatrixXi>& reference, int max_lags) {
  return connectivity_impl(single_trial(series), alpha, reference, max_lags);
}

Eigen::MatrixXd simulate_var(const std::vector<Eigen::MatrixXd>& coeffs,
                             const Eigen::MatrixXd& sigma, int len,
                             std::uint64_t seed, int burn_in) {
  if (coeffs.empty()) throw std::invalid_argument("simulate_var: no coefficients");
  const int nvars = static_cast<int>(coeffs.front().rows());
  const int order = static_cast<int>(coeffs.size());
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("simulate_var: sigma not positive definite");
  const Eigen::MatrixXd chol = llt.matrixL();

  CounterRng rng(seed);
  const int total = len + burn_in;
  Eigen::MatrixXd series = Eigen::MatrixXd::Zero(nvars, total);
  Eigen::VectorXd noise(nvars);
  for (int t = 0; t < total; ++t) {
    for (int c = 0; c < nvars; ++c)
      noise[c] = rng.normal(static_cast<std::uint64_t>(t) * nvars + c);
    Eigen::VectorXd value = chol * noise;
    for (int lag = 1; lag <= order && lag <= t; ++lag)
      value += coeffs[static_cast<std::size_t>(lag - 1)] * series.col(t - lag);
    series.col(t) = value;
  }
  return series.rightCols(len);
}

}  // namespace csc
