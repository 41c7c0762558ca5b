#ifndef CSC_VAR_GC_HPP
#define CSC_VAR_GC_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

namespace csc {

/// Multi-trial data: one nvars x len matrix per trial. Lag windows never
/// span trial boundaries.
using TrialList = std::vector<Eigen::MatrixXd>;

struct VarModel {
  std::vector<Eigen::MatrixXd> coeffs;  // B_1..B_p, each nvars x nvars
  Eigen::VectorXd intercept;
  Eigen::MatrixXd sigma;  // residual covariance, 1/nobs normalization
  int order = 0;
  long nobs = 0;
  int nvars = 0;
  bool rank_warning = false;

  double spectral_radius() const;  // of the companion matrix
  bool stable() const { return spectral_radius() < 1.0; }
};

struct GcResult {
  double f_stat = 0.0;
  double p_value = 1.0;
  bool significant = false;
  int source = 0;
  int target = 0;
  std::vector<int> conditioning;
};

struct ConnectivityMatrix {
  Eigen::MatrixXi adjacency;  // (target, source) = 1 when source -> target
  Eigen::MatrixXd fstats;
  Eigen::MatrixXd pvalues;
  int order = 0;
  std::optional<Eigen::MatrixXi> reference;
  // TP/(TP+FN) and TN/(TN+FP) over off-diagonal entries; a class with no
  // members scores 1 by convention.
  double sensitivity = 0.0;
  double specificity = 0.0;
};

VarModel fit_var(const Eigen::MatrixXd& series, int order);
VarModel fit_var(const TrialList& trials, int order);

/// Argmin over p = 1..max_lags of  ln det Sigma_p + 2 p nvars^2 / nobs,
/// all candidates fitted on the common window that trims max_lags points
/// from the start of every trial. Ties resolve to the smaller order.
int select_order_aic(const Eigen::MatrixXd& series, int max_lags = 30);
int select_order_aic(const TrialList& trials, int max_lags = 30);

/// F = ln( var(eps_reduced) / var(eps_full) ) for target regressed with and
/// without the source's lags, same estimation window.
GcResult gc_pairwise(const Eigen::VectorXd& source, const Eigen::VectorXd& target,
                     int order, double alpha = 0.01);

/// Conditional version: both models include every other channel's lags.
GcResult gc_conditional(const Eigen::MatrixXd& series, int source, int target,
                        int order, double alpha = 0.01);
GcResult gc_conditional(const TrialList& trials, int source, int target,
                        int order, double alpha = 0.01);

/// Large-sample chi-square test: nobs * F ~ chi2(order * source_channels)
/// under the null. Returns {p_value, significant at alpha}.
std::pair<double, bool> gc_significance(double f_stat, long nobs, int order,
                                        int source_channels = 1,
                                        double alpha = 0.01);

/// AIC order selection once, then conditional GC for every ordered pair.
/// No multiple-comparison correction.
ConnectivityMatrix connectivity_from_series(
    const Eigen::MatrixXd& series, double alpha = 0.01,
    const std::optional<Eigen::MatrixXi>& reference = std::nullopt,
    int max_lags = 30);
ConnectivityMatrix connectivity_from_trials(
    const TrialList& trials, double alpha = 0.01,
    const std::optional<Eigen::MatrixXi>& reference = std::nullopt,
    int max_lags = 30);

/// Simulate a VAR with Gaussian innovations of covariance sigma. Burn-in
/// samples are discarded. Deterministic in (coeffs, sigma, len, seed).
Eigen::MatrixXd simulate_var(const std::vector<Eigen::MatrixXd>& coeffs,
                             const Eigen::MatrixXd& sigma, int len,
                             std::uint64_t seed, int burn_in = 500);

}  // namespace csc

#endif
