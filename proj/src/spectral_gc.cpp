#include "csc/spectral_gc.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace csc {

namespace {

void check_grid(int grid_size) {
  if (grid_size < 64)
    throw std::invalid_argument("spectral_gc: grid size must be >= 64");
}

double grid_frequency(int j, int grid_size) {
  return std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid_size);
}

}  // namespace

std::vector<Eigen::MatrixXcd> transfer_function(const VarModel& model,
                                                int grid_size) {
  check_grid(grid_size);
  if (!model.stable())
    throw std::invalid_argument("transfer_function: model is not stationary");
  const int nv = model.nvars;
  std::vector<Eigen::MatrixXcd> h(static_cast<std::size_t>(grid_size));
  for (int j = 0; j < grid_size; ++j) {
    const double f = grid_frequency(j, grid_size);
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Identity(nv, nv);
    for (int lag = 1; lag <= model.order; ++lag) {
      const std::complex<double> phase =
          std::exp(std::complex<double>(0.0, -f * lag));
      b -= model.coeffs[static_cast<std::size_t>(lag - 1)].cast<std::complex<double>>() * phase;
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(b);
    if (!lu.isInvertible())
      throw std::runtime_error(
          "transfer_function: lag polynomial singular at frequency " +
          std::to_string(f));
    h[static_cast<std::size_t>(j)] = lu.inverse();
  }
  return h;
}

std::vector<Eigen::MatrixXcd> spectral_density(const VarModel& model,
                                               int grid_size) {
  std::vector<Eigen::MatrixXcd> h = transfer_function(model, grid_size);
  const Eigen::MatrixXcd sigma = model.sigma.cast<std::complex<double>>();
  for (auto& hk : h) hk = hk * sigma * hk.adjoint();
  return h;
}

TransferDecomposition geweke_transform(const std::vector<Eigen::MatrixXcd>& h,
                                       const Eigen::MatrixXd& sigma, int target) {
  if (sigma.rows() != 2 || sigma.cols() != 2)
    throw std::invalid_argument("geweke_transform: bivariate models only");
  if (target != 0 && target != 1)
    throw std::invalid_argument("geweke_transform: target must be 0 or 1");
  const int other = 1 - target;
  const double s11 = sigma(target, target);
  if (!(s11 > 0.0))
    throw std::invalid_argument("geweke_transform: degenerate target noise variance");
  const double s12 = sigma(target, other);
  const double s22 = sigma(other, other);
  const double ratio = s12 / s11;

  TransferDecomposition dec;
  dec.target = target;
  dec.sigma << s11, s12, s12, s22;
  dec.sigma_tilde22 = s22 - s12 * s12 / s11;
  dec.h.reserve(h.size());
  dec.h_tilde.reserve(h.size());
  for (const auto& hk : h) {
    if (hk.rows() != 2 || hk.cols() != 2)
      throw std::invalid_argument("geweke_transform: bivariate models only");
    Eigen::Matrix2cd ordered;
    ordered << hk(target, target), hk(target, other),
               hk(other, target), hk(other, other);
    Eigen::Matrix2cd tilde;
    tilde(0, 0) = ordered(0, 0) + ratio * ordered(0, 1);
    tilde(0, 1) = ordered(0, 1);
    tilde(1, 0) = ordered(1, 0) + ratio * ordered(1, 1);
    tilde(1, 1) = ordered(1, 1);
    dec.h.push_back(ordered);
    dec.h_tilde.push_back(tilde);
  }
  return dec;
}

SpectralGcCurve spectral_gc(const VarModel& model, int source, int target,
                            int grid_size) {
  if (model.nvars != 2)
    throw std::invalid_argument(
        "spectral_gc: bivariate models only; refit the channel pair first");
  if (source == target || source < 0 || source > 1 || target < 0 || target > 1)
    throw std::invalid_argument("spectral_gc: bad channel indices");
  check_grid(grid_size);

  const std::vector<Eigen::MatrixXcd> h = transfer_function(model, grid_size);
  const TransferDecomposition dec = geweke_transform(h, model.sigma, target);
  const double sigma11 = dec.sigma(0, 0);

  SpectralGcCurve curve;
  curve.source = source;
  curve.target = target;
  curve.freqs.resize(grid_size);
  curve.values.resize(grid_size);
  for (int j = 0; j < grid_size; ++j) {
    const auto idx = static_cast<std::size_t>(j);
    curve.freqs[j] = grid_frequency(j, grid_size);
    const double intrinsic = std::norm(dec.h_tilde[idx](0, 0)) * sigma11;
    const double causal = std::norm(dec.h[idx](0, 1)) * dec.sigma_tilde22;
    if (!(intrinsic > 0.0)) {
      if (intrinsic > -1e-10 && causal >= 0.0) {
        curve.values[j] = 0.0;  // clamp: intrinsic power at roundoff scale
        continue;
      }
      throw std::runtime_error(
          "spectral_gc: nonpositive intrinsic power at frequency " +
          std::to_string(curve.freqs[j]));
    }
    double value = std::log1p(causal / intrinsic);
    if (value < 0.0) value = 0.0;
    curve.values[j] = value;
  }
  curve.integral = curve.values.mean();
  return curve;
}

double integrate_spectral_gc(const SpectralGcCurve& curve) {
  if (curve.values.size() < 64)
    throw std::invalid_argument("integrate_spectral_gc: grid size must be >= 64");
  return curve.values.mean();
}

}  // namespace csc
