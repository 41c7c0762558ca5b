#ifndef CSC_SPECTRAL_GC_HPP
#define CSC_SPECTRAL_GC_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "csc/var_gc.hpp"

namespace csc {

/// Per-frequency causal influence I(f) >= 0 on a uniform grid over [0, pi),
/// plus its normalized integral over the full circle (equals the curve mean
/// by the even symmetry of real-process spectra).
struct SpectralGcCurve {
  Eigen::VectorXd freqs;   // radians/sample
  Eigen::VectorXd values;  // I(f), clamped at 0 from below
  double integral = 0.0;
  int source = 0;
  int target = 0;
};

/// Transfer matrices before/after the covariance-orthogonalizing transform.
/// Matrices are stored target-first: index (0,*) is the target channel.
struct TransferDecomposition {
  std::vector<Eigen::Matrix2cd> h;
  std::vector<Eigen::Matrix2cd> h_tilde;
  Eigen::Matrix2d sigma;        // noise covariance, target-first ordering
  double sigma_tilde22 = 0.0;   // Sigma22 - Sigma12^2 / Sigma11
  int target = 0;               // original channel index placed first
};

/// H(f) = [I - sum_k B_k e^{-ifk}]^{-1} on the uniform grid of size F over
/// [0, pi). Throws if the lag polynomial is singular at a grid frequency.
std::vector<Eigen::MatrixXcd> transfer_function(const VarModel& model, int grid_size);

/// S(f) = H(f) Sigma H*(f); Hermitian positive semidefinite at each f.
std::vector<Eigen::MatrixXcd> spectral_density(const VarModel& model, int grid_size);

/// Left-multiplies the lag system so target and source innovations become
/// uncorrelated, exposing the intrinsic and causal power terms of the
/// target autospectrum.
TransferDecomposition geweke_transform(const std::vector<Eigen::MatrixXcd>& h,
                                       const Eigen::MatrixXd& sigma, int target);

/// I(f) = ln( S11(f) / intrinsic(f) ) for a bivariate model; the integral
/// recovers the time-domain Granger statistic.
SpectralGcCurve spectral_gc(const VarModel& model, int source, int target,
                            int grid_size = 1024);

/// Trapezoid rule over the symmetric extension of the half grid (the even
/// doubling makes it the sample mean). Equals curve.integral.
double integrate_spectral_gc(const SpectralGcCurve& curve);

}  // namespace csc

#endif
