#ifndef CSC_RECOVERY_HPP
#define CSC_RECOVERY_HPP

#include <Eigen/Dense>

#include "csc/sensing.hpp"
#include "csc/sigsim.hpp"

namespace csc {

struct RecoveryResult {
  Eigen::VectorXd z_hat;
  double residual_norm = 0.0;  // ||y - phi z_hat||_2, recomputed at return
  int iterations = 0;
  bool converged = false;
};

/// Orthogonal matching pursuit: greedy support growth by maximum absolute
/// residual correlation (ties to the lowest column index), least-squares
/// refit on the support each iteration. Stops at residual < tol or k_max
/// atoms.
RecoveryResult recover_omp(const Eigen::VectorXd& y, const SensingMatrix& phi,
                           int k_max, double tol = 1e-9);

/// min 0.5 ||phi z - y||^2 + lambda ||z||_1 by accelerated proximal
/// gradient with step 1/L, L from power iteration.
RecoveryResult recover_basis_pursuit(const Eigen::VectorXd& y,
                                     const SensingMatrix& phi, double lambda,
                                     int max_iter = 2000, double tol = 1e-10);

/// Least-squares refit on the detected support (entries above threshold);
/// removes the l1 shrinkage bias before MSE evaluation.
RecoveryResult debias_on_support(const RecoveryResult& result,
                                 const Eigen::VectorXd& y, const SensingMatrix& phi,
                                 double support_threshold = 1e-6);

double reconstruction_mse(const Eigen::VectorXd& z, const Eigen::VectorXd& z_hat);

/// True iff OMP reconstruction of both compressed channels lands under the
/// MSE threshold.
bool recovery_success(const SparsePair& pair, const SensingMatrix& phi,
                      double threshold = 1e-5);

/// phi^T r without materializing phi (FFT for structured rows).
Eigen::VectorXd adjoint_apply(const SensingMatrix& phi, const Eigen::VectorXd& r);

}  // namespace csc

#endif
