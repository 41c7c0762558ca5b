#include "csc/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "csc/rng.hpp"

namespace csc {

namespace {

// Transpose-apply of the structured block: pad the first `rows` residual
// entries to full length, then multiply by the transposed circulant (its
// spectrum is the conjugate of the forward one).
Eigen::VectorXd structured_adjoint(const SensingMatrix& phi,
                                   const Eigen::VectorXd& r_head, int rows) {
  const int n = phi.n;
  const int fft_len = phi.structure == MatrixKind::Circulant ? n : 2 * n;

  std::vector<double> padded(static_cast<std::size_t>(fft_len), 0.0);
  for (int i = 0; i < rows; ++i) padded[static_cast<std::size_t>(i)] = r_head[i];

  std::vector<double> column;
  if (phi.structure == MatrixKind::Circulant) {
    column = phi.generator;
  } else {
    column.assign(static_cast<std::size_t>(2 * n), 0.0);
    // first column of the 2n circulant embedding of the Toeplitz matrix
    column[0] = phi.generator[static_cast<std::size_t>(phi.n - 1)];
    for (int i = 1; i < n; ++i)
      column[static_cast<std::size_t>(i)] =
          phi.generator[static_cast<std::size_t>(-i + phi.n - 1)];
    column[static_cast<std::size_t>(n)] = column[0];
    for (int i = 1; i < n; ++i)
      column[static_cast<std::size_t>(n + i)] =
          phi.generator[static_cast<std::size_t>(n - i + phi.n - 1)];
  }

  cvec gf = fft(column);
  cvec rf = fft(padded);
  for (std::size_t i = 0; i < gf.size(); ++i) rf[i] *= std::conj(gf[i]);
  std::vector<double> full = ifft_real(rf);

  Eigen::VectorXd out(n);
  for (int j = 0; j < n; ++j) out[j] = full[static_cast<std::size_t>(j)];
  return out;
}

Eigen::MatrixXd support_columns(const SensingMatrix& phi,
                                const std::vector<int>& support) {
  Eigen::MatrixXd cols(phi.m, static_cast<Eigen::Index>(support.size()));
  for (std::size_t i = 0; i < support.size(); ++i)
    cols.col(static_cast<Eigen::Index>(i)) = phi.column(support[i]);
  return cols;
}

}  // namespace

Eigen::VectorXd adjoint_apply(const SensingMatrix& phi, const Eigen::VectorXd& r) {
  if (r.size() != phi.m)
    throw std::invalid_argument("adjoint_apply: residual length mismatch");
  if (phi.kind == MatrixKind::Gaussian) {
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        mat(phi.generator.data(), phi.m, phi.n);
    return mat.transpose() * r;
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(phi.n);
  if (phi.structured_rows > 0)
    out = structured_adjoint(phi, r.head(phi.structured_rows), phi.structured_rows);
  for (int i = phi.structured_rows; i < phi.m; ++i) {
    Eigen::Map<const Eigen::VectorXd> row(
        phi.tail.data() + static_cast<std::size_t>(i - phi.structured_rows) * phi.n,
        phi.n);
    out += r[i] * row;
  }
  return out;
}

RecoveryResult recover_omp(const Eigen::VectorXd& y, const SensingMatrix& phi,
                           int k_max, double tol) {
  if (y.size() != phi.m)
    throw std::invalid_argument("recover_omp: measurement length mismatch");
  if (k_max < 1 || 2 * k_max > phi.m)
    throw std::invalid_argument("recover_omp: need 1 <= k_max <= m/2");

  RecoveryResult result;
  result.z_hat = Eigen::VectorXd::Zero(phi.n);
  Eigen::VectorXd residual = y;
  std::vector<int> support;
  std::vector<char> selected(static_cast<std::size_t>(phi.n), 0);
  Eigen::VectorXd coef;
  bool rank_deficient = false;

  while (static_cast<int>(support.size()) < k_max && residual.norm() >= tol) {
    const Eigen::VectorXd corr = adjoint_apply(phi, residual);
    int best = -1;
    double best_abs = -1.0;
    for (int j = 0; j < phi.n; ++j) {
      if (selected[static_cast<std::size_t>(j)]) continue;
      const double a = std::abs(corr[j]);
      if (a > best_abs) {  // strict comparison keeps the lowest index on ties
        best_abs = a;
        best = j;
      }
    }
    if (best < 0) break;
    support.push_back(best);
    selected[static_cast<std::size_t>(best)] = 1;

    const Eigen::MatrixXd cols = support_columns(phi, support);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(cols);
    if (qr.rank() < cols.cols()) {
      rank_deficient = true;
      coef = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(cols).solve(y);
    } else {
      coef = qr.solve(y);
    }
    residual = y - cols * coef;
    ++result.iterations;
  }

  for (std::size_t i = 0; i < support.size(); ++i)
    result.z_hat[support[i]] = coef[static_cast<Eigen::Index>(i)];
  result.residual_norm = (y - apply(phi, result.z_hat)).norm();
  result.converged = !rank_deficient && result.residual_norm < tol;
  return result;
}

RecoveryResult recover_basis_pursuit(const Eigen::VectorXd& y,
                                     const SensingMatrix& phi, double lambda,
                                     int max_iter, double tol) {
  if (y.size() != phi.m)
    throw std::invalid_argument("recover_basis_pursuit: measurement length mismatch");
  if (!(lambda > 0.0))
    throw std::invalid_argument("recover_basis_pursuit: lambda must be positive");

  // largest squared singular value of phi by power iteration
  CounterRng rng(0x5eedULL);
  Eigen::VectorXd v(phi.n);
  for (int j = 0; j < phi.n; ++j) v[j] = rng.normal(static_cast<std::uint64_t>(j));
  v.normalize();
  double lipschitz = 1.0;
  for (int it = 0; it < 60; ++it) {
    v = adjoint_apply(phi, apply(phi, v));
    lipschitz = v.norm();
    if (lipschitz == 0.0) break;
    v /= lipschitz;
  }
  lipschitz = std::max(lipschitz * 1.02, 1e-12);

  const double step = 1.0 / lipschitz;
  const double shrink = lambda * step;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(phi.n);
  Eigen::VectorXd momentum = z;
  double theta = 1.0;

  RecoveryResult result;
  for (int it = 1; it <= max_iter; ++it) {
    const Eigen::VectorXd grad = adjoint_apply(phi, apply(phi, momentum) - y);
    Eigen::VectorXd z_next = momentum - step * grad;
    for (int j = 0; j < phi.n; ++j) {
      const double value = z_next[j];
      z_next[j] = value > shrink ? value - shrink
                                 : (value < -shrink ? value + shrink : 0.0);
    }
    const double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
    momentum = z_next + ((theta - 1.0) / theta_next) * (z_next - z);
    const double change = (z_next - z).norm();
    z = z_next;
    theta = theta_next;
    result.iterations = it;
    if (change <= tol * std::max(1.0, z.norm())) {
      result.converged = true;
      break;
    }
  }
  result.z_hat = z;
  result.residual_norm = (y - apply(phi, z)).norm();
  return result;
}

RecoveryResult debias_on_support(const RecoveryResult& result,
                                 const Eigen::VectorXd& y, const SensingMatrix& phi,
                                 double support_threshold) {
  std::vector<int> support;
  for (int j = 0; j < phi.n; ++j)
    if (std::abs(result.z_hat[j]) > support_threshold) support.push_back(j);
  RecoveryResult out = result;
  if (support.empty()) {
    out.residual_norm = (y - apply(phi, out.z_hat)).norm();
    return out;
  }
  const Eigen::MatrixXd cols = support_columns(phi, support);
  const Eigen::VectorXd coef =
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd>(cols).solve(y);
  out.z_hat = Eigen::VectorXd::Zero(phi.n);
  for (std::size_t i = 0; i < support.size(); ++i)
    out.z_hat[support[i]] = coef[static_cast<Eigen::Index>(i)];
  out.residual_norm = (y - apply(phi, out.z_hat)).norm();
  return out;
}

double reconstruction_mse(const Eigen::VectorXd& z, const Eigen::VectorXd& z_hat) {
  if (z.size() != z_hat.size())
    throw std::invalid_argument("reconstruction_mse: length mismatch");
  if (z.size() == 0) throw std::invalid_argument("reconstruction_mse: empty input");
  return (z - z_hat).squaredNorm() / static_cast<double>(z.size());
}

bool recovery_success(const SparsePair& pair, const SensingMatrix& phi,
                      double threshold) {
  const int k_max = std::max(1, phi.m / 4);
  for (const Eigen::VectorXd* z : {&pair.z1, &pair.z2}) {
    const Eigen::VectorXd y = apply(phi, *z);
    const double tol = 1e-10 * (1.0 + y.norm());
    const RecoveryResult rec = recover_omp(y, phi, k_max, tol);
    if (reconstruction_mse(*z, rec.z_hat) >= threshold) return false;
  }
  return true;
}

}  // namespace csc
