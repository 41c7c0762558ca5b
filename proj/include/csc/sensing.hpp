#ifndef CSC_SENSING_HPP
#define CSC_SENSING_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "csc/fft.hpp"

namespace csc {

enum class MatrixKind { Circulant, Toeplitz, PartialStructured, Gaussian };

std::string to_string(MatrixKind kind);

/// m x n sensing operator stored by generator, never densely (except the
/// Gaussian kind, whose generator *is* its entries). Immutable after
/// construction; safe to share across workers.
///
/// Generator layout:
///   Circulant          first column a_0..a_{n-1} of the n x n circulant;
///                      entry (i,j) = a_{(i-j) mod n}, rows 0..m-1 kept.
///   Toeplitz           2n-1 diagonal values d_{-(n-1)}..d_{n-1} stored at
///                      offset j+n-1; entry (i,j) = d_{j-i}, rows 0..m-1.
///   Gaussian           all m*n entries, row major.
///   PartialStructured  generator holds the structured part (as above for
///                      `structure`); rows structured_rows..m-1 live in
///                      `tail`, row major.
struct SensingMatrix {
  MatrixKind kind = MatrixKind::Circulant;
  MatrixKind structure = MatrixKind::Circulant;  // base kind for partial rows
  int n = 0;
  int m = 0;
  int structured_rows = 0;  // S; == m for fully structured, 0 for Gaussian
  std::uint64_t seed = 0;
  std::vector<double> generator;
  std::vector<double> tail;

  /// Dense materialization. For tests, diagnostics and small problems only.
  Eigen::MatrixXd materialize() const;

  /// Column j as a length-m dense vector (cheap, no materialization).
  Eigen::VectorXd column(int j) const;
};

/// DFT of a circulant first column; the diagonal of D in C = F^-1 D F.
struct DiagonalSpectrum {
  Eigen::VectorXcd coefficients;
  int n = 0;
};

SensingMatrix gen_circulant(int n, int m, std::uint64_t seed);
SensingMatrix gen_toeplitz(int n, int m, std::uint64_t seed);
SensingMatrix gen_partial_structured(int n, int m, int structured_rows,
                                     MatrixKind structure, std::uint64_t seed);
SensingMatrix gen_gaussian(int n, int m, std::uint64_t seed);

/// phi * z. Structured kinds run through the FFT (Toeplitz via the 2n
/// circulant embedding); Gaussian and partial tail rows are direct inner
/// products.
Eigen::VectorXd apply(const SensingMatrix& phi, const Eigen::VectorXd& z);

/// Same product, direct O(m*n) evaluation. Reference path for tests.
Eigen::VectorXd apply_naive(const SensingMatrix& phi, const Eigen::VectorXd& z);

DiagonalSpectrum dft_diagonalize(const std::vector<double>& generator);

/// Verifies the frequency-scaling relation behind circulant compression:
/// the full-length circulant product (computed directly, no FFT) has
/// spectrum G_k * Z(f_k); returns max_k |Y(f_k) - G_k Z(f_k)| over the
/// first m bins of the n-point grid.
double scaled_spectrum_check(const SensingMatrix& phi, const Eigen::VectorXd& z);

/// Monte-Carlo lower bound on the isometry constant delta_k: max over
/// trials of | ||phi z||^2 - 1 | for random unit-norm k-sparse z.
double estimate_rip_delta(const SensingMatrix& phi, int k, int trials,
                          std::uint64_t seed);

/// Copy with generator (and tail) multiplied by factor; the operator scales
/// by the same factor.
SensingMatrix scaled(const SensingMatrix& phi, double factor);

/// JSON round-trip of the matrix spec {kind, n, m, S, seed}; generators are
/// re-derived from the seed, never serialized.
std::string matrix_spec_to_json(const SensingMatrix& phi);
SensingMatrix matrix_spec_from_json(const std::string& json_text);

}  // namespace csc

#endif
