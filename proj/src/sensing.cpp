#include "csc/sensing.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "csc/rng.hpp"

namespace csc {

namespace {

constexpr std::uint64_t kStructuredStream = 0;
constexpr std::uint64_t kTailStream = 1;

void check_dims(int n, int m) {
  if (n <= 0 || m <= 0 || m >= n)
    throw std::invalid_argument("sensing: need 0 < m < n");
}

// Toeplitz diagonal d_j, j in [-(n-1), n-1].
double toeplitz_diag(const SensingMatrix& phi, int j) {
  return phi.generator[static_cast<std::size_t>(j + phi.n - 1)];
}

// First column of the 2n circulant that embeds the Toeplitz matrix:
// g[0] = d_0, g[i] = d_{-i} for 1 <= i <= n-1, g[n] unused by the first n
// outputs (set to d_0), g[n+i] = d_{n-i} for 1 <= i <= n-1.
std::vector<double> toeplitz_embedding_column(const SensingMatrix& phi) {
  const int n = phi.n;
  std::vector<double> g(static_cast<std::size_t>(2 * n));
  g[0] = toeplitz_diag(phi, 0);
  for (int i = 1; i < n; ++i) g[static_cast<std::size_t>(i)] = toeplitz_diag(phi, -i);
  g[static_cast<std::size_t>(n)] = toeplitz_diag(phi, 0);
  for (int i = 1; i < n; ++i)
    g[static_cast<std::size_t>(n + i)] = toeplitz_diag(phi, n - i);
  return g;
}

// Full-length structured product: circulant convolution for circulant
// generators, 2n embedding for Toeplitz. Returns n entries.
std::vector<double> structured_product_fft(const SensingMatrix& phi,
                                           const Eigen::VectorXd& z) {
  const int n = phi.n;
  if (phi.structure == MatrixKind::Circulant) {
    std::vector<double> zv(z.data(), z.data() + n);
    return circular_convolve(phi.generator, zv);
  }
  std::vector<double> zpad(static_cast<std::size_t>(2 * n), 0.0);
  for (int i = 0; i < n; ++i) zpad[static_cast<std::size_t>(i)] = z[i];
  std::vector<double> full = circular_convolve(toeplitz_embedding_column(phi), zpad);
  full.resize(static_cast<std::size_t>(n));
  return full;
}

double structured_entry(const SensingMatrix& phi, int i, int j) {
  if (phi.structure == MatrixKind::Circulant) {
    int idx = (i - j) % phi.n;
    if (idx < 0) idx += phi.n;
    return phi.generator[static_cast<std::size_t>(idx)];
  }
  return toeplitz_diag(phi, j - i);
}

}  // namespace

std::string to_string(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::Circulant: return "circulant";
    case MatrixKind::Toeplitz: return "toeplitz";
    case MatrixKind::PartialStructured: return "partial_structured";
    case MatrixKind::Gaussian: return "gaussian";
  }
  return "unknown";
}

Eigen::MatrixXd SensingMatrix::materialize() const {
  Eigen::MatrixXd out(m, n);
  if (kind == MatrixKind::Gaussian) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        out(i, j) = generator[static_cast<std::size_t>(i) * n + j];
    return out;
  }
  for (int i = 0; i < structured_rows; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = structured_entry(*this, i, j);
  for (int i = structured_rows; i < m; ++i)
    for (int j = 0; j < n; ++j)
      out(i, j) = tail[static_cast<std::size_t>(i - structured_rows) * n + j];
  return out;
}

Eigen::VectorXd SensingMatrix::column(int j) const {
  if (j < 0 || j >= n) throw std::invalid_argument("column index out of range");
  Eigen::VectorXd col(m);
  if (kind == MatrixKind::Gaussian) {
    for (int i = 0; i < m; ++i)
      col[i] = generator[static_cast<std::size_t>(i) * n + j];
    return col;
  }
  for (int i = 0; i < structured_rows; ++i) col[i] = structured_entry(*this, i, j);
  for (int i = structured_rows; i < m; ++i)
    col[i] = tail[static_cast<std::size_t>(i - structured_rows) * n + j];
  return col;
}

SensingMatrix gen_circulant(int n, int m, std::uint64_t seed) {
  check_dims(n, m);
  SensingMatrix phi;
  phi.kind = MatrixKind::Circulant;
  phi.structure = MatrixKind::Circulant;
  phi.n = n;
  phi.m = m;
  phi.structured_rows = m;
  phi.seed = seed;
  phi.generator =
      CounterRng(seed).derive(kStructuredStream).normal_vector(static_cast<std::size_t>(n));
  return phi;
}

SensingMatrix gen_toeplitz(int n, int m, std::uint64_t seed) {
  check_dims(n, m);
  SensingMatrix phi;
  phi.kind = MatrixKind::Toeplitz;
  phi.structure = MatrixKind::Toeplitz;
  phi.n = n;
  phi.m = m;
  phi.structured_rows = m;
  phi.seed = seed;
  phi.generator = CounterRng(seed).derive(kStructuredStream)
                      .normal_vector(static_cast<std::size_t>(2 * n - 1));
  return phi;
}

SensingMatrix gen_partial_structured(int n, int m, int structured_rows,
                                     MatrixKind structure, std::uint64_t seed) {
  check_dims(n, m);
  if (structured_rows < 0 || structured_rows > m)
    throw std::invalid_argument("sensing: need 0 <= S <= m");
  if (structure != MatrixKind::Circulant && structure != MatrixKind::Toeplitz)
    throw std::invalid_argument("sensing: partial structure must be circulant or toeplitz");
  SensingMatrix phi;
  phi.kind = MatrixKind::PartialStructured;
  phi.structure = structure;
  phi.n = n;
  phi.m = m;
  phi.structured_rows = structured_rows;
  phi.seed = seed;
  const std::size_t gen_len = structure == MatrixKind::Circulant
                                  ? static_cast<std::size_t>(n)
                                  : static_cast<std::size_t>(2 * n - 1);
  CounterRng rng(seed);
  phi.generator = rng.derive(kStructuredStream).normal_vector(gen_len);
  phi.tail = rng.derive(kTailStream)
                 .normal_vector(static_cast<std::size_t>(m - structured_rows) * n);
  return phi;
}

SensingMatrix gen_gaussian(int n, int m, std::uint64_t seed) {
  check_dims(n, m);
  SensingMatrix phi;
  phi.kind = MatrixKind::Gaussian;
  phi.structure = MatrixKind::Gaussian;
  phi.n = n;
  phi.m = m;
  phi.structured_rows = 0;
  phi.seed = seed;
  phi.generator = CounterRng(seed).derive(kStructuredStream)
                      .normal_vector(static_cast<std::size_t>(m) * n);
  return phi;
}

Eigen::VectorXd apply(const SensingMatrix& phi, const Eigen::VectorXd& z) {
  if (z.size() != phi.n)
    throw std::invalid_argument("apply: signal length does not match n");
  Eigen::VectorXd y(phi.m);
  if (phi.kind == MatrixKind::Gaussian) {
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>
        mat(phi.generator.data(), phi.m, phi.n);
    y = mat * z;
    return y;
  }
  if (phi.structured_rows > 0) {
    std::vector<double> full = structured_product_fft(phi, z);
    for (int i = 0; i < phi.structured_rows; ++i) y[i] = full[static_cast<std::size_t>(i)];
  }
  for (int i = phi.structured_rows; i < phi.m; ++i) {
    Eigen::Map<const Eigen::VectorXd> row(
        phi.tail.data() + static_cast<std::size_t>(i - phi.structured_rows) * phi.n,
        phi.n);
    y[i] = row.dot(z);
  }
  return y;
}

Eigen::VectorXd apply_naive(const SensingMatrix& phi, const Eigen::VectorXd& z) {
  if (z.size() != phi.n)
    throw std::invalid_argument("apply: signal length does not match n");
  Eigen::VectorXd y(phi.m);
  if (phi.kind == MatrixKind::Gaussian) {
    for (int i = 0; i < phi.m; ++i) {
      Eigen::Map<const Eigen::VectorXd> row(
          phi.generator.data() + static_cast<std::size_t>(i) * phi.n, phi.n);
      y[i] = row.dot(z);
    }
    return y;
  }
  for (int i = 0; i < phi.m; ++i) {
    if (i < phi.structured_rows) {
      double acc = 0.0;
      for (int j = 0; j < phi.n; ++j) acc += structured_entry(phi, i, j) * z[j];
      y[i] = acc;
    } else {
      Eigen::Map<const Eigen::VectorXd> row(
          phi.tail.data() + static_cast<std::size_t>(i - phi.structured_rows) * phi.n,
          phi.n);
      y[i] = row.dot(z);
    }
  }
  return y;
}

DiagonalSpectrum dft_diagonalize(const std::vector<double>& generator) {
  if (generator.empty()) throw std::invalid_argument("dft_diagonalize: empty generator");
  cvec g = fft(generator);
  DiagonalSpectrum spec;
  spec.n = static_cast<int>(generator.size());
  spec.coefficients = Eigen::Map<const Eigen::VectorXcd>(g.data(), spec.n);
  return spec;
}

double scaled_spectrum_check(const SensingMatrix& phi, const Eigen::VectorXd& z) {
  if (phi.kind != MatrixKind::Circulant || phi.structured_rows != phi.m)
    throw std::invalid_argument("scaled_spectrum_check: matrix must be fully circulant");
  if (z.size() != phi.n)
    throw std::invalid_argument("scaled_spectrum_check: signal length mismatch");
  const int n = phi.n;
  // Direct (non-FFT) full circulant product keeps the check independent of
  // the FFT apply path it validates.
  std::vector<double> y_full(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      int idx = i - j;
      if (idx < 0) idx += n;
      acc += phi.generator[static_cast<std::size_t>(idx)] * z[j];
    }
    y_full[static_cast<std::size_t>(i)] = acc;
  }
  cvec yf = fft(y_full);
  cvec gf = fft(phi.generator);
  std::vector<double> zv(z.data(), z.data() + n);
  cvec zf = fft(zv);
  double max_dev = 0.0;
  for (int k = 0; k < phi.m; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    max_dev = std::max(max_dev, std::abs(yf[idx] - gf[idx] * zf[idx]));
  }
  return max_dev;
}

double estimate_rip_delta(const SensingMatrix& phi, int k, int trials,
                          std::uint64_t seed) {
  if (k < 1 || trials < 1)
    throw std::invalid_argument("estimate_rip_delta: k >= 1 and trials >= 1");
  CounterRng rng(seed);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    CounterRng trial = rng.derive(static_cast<std::uint64_t>(t));
    std::vector<int> support = trial.derive(0).sample_without_replacement(phi.n, k);
    Eigen::VectorXd z = Eigen::VectorXd::Zero(phi.n);
    CounterRng values = trial.derive(1);
    for (int i = 0; i < k; ++i)
      z[support[static_cast<std::size_t>(i)]] = values.normal(static_cast<std::uint64_t>(i));
    const double norm = z.norm();
    if (norm == 0.0) continue;
    z /= norm;
    const double energy = apply(phi, z).squaredNorm();
    worst = std::max(worst, std::abs(energy - 1.0));
  }
  return worst;
}

SensingMatrix scaled(const SensingMatrix& phi, double factor) {
  SensingMatrix out = phi;
  for (auto& v : out.generator) v *= factor;
  for (auto& v : out.tail) v *= factor;
  return out;
}

std::string matrix_spec_to_json(const SensingMatrix& phi) {
  nlohmann::json j;
  if (phi.kind == MatrixKind::PartialStructured)
    j["kind"] = "partial_" + to_string(phi.structure);
  else
    j["kind"] = to_string(phi.kind);
  j["n"] = phi.n;
  j["m"] = phi.m;
  j["S"] = phi.structured_rows;
  j["seed"] = phi.seed;
  return j.dump();
}

SensingMatrix matrix_spec_from_json(const std::string& json_text) {
  const nlohmann::json j = nlohmann::json::parse(json_text);
  const std::string kind = j.at("kind").get<std::string>();
  const int n = j.at("n").get<int>();
  const int m = j.at("m").get<int>();
  const auto seed = j.at("seed").get<std::uint64_t>();
  if (kind == "circulant") return gen_circulant(n, m, seed);
  if (kind == "toeplitz") return gen_toeplitz(n, m, seed);
  if (kind == "gaussian") return gen_gaussian(n, m, seed);
  const int s = j.at("S").get<int>();
  if (kind == "partial_circulant")
    return gen_partial_structured(n, m, s, MatrixKind::Circulant, seed);
  if (kind == "partial_toeplitz")
    return gen_partial_structured(n, m, s, MatrixKind::Toeplitz, seed);
  throw std::invalid_argument("matrix_spec_from_json: unknown kind " + kind);
}

}  // namespace csc
