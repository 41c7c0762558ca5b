#include "csc/sigsim.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <stdexcept>

#include "csc/rng.hpp"

namespace csc {

namespace {

constexpr int kBurnIn = 200;  // discards latent initial-condition transients

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void check_pair_config(const SparsePairConfig& cfg) {
  if (cfg.n < 2) throw std::invalid_argument("sigsim: n must be >= 2");
  if (cfg.k < 0 || cfg.k > cfg.n - 1)
    throw std::invalid_argument("sigsim: need 0 <= k <= n-1");
  if (std::abs(cfg.alpha) >= 1.0 || std::abs(cfg.beta) >= 1.0)
    throw std::invalid_argument("sigsim: |alpha| and |beta| must be < 1");
  if (!(cfg.noise_var > 0.0))
    throw std::invalid_argument("sigsim: noise_var must be positive");
}

}  // namespace

SparsePair simulate_sparse_pair(const SparsePairConfig& cfg) {
  check_pair_config(cfg);
  CounterRng rng(cfg.seed);
  const CounterRng noise1 = rng.derive(0);
  const CounterRng noise2 = rng.derive(1);
  // T1 from {0..n-2} so that T2 = T1+1 stays inside the window.
  std::vector<int> support1 = rng.derive(2).sample_without_replacement(cfg.n - 1, cfg.k);

  const double noise_sd = std::sqrt(cfg.noise_var);
  const int total = cfg.n + kBurnIn;

  SparsePair pair;
  pair.support1 = support1;
  pair.support2.reserve(support1.size());
  for (int t : support1) pair.support2.push_back(t + 1);
  pair.z1 = Eigen::VectorXd::Zero(cfg.n);
  pair.z2 = Eigen::VectorXd::Zero(cfg.n);

  std::vector<char> on_t1(static_cast<std::size_t>(cfg.n), 0);
  for (int t : support1) on_t1[static_cast<std::size_t>(t)] = 1;

  double latent1 = 0.0;
  double latent2 = 0.0;
  double sparse1_prev = 0.0;  // z1(t-1); zero during burn-in
  for (int t = 0; t < total; ++t) {
    latent1 = cfg.alpha * latent1 +
              noise_sd * noise1.normal(static_cast<std::uint64_t>(t));
    latent2 = cfg.beta * latent2 + cfg.gamma * sparse1_prev +
              noise_sd * noise2.normal(static_cast<std::uint64_t>(t));
    const int idx = t - kBurnIn;
    double sparse1 = 0.0;
    if (idx >= 0) {
      if (on_t1[static_cast<std::size_t>(idx)]) {
        sparse1 = latent1;
        pair.z1[idx] = latent1;
      }
      if (idx > 0 && on_t1[static_cast<std::size_t>(idx - 1)]) pair.z2[idx] = latent2;
    }
    sparse1_prev = sparse1;
  }
  return pair;
}

Eigen::MatrixXd simulate_glm_network(const GlmNetworkConfig& cfg) {
  if (cfg.n_nodes < 1 || cfg.length < 1)
    throw std::invalid_argument("sigsim: bad network dimensions");
  if (cfg.connectivity.rows() != cfg.n_nodes || cfg.connectivity.cols() != cfg.n_nodes)
    throw std::invalid_argument("sigsim: connectivity must be n_nodes x n_nodes");
  if (cfg.baseline.size() != cfg.n_nodes)
    throw std::invalid_argument("sigsim: baseline must have n_nodes entries");
  const int taps = cfg.history_taps;
  if (taps < 1 || cfg.self_kernel.size() != taps || cfg.cross_kernel.size() != taps)
    throw std::invalid_argument("sigsim: kernels must have history_taps entries");

  CounterRng rng(cfg.seed);
  Eigen::MatrixXd spikes = Eigen::MatrixXd::Zero(cfg.n_nodes, cfg.length);
  for (int t = 0; t < cfg.length; ++t) {
    // cross-history term per source node, shared by all of its targets
    Eigen::VectorXd drive(cfg.n_nodes);
    for (int j = 0; j < cfg.n_nodes; ++j) {
      double acc = 0.0;
      for (int lag = 1; lag <= taps && lag <= t; ++lag)
        acc += cfg.cross_kernel[lag - 1] * spikes(j, t - lag);
      drive[j] = acc;
    }
    for (int i = 0; i < cfg.n_nodes; ++i) {
      double logit = cfg.baseline[i];
      for (int lag = 1; lag <= taps && lag <= t; ++lag)
        logit += cfg.self_kernel[lag - 1] * spikes(i, t - lag);
      for (int j = 0; j < cfg.n_nodes; ++j) {
        const double weight = cfg.connectivity(i, j);
        if (weight != 0.0) logit += weight * drive[j];
      }
      const double p = logistic(logit);
      const double u = rng.derive(static_cast<std::uint64_t>(i))
                           .uniform(static_cast<std::uint64_t>(t));
      spikes(i, t) = u < p ? 1.0 : 0.0;
    }
  }
  return spikes;
}

GlmNetworkConfig default_network_10(std::uint64_t seed) {
  GlmNetworkConfig cfg;
  cfg.n_nodes = 10;
  cfg.length = 10000;
  cfg.seed = seed;
  cfg.history_taps = 5;

  cfg.self_kernel.resize(5);
  cfg.self_kernel << -2.0, -1.0, -0.5, -0.25, -0.125;

  cfg.cross_kernel.resize(5);
  cfg.cross_kernel << 1.0, 0.6, 0.36, 0.216, 0.1296;
  cfg.cross_kernel /= cfg.cross_kernel.sum();

  cfg.baseline = Eigen::VectorXd::Constant(10, std::log(0.02 / 0.98));

  cfg.connectivity = Eigen::MatrixXd::Zero(10, 10);
  const double excite = 3.5;
  const double inhibit = -4.5;
  auto edge = [&cfg](int from, int to, double w) { cfg.connectivity(to, from) = w; };
  edge(0, 1, excite);
  edge(0, 2, excite);
  edge(1, 3, excite);
  edge(3, 5, excite);
  edge(4, 6, excite);
  edge(6, 8, excite);
  edge(7, 9, excite);
  edge(2, 4, inhibit);
  edge(5, 7, inhibit);
  edge(9, 0, inhibit);
  return cfg;
}

Eigen::MatrixXi ground_truth_adjacency(const GlmNetworkConfig& cfg) {
  Eigen::MatrixXi truth = Eigen::MatrixXi::Zero(cfg.n_nodes, cfg.n_nodes);
  for (int i = 0; i < cfg.n_nodes; ++i)
    for (int j = 0; j < cfg.n_nodes; ++j)
      truth(i, j) = cfg.connectivity(i, j) != 0.0 ? 1 : 0;
  return truth;
}

std::string sparse_pair_config_to_json(const SparsePairConfig& cfg) {
  nlohmann::json j;
  j["n"] = cfg.n;
  j["k"] = cfg.k;
  j["alpha"] = cfg.alpha;
  j["beta"] = cfg.beta;
  j["gamma"] = cfg.gamma;
  j["noise_var"] = cfg.noise_var;
  j["seed"] = cfg.seed;
  return j.dump();
}

SparsePairConfig sparse_pair_config_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  SparsePairConfig cfg;
  cfg.n = j.at("n").get<int>();
  cfg.k = j.at("k").get<int>();
  cfg.alpha = j.at("alpha").get<double>();
  cfg.beta = j.at("beta").get<double>();
  cfg.gamma = j.at("gamma").get<double>();
  cfg.noise_var = j.at("noise_var").get<double>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  return cfg;
}

std::string glm_network_config_to_json(const GlmNetworkConfig& cfg) {
  nlohmann::json j;
  j["n_nodes"] = cfg.n_nodes;
  j["length"] = cfg.length;
  j["history_taps"] = cfg.history_taps;
  j["seed"] = cfg.seed;
  j["baseline"] = std::vector<double>(cfg.baseline.data(),
                                      cfg.baseline.data() + cfg.baseline.size());
  j["self_kernel"] = std::vector<double>(
      cfg.self_kernel.data(), cfg.self_kernel.data() + cfg.self_kernel.size());
  j["cross_kernel"] = std::vector<double>(
      cfg.cross_kernel.data(), cfg.cross_kernel.data() + cfg.cross_kernel.size());
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < cfg.n_nodes; ++i) {
    std::vector<double> row(static_cast<std::size_t>(cfg.n_nodes));
    for (int c = 0; c < cfg.n_nodes; ++c) row[static_cast<std::size_t>(c)] = cfg.connectivity(i, c);
    rows.push_back(std::move(row));
  }
  j["connectivity"] = rows;
  return j.dump();
}

GlmNetworkConfig glm_network_config_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  GlmNetworkConfig cfg;
  cfg.n_nodes = j.at("n_nodes").get<int>();
  cfg.length = j.at("length").get<int>();
  cfg.history_taps = j.at("history_taps").get<int>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  const auto baseline = j.at("baseline").get<std::vector<double>>();
  cfg.baseline = Eigen::Map<const Eigen::VectorXd>(baseline.data(),
                                                   static_cast<Eigen::Index>(baseline.size()));
  const auto self_kernel = j.at("self_kernel").get<std::vector<double>>();
  cfg.self_kernel = Eigen::Map<const Eigen::VectorXd>(
      self_kernel.data(), static_cast<Eigen::Index>(self_kernel.size()));
  const auto cross_kernel = j.at("cross_kernel").get<std::vector<double>>();
  cfg.cross_kernel = Eigen::Map<const Eigen::VectorXd>(
      cross_kernel.data(), static_cast<Eigen::Index>(cross_kernel.size()));
  const auto rows = j.at("connectivity").get<std::vector<std::vector<double>>>();
  cfg.connectivity.resize(cfg.n_nodes, cfg.n_nodes);
  for (int i = 0; i < cfg.n_nodes; ++i)
    for (int c = 0; c < cfg.n_nodes; ++c)
      cfg.connectivity(i, c) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
  return cfg;
}

}  // namespace csc
