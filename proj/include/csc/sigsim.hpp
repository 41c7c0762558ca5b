#ifndef CSC_SIGSIM_HPP
#define CSC_SIGSIM_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace csc {

/// Coupled sparse AR pair. The latent processes are
///   Z1(t) = alpha Z1(t-1) + e1(t)
///   Z2(t) = beta  Z2(t-1) + gamma z1(t-1) + e2(t)
/// with e ~ N(0, noise_var); z1 keeps Z1 on a random k-point support T1 and
/// is zero elsewhere, z2 keeps Z2 on T1+1. Causal ground truth: z1 -> z2
/// only.
struct SparsePairConfig {
  int n = 2000;
  int k = 20;
  double alpha = 0.8;
  double beta = 0.08;
  double gamma = 0.75;
  double noise_var = 0.1;
  std::uint64_t seed = 0;
};

struct SparsePair {
  Eigen::VectorXd z1;
  Eigen::VectorXd z2;
  std::vector<int> support1;  // T1, ascending
  std::vector<int> support2;  // T1 + 1
};

SparsePair simulate_sparse_pair(const SparsePairConfig& cfg);

/// Discrete-time GLM spiking network: per bin,
///   p_i(t) = logistic( baseline_i + <self_kernel, own history>
///                      + sum_j connectivity(i,j) <cross_kernel, history_j> )
/// with connectivity(i,j) the influence of node j on node i (0 = no edge)
/// and cross_kernel unit-normalized.
struct GlmNetworkConfig {
  int n_nodes = 0;
  int length = 0;
  Eigen::MatrixXd connectivity;      // signed weights, zero diagonal
  Eigen::VectorXd baseline;          // per-node base log-intensity
  int history_taps = 5;              // L
  Eigen::VectorXd self_kernel;       // length L
  Eigen::VectorXd cross_kernel;      // length L, entries sum to 1
  std::uint64_t seed = 0;
};

/// Binary spike matrix, n_nodes x length.
Eigen::MatrixXd simulate_glm_network(const GlmNetworkConfig& cfg);

/// Fixed 10-node, 10-edge configuration (7 excitatory, 3 inhibitory, no
/// self-edges) used by the network experiment. Edge list:
///   excitatory: 0->1, 0->2, 1->3, 3->5, 4->6, 6->8, 7->9
///   inhibitory: 2->4, 5->7, 9->0
GlmNetworkConfig default_network_10(std::uint64_t seed);

/// Ground-truth adjacency of a config: (i,j) = 1 iff connectivity(i,j) != 0.
Eigen::MatrixXi ground_truth_adjacency(const GlmNetworkConfig& cfg);

std::string sparse_pair_config_to_json(const SparsePairConfig& cfg);
SparsePairConfig sparse_pair_config_from_json(const std::string& text);
std::string glm_network_config_to_json(const GlmNetworkConfig& cfg);
GlmNetworkConfig glm_network_config_from_json(const std::string& text);

}  // namespace csc

#endif
