#pragma once

#include <cstdint>
#include <vector>

namespace hypemb {

/// Small connected graph with the shortest-path metric; stand-in for a proper
/// geodesic space when estimating the hyperbolicity constant.
class FiniteGraph {
 public:
  FiniteGraph(int vertices, const std::vector<std::pair<int, int>>& edges);

  static FiniteGraph path(int n);
  static FiniteGraph cycle(int n);
  static FiniteGraph random_tree(int n, std::uint64_t seed);

  int vertex_count() const { return n_; }
  bool connected() const;

  /// BFS distances from a vertex.
  std::vector<int> distances_from(int src) const;

  /// Full distance matrix (n x n), row-major.
  std::vector<int> distance_matrix() const;

 private:
  int n_;
  std::vector<std::vector<int>> adj_;
};

/// Max four-point-condition defect (s_max - s_mid)/2 over sampled quadruples;
/// exhaustive when the quadruple count is small. Trees give 0.
double delta_estimate(const FiniteGraph& graph, std::uint64_t samples, std::uint64_t seed);

}  // namespace hypemb
