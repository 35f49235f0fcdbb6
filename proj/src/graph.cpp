#include "hypemb/graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "hypemb/numerics.hpp"

namespace hypemb {

FiniteGraph::FiniteGraph(int vertices, const std::vector<std::pair<int, int>>& edges) : n_(vertices) {
  if (vertices <= 0) throw std::invalid_argument("graph needs at least one vertex");
  adj_.assign(static_cast<std::size_t>(vertices), {});
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertices || v >= vertices || u == v)
      throw std::invalid_argument("bad edge");
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }
}

FiniteGraph FiniteGraph::path(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return FiniteGraph(n, e);
}

FiniteGraph FiniteGraph::cycle(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return FiniteGraph(n, e);
}

FiniteGraph FiniteGraph::random_tree(int n, std::uint64_t seed) {
  std::uint64_t state = mix_seed(seed, 0x7ee);
  std::vector<std::pair<int, int>> e;
  for (int v = 1; v < n; ++v) {
    int parent = static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(v));
    e.emplace_back(parent, v);
  }
  return FiniteGraph(n, e);
}

std::vector<int> FiniteGraph::distances_from(int src) const {
  std::vector<int> dist(static_cast<std::size_t>(n_), -1);
  std::deque<int> queue{src};
  dist[static_cast<std::size_t>(src)] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : adj_[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

bool FiniteGraph::connected() const {
  auto d = distances_from(0);
  return std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; });
}

std::vector<int> FiniteGraph::distance_matrix() const {
  std::vector<int> m(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    auto d = distances_from(i);
    std::copy(d.begin(), d.end(), m.begin() + static_cast<long>(i) * n_);
  }
  return m;
}

namespace {

double quadruple_defect(const std::vector<int>& dm, int n, int a, int b, int c, int d) {
  auto at = [&](int i, int j) { return dm[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; };
  int s1 = at(a, b) + at(c, d);
  int s2 = at(a, c) + at(b, d);
  int s3 = at(a, d) + at(b, c);
  int hi = std::max({s1, s2, s3});
  int mid = s1 + s2 + s3 - hi - std::min({s1, s2, s3});
  return 0.5 * (hi - mid);
}

}  // namespace

double delta_estimate(const FiniteGraph& graph, std::uint64_t samples, std::uint64_t seed) {
  if (!graph.connected()) throw std::invalid_argument("delta_estimate needs a connected graph");
  int n = graph.vertex_count();
  auto dm = graph.distance_matrix();
  double worst = 0.0;

  std::uint64_t quadruples = 1;
  if (n >= 4) {
    quadruples = static_cast<std::uint64_t>(n) * (n - 1) / 2 * (n - 2) / 3 * (n - 3) / 4;
  }
  if (n < 4) return 0.0;

  if (quadruples <= std::max<std::uint64_t>(samples, 200'000)) {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c)
          for (int d = c + 1; d < n; ++d)
            worst = std::max(worst, quadruple_defect(dm, n, a, b, c, d));
    return worst;
  }

  std::uint64_t state = mix_seed(seed, 0xde17a);
  for (std::uint64_t s = 0; s < samples; ++s) {
    int a = static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(n));
    int b = static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(n));
    int c = static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(n));
    int d = static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(n));
    if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
    worst = std::max(worst, quadruple_defect(dm, n, a, b, c, d));
  }
  return worst;
}

}  // namespace hypemb
