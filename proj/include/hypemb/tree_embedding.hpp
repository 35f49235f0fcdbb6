#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hypemb {

/// A prescribed compression function rho, nondecreasing with rho(1) > 0.
/// Built-ins: t^alpha (alpha in (0,1]) and t / log^beta(e + t); each knows
/// analytically whether its embedding integral converges.
class CompressionSpec {
 public:
  enum class Kind { power, log_power };

  static CompressionSpec power(double alpha);
  static CompressionSpec log_power(double beta);

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }
  double rho(double t) const;
  std::string name() const;

  /// Does int_1^inf (rho(t)/t)^q dt/t converge? Analytic, per built-in.
  bool integral_converges(double q) const;

  /// Closed form of the integral when available (power law: 1/(q(1-alpha))).
  std::optional<double> integral_closed_form(double q) const;

  /// Exact tail int_X^inf (rho(t)/t)^q dt/t for the power law; a comparison
  /// bound for the log-shaved family.
  double integral_tail_bound(double q, double X) const;

 private:
  CompressionSpec(Kind k, double p) : kind_(k), param_(p) {}
  Kind kind_;
  double param_;
};

struct IntegralResult {
  bool converges = false;
  double value = 0.0;                    // quadrature + tail (finite case)
  std::optional<double> closed_form;     // when available
  double quadrature = 0.0;               // adaptive Simpson part
  double tail_bound = 0.0;               // analytic remainder past the cut
  std::string method;
};

/// Evaluates int_1^inf (rho(t)/t)^q dt/t with the analytic convergence test
/// deciding the flag and adaptive quadrature producing the value.
IntegralResult integral_criterion(const CompressionSpec& spec, double q);

/// Rooted tree stored as parent pointers, vertices indexed 0..n-1 with the
/// root at 0 and parents preceding children.
class RootedTree {
 public:
  static RootedTree complete_binary(int depth);
  explicit RootedTree(std::vector<int> parents);

  int size() const { return static_cast<int>(parent_.size()); }
  int parent(int v) const { return parent_[static_cast<std::size_t>(v)]; }
  int depth(int v) const { return depth_[static_cast<std::size_t>(v)]; }
  int max_depth() const { return max_depth_; }
  int lowest_common_ancestor(int x, int y) const;
  int distance(int x, int y) const;
  const std::vector<int>& leaves() const { return leaves_; }

 private:
  std::vector<int> parent_;
  std::vector<int> depth_;
  std::vector<int> leaves_;
  int max_depth_ = 0;
};

/// Weights w_i = (rho(i)^p - rho(i-1)^p)^{1/p} (rho(0) := 0), so prefix sums
/// of w_i^p telescope to rho(t)^p exactly.
struct WeightSchedule {
  std::vector<double> w;  // w[i] = w_{i+1}
  double p = 2.0;
  static WeightSchedule from_spec(const CompressionSpec& spec, double p, int max_depth);
  double weight(int i) const { return w[static_cast<std::size_t>(i - 1)]; }  // 1-based
  double prefix_power_sum(int t) const;                                      // sum_{i<=t} w_i^p
};

/// Embedding of the tree into a sequence space indexed by vertices: the image
/// of x has coordinate w_{d(x,v)+1} at every ancestor v of x below the root
/// (v on the root-to-x path, v != root), and 0 elsewhere.
class AncestorEmbedding {
 public:
  AncestorEmbedding(RootedTree tree, WeightSchedule schedule, double lipschitz);

  const RootedTree& tree() const { return tree_; }
  const WeightSchedule& schedule() const { return schedule_; }
  double p() const { return schedule_.p; }
  double lipschitz_certificate() const { return lipschitz_; }

  /// ||F(x) - F(y)||_p via the exact path decomposition.
  double distance(int x, int y) const;

  /// Sparse coordinate map, for brute-force checks.
  std::map<int, double> coordinates(int x) const;

 private:
  RootedTree tree_;
  WeightSchedule schedule_;
  double lipschitz_;
};

/// Builds the embedding; requires the integral criterion at exponent p and a
/// single-step displacement below the Lipschitz cap.
AncestorEmbedding build_embedding(const RootedTree& tree, const CompressionSpec& spec, double p,
                                  double lipschitz_cap = 1e6);

struct EnvelopeRow {
  int distance = 0;
  double min_norm = 0.0;
  double target = 0.0;  // rho(d/2) / 2^{1/p} - w_1
};

struct EmbeddingReport {
  double lipschitz = 0.0;
  double fitted_exponent = 0.0;
  double fit_quality = 0.0;
  double min_slack = 0.0;  // min over pairs of ||F(x)-F(y)|| - target; >= 0 certifies
  std::uint64_t pairs = 0;
  std::vector<EnvelopeRow> envelope;
};

struct PairSampleSpec {
  std::uint64_t random_pairs = 10'000;
  bool include_equal_depth_leaves = true;
};

EmbeddingReport measure_embedding(const AncestorEmbedding& emb, const CompressionSpec& spec,
                                  const PairSampleSpec& pairs, std::uint64_t seed);

}  // namespace hypemb
