#include "hypemb/tree_embedding.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "hypemb/fitting.hpp"
#include "hypemb/numerics.hpp"

namespace hypemb {

CompressionSpec CompressionSpec::power(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("power-law exponent must lie in (0, 1]");
  return CompressionSpec(Kind::power, alpha);
}

CompressionSpec CompressionSpec::log_power(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("log power must be positive");
  return CompressionSpec(Kind::log_power, beta);
}

double CompressionSpec::rho(double t) const {
  switch (kind_) {
    case Kind::power:
      return std::pow(t, param_);
    case Kind::log_power:
      return t / std::pow(std::log(std::exp(1.0) + t), param_);
  }
  return 0.0;
}

std::string CompressionSpec::name() const {
  switch (kind_) {
    case Kind::power:
      return "t^" + std::to_string(param_);
    case Kind::log_power:
      return "t/log^" + std::to_string(param_) + "(e+t)";
  }
  return "?";
}

bool CompressionSpec::integral_converges(double q) const {
  switch (kind_) {
    case Kind::power:
      // (rho/t)^q dt/t = t^{(alpha-1)q - 1} dt: converges iff alpha < 1.
      return param_ < 1.0;
    case Kind::log_power:
      // dt / (t log^{q beta}(e+t)): converges iff q beta > 1.
      return q * param_ > 1.0;
  }
  return false;
}

std::optional<double> CompressionSpec::integral_closed_form(double q) const {
  if (kind_ == Kind::power && param_ < 1.0) return 1.0 / (q * (1.0 - param_));
  return std::nullopt;
}

double CompressionSpec::integral_tail_bound(double q, double X) const {
  switch (kind_) {
    case Kind::power: {
      double lambda = (1.0 - param_) * q;
      return std::pow(X, -lambda) / lambda;  // exact
    }
    case Kind::log_power: {
      double s = q * param_;
      // int_X^inf dt/(t log^s(e+t)) <= int_X^inf dt/(t ln^s t) = ln(X)^{1-s}/(s-1)
      return std::pow(std::log(X), 1.0 - s) / (s - 1.0);
    }
  }
  return 0.0;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

IntegralResult integral_criterion(const CompressionSpec& spec, double q) {
  if (!(q >= 1.0)) throw std::invalid_argument("integral criterion needs q >= 1");
  IntegralResult out;
  out.converges = spec.integral_converges(q);
  out.closed_form = spec.integral_closed_form(q);
  if (!out.converges) {
    out.value = infinity();
    out.method = "analytic-divergence";
    return out;
  }

  // Substitute t = e^x: integral over x of (rho(e^x) e^{-x})^q on [0, inf).
  auto integrand = [&](double x) {
    double t = std::exp(x);
    double r = spec.rho(t) / t;
    return std::pow(r, q);
  };
  // Cut where the analytic tail is negligible.
  double X = 10.0;
  while (spec.integral_tail_bound(q, std::exp(X)) > 1e-10 && X < 4000.0) X *= 1.5;
  out.quadrature = integrate(integrand, 0.0, X, 1e-10);
  out.tail_bound = spec.integral_tail_bound(q, std::exp(X));
  out.value = out.quadrature + out.tail_bound;
  out.method = "adaptive-simpson+analytic-tail";
  return out;
}

RootedTree::RootedTree(std::vector<int> parents) : parent_(std::move(parents)) {
  if (parent_.empty() || parent_[0] != -1)
    throw std::invalid_argument("vertex 0 must be the root (parent -1)");
  depth_.assign(parent_.size(), 0);
  std::vector<char> has_child(parent_.size(), 0);
  for (std::size_t v = 1; v < parent_.size(); ++v) {
    int p = parent_[v];
    if (p < 0 || static_cast<std::size_t>(p) >= v)
      throw std::invalid_argument("parents must precede children");
    depth_[v] = depth_[static_cast<std::size_t>(p)] + 1;
    has_child[static_cast<std::size_t>(p)] = 1;
    max_depth_ = std::max(max_depth_, depth_[v]);
  }
  for (std::size_t v = 0; v < parent_.size(); ++v)
    if (!has_child[v]) leaves_.push_back(static_cast<int>(v));
}

RootedTree RootedTree::complete_binary(int depth) {
  if (depth < 0) throw std::invalid_argument("depth must be >= 0");
  std::vector<int> parents{-1};
  int level_start = 0;
  int level_size = 1;
  for (int d = 1; d <= depth; ++d) {
    int next_start = static_cast<int>(parents.size());
    for (int i = 0; i < level_size; ++i) {
      parents.push_back(level_start + i);
      parents.push_back(level_start + i);
    }
    level_start = next_start;
    level_size *= 2;
  }
  return RootedTree(std::move(parents));
}

int RootedTree::lowest_common_ancestor(int x, int y) const {
  while (depth(x) > depth(y)) x = parent(x);
  while (depth(y) > depth(x)) y = parent(y);
  while (x != y) {
    x = parent(x);
    y = parent(y);
  }
  return x;
}

int RootedTree::distance(int x, int y) const {
  int m = lowest_common_ancestor(x, y);
  return depth(x) + depth(y) - 2 * depth(m);
}

WeightSchedule WeightSchedule::from_spec(const CompressionSpec& spec, double p, int max_depth) {
  WeightSchedule out;
  out.p = p;
  out.w.reserve(static_cast<std::size_t>(max_depth));
  double prev = 0.0;  // rho(0) := 0
  for (int i = 1; i <= max_depth; ++i) {
    double cur = std::pow(spec.rho(static_cast<double>(i)), p);
    if (cur + 1e-15 < prev)
      throw std::invalid_argument("rho must be nondecreasing on the evaluation grid");
    out.w.push_back(std::pow(std::max(cur - prev, 0.0), 1.0 / p));
    prev = cur;
  }
  return out;
}

double WeightSchedule::prefix_power_sum(int t) const {
  KahanSum acc;
  for (int i = 1; i <= t; ++i) acc.add(std::pow(weight(i), p));
  return acc.value();
}

AncestorEmbedding::AncestorEmbedding(RootedTree tree, WeightSchedule schedule, double lipschitz)
    : tree_(std::move(tree)), schedule_(std::move(schedule)), lipschitz_(lipschitz) {}

double AncestorEmbedding::distance(int x, int y) const {
  if (x == y) return 0.0;
  const double p = schedule_.p;
  int m = tree_.lowest_common_ancestor(x, y);
  KahanSum acc;
  // Coordinates below the meeting point appear in exactly one image.
  for (int v = x; v != m; v = tree_.parent(v))
    acc.add(std::pow(schedule_.weight(tree_.depth(x) - tree_.depth(v) + 1), p));
  for (int v = y; v != m; v = tree_.parent(v))
    acc.add(std::pow(schedule_.weight(tree_.depth(y) - tree_.depth(v) + 1), p));
  // Shared ancestors strictly below the root carry both weights.
  for (int v = m; v != 0; v = tree_.parent(v)) {
    double wx = schedule_.weight(tree_.depth(x) - tree_.depth(v) + 1);
    double wy = schedule_.weight(tree_.depth(y) - tree_.depth(v) + 1);
    acc.add(std::pow(std::abs(wx - wy), p));
  }
  return std::pow(acc.value(), 1.0 / p);
}

std::map<int, double> AncestorEmbedding::coordinates(int x) const {
  std::map<int, double> out;
  for (int v = x; v != 0; v = tree_.parent(v))
    out[v] = schedule_.weight(tree_.depth(x) - tree_.depth(v) + 1);
  return out;
}

AncestorEmbedding build_embedding(const RootedTree& tree, const CompressionSpec& spec, double p,
                                  double lipschitz_cap) {
  if (!(p >= 1.0)) throw std::invalid_argument("embedding needs p >= 1");
  if (!spec.integral_converges(p))
    throw std::invalid_argument("integral criterion fails for rho = " + spec.name() +
                                " at p = " + std::to_string(p) + "; embedding rejected");
  WeightSchedule schedule = WeightSchedule::from_spec(spec, p, std::max(tree.max_depth(), 1));

  // Single-step displacement at depth D: w_1^p + sum_{j<D} |w_{j+1} - w_j|^p,
  // monotone in D, so the deepest level is the certificate.
  KahanSum step;
  step.add(std::pow(schedule.weight(1), p));
  double lipschitz = std::pow(step.value(), 1.0 / p);
  for (int j = 1; j < tree.max_depth(); ++j) {
    step.add(std::pow(std::abs(schedule.weight(j + 1) - schedule.weight(j)), p));
    lipschitz = std::max(lipschitz, std::pow(step.value(), 1.0 / p));
  }
  if (!(lipschitz <= lipschitz_cap))
    throw std::invalid_argument("single-step displacement " + std::to_string(lipschitz) +
                                " exceeds the Lipschitz cap");
  return AncestorEmbedding(tree, std::move(schedule), lipschitz);
}

EmbeddingReport measure_embedding(const AncestorEmbedding& emb, const CompressionSpec& spec,
                                  const PairSampleSpec& pairs, std::uint64_t seed) {
  const RootedTree& tree = emb.tree();
  const double p = emb.p();
  double w1 = emb.schedule().weight(1);
  EmbeddingReport out;
  out.lipschitz = emb.lipschitz_certificate();
  out.min_slack = infinity();

  std::map<int, double> min_by_distance;
  auto record = [&](int x, int y) {
    if (x == y) return;
    int d = tree.distance(x, y);
    double norm = emb.distance(x, y);
    double target = spec.rho(0.5 * d) / std::pow(2.0, 1.0 / p) - w1;
    out.min_slack = std::min(out.min_slack, norm - target);
    auto it = min_by_distance.find(d);
    if (it == min_by_distance.end() || norm < it->second) min_by_distance[d] = norm;
    ++out.pairs;
  };

  std::uint64_t state = mix_seed(seed, 0xe3bed);
  int n = tree.size();
  for (std::uint64_t s = 0; s < pairs.random_pairs; ++s) {
    int x = static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(n));
    int y = static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(n));
    record(x, y);
  }
  if (pairs.include_equal_depth_leaves && tree.leaves().size() >= 2) {
    const auto& leaves = tree.leaves();
    for (std::uint64_t s = 0; s < pairs.random_pairs / 4; ++s) {
      int x = leaves[static_cast<std::size_t>(splitmix64(state) % leaves.size())];
      int y = leaves[static_cast<std::size_t>(splitmix64(state) % leaves.size())];
      record(x, y);
    }
  }

  std::vector<std::pair<double, double>> env;
  for (auto [d, norm] : min_by_distance) {
    double target = spec.rho(0.5 * d) / std::pow(2.0, 1.0 / p) - w1;
    out.envelope.push_back(EnvelopeRow{d, norm, target});
    if (d > 0 && norm > 0) env.emplace_back(static_cast<double>(d), norm);
  }
  if (env.size() >= 2) {
    LogLogFit fit = fit_loglog(env);
    out.fitted_exponent = fit.slope;
    out.fit_quality = fit.r_squared;
  }
  return out;
}

}  // namespace hypemb
