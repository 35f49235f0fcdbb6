#include "hypemb/boundary.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hypemb {

namespace {

bool junction_ok(const ReducedWord& left, const ReducedWord& right) {
  if (left.empty() || right.empty()) return true;
  return right[0] != inverse_letter(left.back());
}

ReducedWord primitive_root(const ReducedWord& q) {
  std::size_t n = q.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = (q[i] == q[i % d]);
    if (periodic) {
      std::vector<Letter> root(q.letters().begin(), q.letters().begin() + static_cast<long>(d));
      return ReducedWord::reduce(root);
    }
  }
  return q;
}

ReducedWord rotate_last_to_front(const ReducedWord& q) {
  std::vector<Letter> out;
  out.reserve(q.size());
  out.push_back(q.back());
  out.insert(out.end(), q.letters().begin(), q.letters().end() - 1);
  return ReducedWord::reduce(out);
}

}  // namespace

BoundaryPoint::BoundaryPoint(ReducedWord stem, ReducedWord period)
    : stem_(std::move(stem)), period_(std::move(period)) {
  if (period_.empty()) throw std::invalid_argument("boundary point needs a nonempty period");
  if (!junction_ok(stem_, period_))
    throw std::invalid_argument("cancellation at the stem|period junction");
  if (!junction_ok(period_, period_))
    throw std::invalid_argument("cancellation at the period|period junction");
  canonicalize();
}

void BoundaryPoint::canonicalize() {
  period_ = primitive_root(period_);
  // Shrinking the stem by one letter is possible exactly when its last letter
  // matches the period's last letter; the period rotates in step.
  while (!stem_.empty() && stem_.back() == period_.back()) {
    std::vector<Letter> s(stem_.letters().begin(), stem_.letters().end() - 1);
    stem_ = ReducedWord::reduce(s);
    period_ = rotate_last_to_front(period_);
  }
}

Letter BoundaryPoint::letter_at(std::size_t i) const {
  if (i < stem_.size()) return stem_[i];
  return period_[(i - stem_.size()) % period_.size()];
}

ReducedWord BoundaryPoint::prefix(std::size_t length) const {
  std::vector<Letter> out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) out.push_back(letter_at(i));
  return ReducedWord::reduce(out);
}

std::string BoundaryPoint::str() const {
  return (stem_.empty() ? "" : stem_.str()) + "(" + period_.str() + ")^w";
}

std::optional<long> common_prefix(const BoundaryPoint& x, const BoundaryPoint& y) {
  if (x == y) return std::nullopt;
  long p1 = static_cast<long>(x.period().size());
  long p2 = static_cast<long>(y.period().size());
  long bound = static_cast<long>(std::max(x.stem().size(), y.stem().size())) +
               std::lcm(p1, p2) + std::max(p1, p2) + 1;
  for (long i = 0; i < bound; ++i) {
    if (x.letter_at(static_cast<std::size_t>(i)) != y.letter_at(static_cast<std::size_t>(i)))
      return i;
  }
  throw std::logic_error("distinct canonical boundary points agree beyond the periodicity bound");
}

BoundaryPoint ray_to(const ReducedWord& g) {
  Letter ext = 0;
  if (!g.empty() && inverse_letter(g.back()) == 0) ext = 1;
  std::vector<Letter> period{ext};
  return BoundaryPoint(g, ReducedWord::reduce(period));
}

VisualMetric::VisualMetric(double a_, double C_) : a(a_), C(C_) {
  if (!(a > 1.0)) throw std::invalid_argument("visual metric needs a > 1");
  if (!(C >= 1.0)) throw std::invalid_argument("visual metric needs C >= 1");
}

double visual_distance(const VisualMetric& vm, const BoundaryPoint& x, const BoundaryPoint& y) {
  auto lcp = common_prefix(x, y);
  if (!lcp) return 0.0;
  return std::pow(vm.a, -static_cast<double>(*lcp));
}

bool Cylinder::contains(const BoundaryPoint& xi) const {
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (xi.letter_at(i) != prefix[i]) return false;
  return true;
}

bool Cylinder::contains(const Cylinder& other) const {
  if (other.prefix.size() < prefix.size()) return false;
  return common_prefix_length(prefix, other.prefix) == static_cast<int>(prefix.size());
}

bool Cylinder::disjoint(const Cylinder& other) const {
  return !contains(other) && !other.contains(*this);
}

ShadowConfig::ShadowConfig(double R_, double delta_) : R(R_), delta(delta_) {
  if (!(R > std::max(1.0, 20.0 * delta)))
    throw std::invalid_argument("shadow config needs R > max(1, 20 delta)");
}

int shadow_prefix_length(int word_length, double R) {
  int m = word_length - static_cast<int>(std::floor(R + 1e-12));
  return m > 0 ? m : 0;
}

std::vector<Cylinder> shadow(const ReducedWord& g, const ShadowConfig& cfg) {
  int m = shadow_prefix_length(static_cast<int>(g.size()), cfg.R);
  std::vector<Letter> p(g.letters().begin(), g.letters().begin() + static_cast<long>(m));
  return {Cylinder{ReducedWord::reduce(p)}};
}

namespace {

/// Smallest integer L with a^{-L} < r (membership threshold of the open
/// visual ball of radius r in terms of common prefix length).
long open_ball_min_lcp(double a, double r) {
  if (r > 1.0) return 0;
  double t = std::log(1.0 / r) / std::log(a);
  long L = static_cast<long>(std::floor(t)) + 1;
  // Guard against t being an exact integer that floating point pushed a hair
  // above or below.
  while (L > 0 && std::pow(a, -static_cast<double>(L - 1)) < r) --L;
  while (std::pow(a, -static_cast<double>(L)) >= r) ++L;
  return L;
}

}  // namespace

SandwichResult shadow_ball_sandwich(const ReducedWord& g, const ShadowConfig& cfg,
                                    const VisualMetric& vm) {
  SandwichResult out{ray_to(g)};
  double dist = static_cast<double>(g.size());
  out.inner_radius = 1.0 / (vm.C * std::pow(vm.a, dist + cfg.R + 20.0 * cfg.delta));
  out.dilation = vm.C * vm.C * std::pow(vm.a, 5.0 * cfg.R + 20.0 * cfg.delta);

  // All three sets are cylinders on prefixes of xi's infinite word, so the
  // inclusions reduce to integer comparisons of minimal agreement lengths.
  long ball_min = open_ball_min_lcp(vm.a, out.inner_radius);
  long big_ball_min = open_ball_min_lcp(vm.a, out.dilation * out.inner_radius);
  long shadow_min = shadow_prefix_length(static_cast<int>(g.size()), 2.0 * cfg.R);
  out.inner_ok = ball_min >= shadow_min;
  out.outer_ok = shadow_min >= big_ball_min;
  return out;
}

ShadowInBallResult shadow_in_ball(const BoundaryPoint& c, const BoundaryPoint& center,
                                  double radius, const ShadowConfig& cfg, const VisualMetric& vm,
                                  int rank) {
  if (!(visual_distance(vm, center, c) < radius))
    throw std::invalid_argument("shadow_in_ball: point must lie inside the open ball");

  ShadowInBallResult out;
  out.threshold = std::log(vm.C * std::pow(vm.a, 3.0 * cfg.R) / radius) / std::log(vm.a);
  long len = out.threshold < 0 ? 0 : static_cast<long>(std::floor(out.threshold)) + 1;
  out.prefix = c.prefix(static_cast<std::size_t>(len));

  // Exact containment check: Sh(x x0, 2R) is the cylinder on x's prefix of
  // length max(|x| - floor(2R), 0); the sup of d(center, .) over a cylinder is
  // attained (rank >= 2 branches everywhere).
  int cyl_len = shadow_prefix_length(static_cast<int>(out.prefix.size()), 2.0 * cfg.R);
  ReducedWord q = c.prefix(static_cast<std::size_t>(cyl_len));
  long agree = 0;
  while (agree < cyl_len && center.letter_at(static_cast<std::size_t>(agree)) ==
                                q[static_cast<std::size_t>(agree)])
    ++agree;
  double sup;
  if (agree < cyl_len) {
    sup = std::pow(vm.a, -static_cast<double>(agree));
  } else {
    sup = rank >= 2 ? std::pow(vm.a, -static_cast<double>(cyl_len))
                    : visual_distance(vm, center, c);
  }
  out.contained = sup < radius;
  return out;
}

}  // namespace hypemb
