#pragma once

#include <optional>
#include <string>

#include "hypemb/words.hpp"

namespace hypemb {

/// A point of the visual boundary of the free-group tree: an eventually
/// periodic infinite reduced word stem . period . period . ...
///
/// Stored in canonical form (primitive period, minimal stem), so equality of
/// boundary points is equality of representations.
class BoundaryPoint {
 public:
  BoundaryPoint(ReducedWord stem, ReducedWord period);

  const ReducedWord& stem() const { return stem_; }
  const ReducedWord& period() const { return period_; }

  Letter letter_at(std::size_t i) const;
  ReducedWord prefix(std::size_t length) const;

  bool operator==(const BoundaryPoint& o) const {
    return stem_ == o.stem_ && period_ == o.period_;
  }
  bool operator!=(const BoundaryPoint& o) const { return !(*this == o); }

  std::string str() const;

 private:
  ReducedWord stem_;
  ReducedWord period_;
  void canonicalize();
};

/// Common prefix length of two boundary points; nullopt when they are equal.
std::optional<long> common_prefix(const BoundaryPoint& x, const BoundaryPoint& y);

/// The deterministic ray choice xi_g: extend g by the least letter that does
/// not cancel its last letter, repeated forever.
BoundaryPoint ray_to(const ReducedWord& g);

/// Visual metric d_a(xi, xi') = a^{-(common prefix length)}. On the tree the
/// two-sided visual bound holds with C = 1.
struct VisualMetric {
  double a = 2.0;
  double C = 1.0;
  VisualMetric() = default;
  VisualMetric(double a_, double C_ = 1.0);
};

double visual_distance(const VisualMetric& vm, const BoundaryPoint& x, const BoundaryPoint& y);

/// Set of boundary points extending a fixed prefix; a d_a-ball of radius
/// a^{-|prefix|} around any of its points.
struct Cylinder {
  ReducedWord prefix;
  bool contains(const BoundaryPoint& xi) const;
  bool contains(const Cylinder& other) const;  // other subset of *this
  bool disjoint(const Cylinder& other) const;
};

struct ShadowConfig {
  double R = 2.0;
  double delta = 0.0;
  ShadowConfig() = default;
  ShadowConfig(double R_, double delta_ = 0.0);
};

/// Prefix length of the cylinder Sh(g x0, R) on the tree:
/// xi lies in the shadow iff its ray agrees with g for max(|g| - floor(R), 0)
/// letters.
int shadow_prefix_length(int word_length, double R);

/// Exact minimal cylinder decomposition of Sh(g x0, R). On the tree this is a
/// single cylinder.
std::vector<Cylinder> shadow(const ReducedWord& g, const ShadowConfig& cfg);

/// Ball-shadow-ball sandwich around Sh(g x0, 2R):
///   B(xi, r) inside Sh(g x0, 2R) inside B(xi, D r),
/// with r = 1 / (C a^{|g| + R + 20 delta}) and D = C^2 a^{5R + 20 delta}.
/// Inclusion flags are verified exactly on the cylinder decomposition.
struct SandwichResult {
  BoundaryPoint xi;
  double inner_radius = 0.0;
  double dilation = 0.0;
  bool inner_ok = false;
  bool outer_ok = false;
};

SandwichResult shadow_ball_sandwich(const ReducedWord& g, const ShadowConfig& cfg,
                                    const VisualMetric& vm);

/// Shortest prefix x of c with |x| > ln(C a^{3R} / r)/ln(a); checks
/// Sh(x x0, 2R) inside the open ball B(center, radius) exactly.
struct ShadowInBallResult {
  ReducedWord prefix;
  double threshold = 0.0;
  bool contained = false;
};

ShadowInBallResult shadow_in_ball(const BoundaryPoint& c, const BoundaryPoint& center,
                                  double radius, const ShadowConfig& cfg, const VisualMetric& vm,
                                  int rank);

}  // namespace hypemb
