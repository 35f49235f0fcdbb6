#include <doctest.h>

#include <cmath>

#include "hypemb/boundary.hpp"
#include "hypemb/group.hpp"
#include "support/oracles.hpp"

using namespace hypemb;

namespace {
BoundaryPoint bp(const char* stem, const char* period) {
  return BoundaryPoint(ReducedWord::parse(stem), ReducedWord::parse(period));
}
}  // namespace

TEST_CASE("canonical forms identify equal infinite words") {
  // a (ba)^w = (ab)^w
  CHECK(bp("a", "ba") == bp("", "ab"));
  // aa a^w = a^w
  CHECK(bp("aa", "a") == bp("", "a"));
  // ^periods reduce to the primitive root
  CHECK(bp("", "abab") == bp("", "ab"));
  // distinct points stay distinct
  CHECK(bp("", "ab") != bp("", "ba"));
  CHECK(bp("b", "a") != bp("", "a"));
}

TEST_CASE("construction rejects junction cancellations") {
  CHECK_THROWS_AS(bp("a", "Ab"), std::invalid_argument);   // stem|period cancels
  CHECK_THROWS_AS(bp("", "abA"), std::invalid_argument);   // period|period cancels
  CHECK_THROWS_AS(BoundaryPoint(ReducedWord(), ReducedWord()), std::invalid_argument);
}

TEST_CASE("ray_to chooses the least non-cancelling letter") {
  CHECK(ray_to(ReducedWord()) == bp("", "a"));
  CHECK(ray_to(ReducedWord::parse("aa")) == bp("", "a"));      // canonical form of aa.a^w
  CHECK(ray_to(ReducedWord::parse("aB")) == bp("aB", "a"));
  CHECK(ray_to(ReducedWord::parse("A")) == bp("", "A"));       // least letter would cancel
  // the ray through g extends g
  WordSampler sampler(2, 3);
  for (int i = 0; i < 500; ++i) {
    ReducedWord g = sampler.sample(i % 11);
    BoundaryPoint xi = ray_to(g);
    CHECK(xi.prefix(g.size()) == g);
  }
}

TEST_CASE("visual distance values and the branch-point identity") {
  VisualMetric vm(2.0);
  BoundaryPoint aw = bp("", "a");
  CHECK(visual_distance(vm, aw, aw) == doctest::Approx(0.0));
  CHECK(visual_distance(vm, aw, bp("", "b")) == doctest::Approx(1.0));
  CHECK(visual_distance(vm, aw, bp("a", "b")) == doctest::Approx(0.5));

  // d_a = a^{-d(x0, y)} with y the branch point of the two rays: C = 1 exactly.
  WordSampler sampler(2, 23);
  for (int i = 0; i < 400; ++i) {
    BoundaryPoint x = ray_to(sampler.sample(i % 9));
    BoundaryPoint y = ray_to(sampler.sample((i / 2) % 9));
    if (x == y) continue;
    auto branch_depth = common_prefix(x, y);
    REQUIRE(branch_depth.has_value());
    CHECK(visual_distance(vm, x, y) ==
          doctest::Approx(std::pow(2.0, -static_cast<double>(*branch_depth))));
  }
}

TEST_CASE("visual distance is an ultrametric") {
  VisualMetric vm(3.0);
  WordSampler sampler(2, 29);
  for (int i = 0; i < 2000; ++i) {
    BoundaryPoint x = ray_to(sampler.sample(i % 8));
    BoundaryPoint y = ray_to(sampler.sample((i / 3) % 8));
    BoundaryPoint z = ray_to(sampler.sample((i / 7) % 8));
    double dxz = visual_distance(vm, x, z);
    double dxy = visual_distance(vm, x, y);
    double dyz = visual_distance(vm, y, z);
    CHECK(dxz <= std::max(dxy, dyz) + 1e-15);
  }
}

TEST_CASE("shadows are single cylinders with the exact prefix") {
  ShadowConfig cfg(1.0001);
  auto sh = shadow(ReducedWord::parse("aa"), cfg);
  REQUIRE(sh.size() == 1);
  CHECK(sh[0].prefix == ReducedWord::parse("a"));

  // g = identity or |g| <= R: the whole boundary.
  CHECK(shadow(ReducedWord(), cfg)[0].prefix.empty());
  CHECK(shadow(ReducedWord::parse("b"), cfg)[0].prefix.empty());
}

TEST_CASE("shadow membership agrees with the ray-based definition exhaustively") {
  GroupModel f2(2);
  ShadowConfig cfg(1.5);
  for (int glen = 0; glen <= 3; ++glen) {
    for (const ReducedWord& g : SphereRange(f2, glen)) {
      auto cyl = shadow(g, cfg)[0];
      // Rays through depth-5 vertices: deep enough to decide membership for
      // |g| <= 3 and R = 1.5.
      for (const ReducedWord& w : SphereRange(f2, 5)) {
        BoundaryPoint xi = ray_to(w);
        bool metric_def = oracles::ray_hits_ball(xi, g, cfg.R, 7);
        CHECK(metric_def == cyl.contains(xi));
      }
    }
  }
}

TEST_CASE("shadow is covariant under non-cancelling prefix translation") {
  ShadowConfig cfg(1.25);
  WordSampler sampler(2, 31);
  for (int i = 0; i < 300; ++i) {
    ReducedWord g = sampler.sample(3 + (i % 5));
    ReducedWord h = sampler.sample(1 + (i / 2) % 4);
    if ((h * g).size() != h.size() + g.size()) continue;  // cancellation: skip
    if (static_cast<double>(g.size()) <= cfg.R) continue;
    auto translated = shadow(h * g, cfg)[0];
    auto base = shadow(g, cfg)[0];
    CHECK(translated.prefix == (h * base.prefix));
  }
}

TEST_CASE("shadow-ball sandwich: paper constant and exhaustive verification") {
  VisualMetric vm(2.0);
  ShadowConfig cfg(2.0);
  SandwichResult r = shadow_ball_sandwich(ReducedWord::parse("aaaa"), cfg, vm);
  CHECK(r.dilation == doctest::Approx(std::pow(2.0, 10.0)));  // C^2 a^{5R+20delta}
  CHECK(r.inner_radius == doctest::Approx(std::pow(2.0, -6.0)));
  CHECK(r.inner_ok);
  CHECK(r.outer_ok);

  // identity: everything is the whole boundary
  SandwichResult id = shadow_ball_sandwich(ReducedWord(), cfg, vm);
  CHECK(id.inner_ok);
  CHECK(id.outer_ok);

  GroupModel f2(2);
  for (int r2 = 0; r2 <= 6; ++r2) {
    for (const ReducedWord& g : SphereRange(f2, r2)) {
      SandwichResult s = shadow_ball_sandwich(g, cfg, vm);
      CHECK(s.inner_ok);
      CHECK(s.outer_ok);
    }
  }
}

TEST_CASE("shadow_in_ball: threshold formula and containment") {
  VisualMetric vm(2.0);
  ShadowConfig cfg(1.0001);  // R treated as 1 in the exponent up to rounding
  BoundaryPoint c = bp("", "a");

  // r = 1/8, a = 2, C = 1, R = 1: |x| > 3 + 3, so x = a^7.
  ShadowInBallResult res = shadow_in_ball(c, c, 0.125, ShadowConfig(1.0 + 1e-9), vm, 2);
  CHECK(res.threshold == doctest::Approx(6.0).epsilon(1e-6));
  CHECK(res.prefix.size() == 7);
  CHECK(res.prefix == ReducedWord::parse("aaaaaaa"));
  CHECK(res.contained);

  // huge ball: the empty prefix suffices
  ShadowInBallResult trivial = shadow_in_ball(c, c, 9.0, cfg, vm, 2);
  CHECK(trivial.prefix.empty());
  CHECK(trivial.contained);

  // shrinking r by factors of a grows |x| strictly
  std::size_t prev = 0;
  bool first = true;
  for (double r = 0.5; r > 1e-3; r /= 2.0) {
    ShadowInBallResult step = shadow_in_ball(c, c, r, cfg, vm, 2);
    CHECK(step.contained);
    if (!first) CHECK(step.prefix.size() > prev);
    prev = step.prefix.size();
    first = false;
  }
}
