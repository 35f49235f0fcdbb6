#include <doctest.h>

#include <cmath>

#include "hypemb/observables.hpp"

using namespace hypemb;

TEST_CASE("observable cover sizes") {
  GroupModel f2(2);
  CHECK(observable_cover(0.5, VisualMetric(2.0), f2).size() == 4);    // sphere(1)
  CHECK(observable_cover(1.0, VisualMetric(2.0), f2).size() == 1);    // single anchor
  CHECK(observable_cover(0.25, VisualMetric(2.0), f2).size() == 12);  // sphere(2)
  CHECK(observable_cover(0.25, VisualMetric(4.0), f2).size() == 4);
}

TEST_CASE("anchors form a cover of the boundary") {
  GroupModel f2(2);
  VisualMetric vm(2.0);
  ObservableFamily fam = observable_cover(0.25, vm, f2);
  WordSampler sampler(2, 41);
  for (int i = 0; i < 500; ++i) {
    BoundaryPoint xi = ray_to(sampler.sample(i % 10));
    double best = 2.0;
    for (const Observable& u : fam.members()) best = std::min(best, u.eval(xi));
    CHECK(best <= fam.cover_radius() + 1e-15);
  }
}

TEST_CASE("observables are 1-Lipschitz") {
  GroupModel f2(2);
  VisualMetric vm(3.0);
  ObservableFamily fam = observable_cover(1.0 / 3.0, vm, f2);
  WordSampler sampler(2, 43);
  for (int i = 0; i < 800; ++i) {
    BoundaryPoint x = ray_to(sampler.sample(i % 9));
    BoundaryPoint y = ray_to(sampler.sample((i / 3) % 9));
    double d = visual_distance(vm, x, y);
    for (const Observable& u : fam.members())
      CHECK(std::abs(u.eval(x) - u.eval(y)) <= d + 1e-15);
  }
}

TEST_CASE("separated pairs are separated by some family member") {
  GroupModel f2(2);
  VisualMetric vm(2.0);
  double cbar = 0.25;
  ObservableFamily fam = observable_cover(cbar, vm, f2);
  WordSampler sampler(2, 47);
  int tested = 0;
  for (int i = 0; i < 4000; ++i) {
    BoundaryPoint x = ray_to(sampler.sample(i % 10));
    BoundaryPoint y = ray_to(sampler.sample((i / 2) % 10));
    if (visual_distance(vm, x, y) < 3.0 * cbar) continue;
    ++tested;
    double best = 0.0;
    for (const Observable& u : fam.members())
      best = std::max(best, std::abs(u.eval(x) - u.eval(y)));
    CHECK(best >= cbar - 1e-15);
  }
  CHECK(tested > 100);
}

TEST_CASE("cover radius outside (0, diam] is rejected") {
  GroupModel f2(2);
  CHECK_THROWS_AS(observable_cover(0.0, VisualMetric(2.0), f2), std::invalid_argument);
  CHECK_THROWS_AS(observable_cover(1.5, VisualMetric(2.0), f2), std::invalid_argument);
}
