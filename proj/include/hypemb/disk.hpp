#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace hypemb {

/// Point of the Poincare disk model, strictly inside the unit circle.
struct DiskPoint {
  std::complex<double> z;
  explicit DiskPoint(std::complex<double> z_);
  /// Point at hyperbolic distance `dist` from the origin in direction `angle`.
  static DiskPoint polar_hyperbolic(double dist, double angle);
};

double hyp_distance(const DiskPoint& x, const DiskPoint& y);

/// A wall: the geodesic with boundary endpoints e^{i theta1}, e^{i theta2}
/// (unordered; stored with theta1 < theta2 in [0, 2pi)).
struct Wall {
  double theta1;
  double theta2;
  Wall(double t1, double t2);
};

/// Side test via the disk automorphism that sends the wall to a diameter;
/// the two points are separated when their images land on opposite sides.
bool wall_separates(const Wall& wall, const DiskPoint& x, const DiskPoint& y);

/// Hyperbolic distance from the origin to the wall.
double wall_distance_to_origin(const Wall& wall);

struct McConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 1;
  int strata = 64;       // stratification of the wall's angular midpoint
  int workers = 1;       // execution detail; never changes results
  double min_gap = 1e-6; // hard floor on the angular gap of sampled walls
  double stderr_rel_tol = 0.10;
};

struct McEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
  double domain_mass = 0.0;  // kinematic mass of the sampled wall domain
  double gap_floor = 0.0;    // angular gap actually excluded (provably void)
  bool flagged = false;      // stderr above tolerance; reported, not failed
};

/// Monte Carlo mass, under the kinematic density 1/sin^2((t1-t2)/2) on
/// ordered endpoint pairs, of the walls separating x from y. Walls farther
/// from the origin than max(|x|_h, |y|_h) cannot separate the pair, so the
/// angular-gap domain is truncated there exactly; the 1e-6 hard floor of the
/// importance sampler never binds for points at bounded distance.
McEstimate separating_measure(const DiskPoint& x, const DiskPoint& y, const McConfig& mc);

/// ||b(g)||_p realized as separating_measure(0, z)^{1/p}; stderr propagated.
McEstimate wall_cocycle_norm(const DiskPoint& z, double p, const McConfig& mc);

struct CndResult {
  double max_centered_eigenvalue = 0.0;
  bool pass = false;
};

/// Conditional negative definiteness of the hyperbolic distance kernel:
/// center M_ij = d(z_i, z_j) against the all-ones direction and require the
/// centered matrix to be <= tol in the positive direction.
CndResult cnd_check(std::span<const DiskPoint> points, double tol);

/// Same test for an arbitrary symmetric kernel matrix (fixtures).
CndResult cnd_check_kernel(const std::vector<std::vector<double>>& kernel, double tol);

}  // namespace hypemb
