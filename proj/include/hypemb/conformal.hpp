#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hypemb/cocycle.hpp"

namespace hypemb {

/// The natural measure on the boundary of F_k: a cylinder of depth m >= 1 has
/// mass (1/2k)(1/(2k-1))^(m-1); the whole boundary has mass 1. This is the
/// Q-Hausdorff measure of (dF_k, d_a) up to scale, Q = ln(2k-1)/ln(a).
struct CylinderMeasure {
  int rank = 2;
  double mass(int depth) const;
};

double hausdorff_dimension(int k, double a);

/// Number of depth-m cylinders, i.e. the covering number of the boundary at
/// radius a^-m; the box-counting oracle behind the dimension cross-check.
std::uint64_t covering_number(int k, int m);

using DepthMassFn = std::function<double(int)>;

struct RegularityRow {
  int depth = 0;
  double radius = 0.0;
  double ball_mass = 0.0;
  double ratio = 0.0;       // mass / radius^Q
  double deviation = 0.0;   // max(ratio, 1/ratio)
};

struct RegularityReport {
  double q = 0.0;
  double c_ar = 0.0;          // max deviation over the range
  double stability_span = 0.0;  // max deviation / min deviation
  bool stable = false;
  bool additivity_ok = false;  // exact child-sum check at enumerated depths
  std::vector<RegularityRow> rows;
};

/// Balls are cylinders by ultrametricity, and all cylinders of one depth have
/// the same mass, so radii a^-m for m in [depth_lo, depth_hi] are checked via
/// per-depth ratios; additivity is verified exactly. A custom depth->mass
/// function substitutes fixture measures.
RegularityReport ahlfors_check(int k, double a, int depth_lo, int depth_hi,
                               const DepthMassFn* custom_mass = nullptr,
                               double stability_factor = 1.05);

/// Max over the depth range of the exact number of radius-r/2 balls needed to
/// cover a radius-r ball.
int doubling_check(int k, double a, int depth_lo, int depth_hi);

struct ThresholdRow {
  double p = 0.0;
  bool converged = false;
  double lower = 0.0;
  double upper = 0.0;
};

struct ThresholdTable {
  std::vector<ThresholdRow> rows;
  double q_exact = 0.0;        // ln(2k-1)/ln(a)
  double remark_threshold = 0.0;  // ln(n)/ln(a), n the translate-cover constant
  std::optional<double> frontier;  // midpoint between last diverged and first converged p
};

/// Sweeps p over the grid, running the cocycle norm for the single letters
/// (the worst single-step case) and reporting the convergence frontier.
ThresholdTable conformal_threshold_experiment(const GroupModel& model, const VisualMetric& vm,
                                              const std::vector<double>& p_grid, int T);

}  // namespace hypemb
