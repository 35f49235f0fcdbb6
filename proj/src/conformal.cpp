#include "hypemb/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hypemb/numerics.hpp"

namespace hypemb {

double CylinderMeasure::mass(int depth) const {
  if (depth <= 0) return 1.0;
  double first = 1.0 / (2.0 * rank);
  double branch = 2.0 * rank - 1.0;
  return first * std::pow(branch, -(depth - 1));
}

double hausdorff_dimension(int k, double a) {
  if (k < 1 || !(a > 1.0)) throw std::invalid_argument("need k >= 1 and a > 1");
  double base = 2.0 * k - 1.0;
  if (base <= 1.0) return 0.0;
  return std::log(base) / std::log(a);
}

std::uint64_t covering_number(int k, int m) {
  if (m <= 0) return 1;
  std::uint64_t count = 2 * static_cast<std::uint64_t>(k);
  for (int i = 1; i < m; ++i) count *= 2 * static_cast<std::uint64_t>(k) - 1;
  return count;
}

RegularityReport ahlfors_check(int k, double a, int depth_lo, int depth_hi,
                               const DepthMassFn* custom_mass, double stability_factor) {
  if (k < 2) throw std::invalid_argument("ahlfors_check needs k >= 2");
  if (depth_lo < 1 || depth_hi < depth_lo) throw std::invalid_argument("bad depth range");
  CylinderMeasure nu{k};
  auto mass = [&](int depth) { return custom_mass ? (*custom_mass)(depth) : nu.mass(depth); };

  RegularityReport out;
  out.q = hausdorff_dimension(k, a);

  double worst = 0.0;
  double best = infinity();
  for (int m = depth_lo; m <= depth_hi; ++m) {
    RegularityRow row;
    row.depth = m;
    row.radius = std::pow(a, -m);
    row.ball_mass = mass(m);
    row.ratio = row.ball_mass / std::pow(row.radius, out.q);
    row.deviation = std::max(row.ratio, 1.0 / row.ratio);
    worst = std::max(worst, row.deviation);
    best = std::min(best, row.deviation);
    out.rows.push_back(row);
  }
  out.c_ar = worst;
  out.stability_span = worst / best;
  out.stable = std::isfinite(worst) && out.stability_span <= stability_factor;

  // Exact additivity at every depth in range: a depth-m cylinder has 2k-1
  // children (2k at the root), whose masses must sum back.
  out.additivity_ok = true;
  double root_sum = 2.0 * k * mass(1);
  if (std::abs(root_sum - mass(0)) > 1e-12 * std::max(1.0, std::abs(mass(0))))
    out.additivity_ok = false;
  for (int m = depth_lo; m <= depth_hi && out.additivity_ok; ++m) {
    double child_sum = (2.0 * k - 1.0) * mass(m + 1);
    if (std::abs(child_sum - mass(m)) > 1e-12 * std::abs(mass(m))) out.additivity_ok = false;
  }
  return out;
}

int doubling_check(int k, double a, int depth_lo, int depth_hi) {
  if (k < 1 || !(a > 1.0)) throw std::invalid_argument("need k >= 1 and a > 1");
  if (depth_lo < 0 || depth_hi < depth_lo) throw std::invalid_argument("bad depth range");
  // Depth step needed to at least halve the radius.
  int j = static_cast<int>(std::ceil(std::log(2.0) / std::log(a) - 1e-12));
  while (std::pow(a, -j) > 0.5 * (1.0 + 1e-12)) ++j;

  std::uint64_t worst = 1;
  for (int m = depth_lo; m <= depth_hi; ++m) {
    std::uint64_t count = 1;
    if (m == 0) {
      count = covering_number(k, j);
    } else {
      for (int i = 0; i < j; ++i) count *= 2 * static_cast<std::uint64_t>(k) - 1;
    }
    worst = std::max(worst, count);
  }
  return static_cast<int>(worst);
}

ThresholdTable conformal_threshold_experiment(const GroupModel& model, const VisualMetric& vm,
                                              const std::vector<double>& p_grid, int T) {
  if (model.rank() < 1) throw std::invalid_argument("threshold experiment needs rank >= 1");
  ThresholdTable out;
  out.q_exact = summability_threshold(model, vm, ThresholdMode::exact_growth);
  out.remark_threshold = summability_threshold(model, vm, ThresholdMode::remark);

  // The proof reduces membership to single letters; take the worst letter.
  std::vector<ReducedWord> letters;
  for (const ReducedWord& w : SphereRange(model, 1)) letters.push_back(w);
  Observable u(ray_to(ReducedWord()), vm);

  for (double p : p_grid) {
    ThresholdRow row;
    row.p = p;
    row.lower = 0.0;
    row.upper = 0.0;
    row.converged = true;
    for (const ReducedWord& letter : letters) {
      NormEstimate est = lp_norm(model, u, letter, p, T);
      row.converged = row.converged && est.converged;
      row.lower = std::max(row.lower, est.lower);
      row.upper = std::max(row.upper, est.upper);
    }
    out.rows.push_back(row);
  }

  double last_diverged = -infinity();
  double first_converged = infinity();
  for (const ThresholdRow& row : out.rows) {
    if (!row.converged) last_diverged = std::max(last_diverged, row.p);
    if (row.converged) first_converged = std::min(first_converged, row.p);
  }
  if (std::isfinite(last_diverged) && std::isfinite(first_converged) &&
      last_diverged < first_converged) {
    out.frontier = 0.5 * (last_diverged + first_converged);
  }
  return out;
}

}  // namespace hypemb
