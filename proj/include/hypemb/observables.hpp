#pragma once

#include <vector>

#include "hypemb/boundary.hpp"
#include "hypemb/group.hpp"

namespace hypemb {

/// A 1-Lipschitz boundary observable u(xi) = d_a(anchor, xi).
class Observable {
 public:
  Observable(BoundaryPoint anchor, VisualMetric vm)
      : anchor_(std::move(anchor)), vm_(vm) {}

  const BoundaryPoint& anchor() const { return anchor_; }
  const VisualMetric& metric() const { return vm_; }

  double eval(const BoundaryPoint& xi) const { return visual_distance(vm_, anchor_, xi); }

  /// f_u(g) = u(xi_g) with the deterministic ray choice.
  double eval_word(const ReducedWord& g) const { return eval(ray_to(g)); }

 private:
  BoundaryPoint anchor_;
  VisualMetric vm_;
};

/// Observables anchored on a finite cover of the boundary: every boundary
/// point lies within cover_radius of some anchor.
class ObservableFamily {
 public:
  ObservableFamily(std::vector<Observable> members, double cover_radius, int anchor_depth)
      : members_(std::move(members)), cover_radius_(cover_radius), anchor_depth_(anchor_depth) {}

  const std::vector<Observable>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  double cover_radius() const { return cover_radius_; }
  int anchor_depth() const { return anchor_depth_; }
  const VisualMetric& metric() const { return members_.front().metric(); }

 private:
  std::vector<Observable> members_;
  double cover_radius_;
  int anchor_depth_;
};

/// Anchors at xi_w for w in the sphere of radius ceil(-ln(cbar)/ln(a)); the
/// depth-m cylinders have diameter <= cbar, so the anchors form a cbar-cover.
ObservableFamily observable_cover(double cbar, const VisualMetric& vm, const GroupModel& model);

}  // namespace hypemb
