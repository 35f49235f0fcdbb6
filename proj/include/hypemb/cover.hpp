#pragma once

#include <functional>
#include <vector>

#include "hypemb/group.hpp"

namespace hypemb {

struct CoverConfig {
  int v_radius = 2;       // V = ball(v_radius)
  int region_radius = 6;  // region to cover = ball(region_radius)
  /// Shadow radius used by the default measure and the disjointness
  /// certificate. On the tree same-annulus picks with d > v_radius have
  /// disjoint 2R-shadows as soon as 2 floor(2R) <= v_radius, so the default
  /// is the largest R with that guarantee.
  double shadow_r = 0.0;  // 0 means: derive from v_radius
  double resolved_shadow_r() const {
    // Largest R with 2 floor(2R) <= v_radius: floor(2R) = v_radius / 2.
    return shadow_r > 0.0 ? shadow_r : 0.5 * (v_radius / 2) + 0.25;
  }
};

struct CoverCertification {
  bool separation_ok = false;        // pairwise d_V >= 2, i.e. d > v_radius
  bool coverage_ok = false;          // union of translates covers the region
  bool per_annulus_disjoint = false; // equal-length picks have disjoint shadows
};

struct SeparatedCover {
  std::vector<ReducedWord> picks;
  std::vector<double> shadow_masses;
  std::vector<double> slacks;  // the 2^-i used at each pick
  double shadow_r = 0.0;
  CoverCertification cert;
};

/// Greedy near-maximal-shadow-measure cover of a ball by V-translates with
/// slack 2^-i at step i; deterministic (length-lex first qualifying element).
/// The measure defaults to the cylinder mass of the 2R-shadow.
SeparatedCover greedy_separated_cover(const GroupModel& model, const CoverConfig& cfg,
                                      const std::function<double(const ReducedWord&)>* measure = nullptr);

}  // namespace hypemb
