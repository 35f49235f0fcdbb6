#include "hypemb/cover.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "hypemb/boundary.hpp"
#include "hypemb/conformal.hpp"

namespace hypemb {

SeparatedCover greedy_separated_cover(const GroupModel& model, const CoverConfig& cfg,
                                      const std::function<double(const ReducedWord&)>* measure) {
  if (cfg.v_radius < 1) throw std::invalid_argument("v_radius must be >= 1");
  if (cfg.region_radius < 0) throw std::invalid_argument("region_radius must be >= 0");

  SeparatedCover out;
  out.shadow_r = cfg.resolved_shadow_r();

  CylinderMeasure nu{model.rank()};
  auto shadow_mass = [&](const ReducedWord& g) {
    if (measure) return (*measure)(g);
    return nu.mass(shadow_prefix_length(static_cast<int>(g.size()), 2.0 * out.shadow_r));
  };

  std::vector<ReducedWord> region = model.ball(cfg.region_radius);  // length-lex order
  std::vector<double> masses(region.size());
  for (std::size_t i = 0; i < region.size(); ++i) masses[i] = shadow_mass(region[i]);
  std::vector<char> remaining(region.size(), 1);
  std::size_t remaining_count = region.size();

  while (remaining_count > 0) {
    double sup = -1.0;
    for (std::size_t i = 0; i < region.size(); ++i)
      if (remaining[i]) sup = std::max(sup, masses[i]);
    double slack = std::pow(0.5, static_cast<double>(out.picks.size()));
    std::size_t chosen = region.size();
    for (std::size_t i = 0; i < region.size(); ++i) {
      if (remaining[i] && masses[i] >= sup - slack) {
        chosen = i;
        break;  // region is length-lex sorted, so this is the least qualifying
      }
    }
    const ReducedWord& pick = region[chosen];
    out.picks.push_back(pick);
    out.shadow_masses.push_back(masses[chosen]);
    out.slacks.push_back(slack);
    for (std::size_t i = 0; i < region.size(); ++i) {
      if (remaining[i] && word_distance(pick, region[i]) <= cfg.v_radius) {
        remaining[i] = 0;
        --remaining_count;
      }
    }
  }

  // Certification, all exhaustive.
  out.cert.separation_ok = true;
  for (std::size_t i = 0; i < out.picks.size() && out.cert.separation_ok; ++i)
    for (std::size_t j = i + 1; j < out.picks.size(); ++j)
      if (word_distance(out.picks[i], out.picks[j]) <= cfg.v_radius) {
        out.cert.separation_ok = false;
        break;
      }

  out.cert.coverage_ok = true;
  for (const ReducedWord& x : region) {
    bool covered = false;
    for (const ReducedWord& pick : out.picks)
      if (word_distance(pick, x) <= cfg.v_radius) {
        covered = true;
        break;
      }
    if (!covered) {
      out.cert.coverage_ok = false;
      break;
    }
  }

  out.cert.per_annulus_disjoint = true;
  std::map<std::size_t, std::vector<Cylinder>> by_length;
  for (const ReducedWord& pick : out.picks) {
    int m = shadow_prefix_length(static_cast<int>(pick.size()), 2.0 * out.shadow_r);
    std::vector<Letter> p(pick.letters().begin(), pick.letters().begin() + m);
    by_length[pick.size()].push_back(Cylinder{ReducedWord::reduce(p)});
  }
  for (const auto& [len, cyls] : by_length) {
    for (std::size_t i = 0; i < cyls.size() && out.cert.per_annulus_disjoint; ++i)
      for (std::size_t j = i + 1; j < cyls.size(); ++j)
        if (!cyls[i].disjoint(cyls[j])) {
          out.cert.per_annulus_disjoint = false;
          break;
        }
  }
  return out;
}

}  // namespace hypemb
