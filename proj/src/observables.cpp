#include "hypemb/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace hypemb {

ObservableFamily observable_cover(double cbar, const VisualMetric& vm, const GroupModel& model) {
  if (!(cbar > 0.0 && cbar <= 1.0))
    throw std::invalid_argument("cover radius must lie in (0, diam] = (0, 1]");

  int m = static_cast<int>(std::ceil(std::log(1.0 / cbar) / std::log(vm.a) - 1e-12));
  if (m < 0) m = 0;
  while (std::pow(vm.a, -m) > cbar * (1.0 + 1e-12)) ++m;

  std::vector<Observable> members;
  members.reserve(model.sphere_size(m));
  for (const ReducedWord& w : SphereRange(model, m)) {
    members.emplace_back(ray_to(w), vm);
  }
  return ObservableFamily(std::move(members), cbar, m);
}

}  // namespace hypemb
