#include "hypemb/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "hypemb/numerics.hpp"

namespace hypemb {

double cocycle_eval(const ReducedWord& g, const Observable& u, const ReducedWord& gamma) {
  return u.eval_word(gamma * g) - u.eval_word(gamma);
}

std::vector<ReducedWord> cocycle_support_candidates(const Observable& u, const ReducedWord& g,
                                                    int T) {
  const BoundaryPoint& anchor = u.anchor();
  int m = static_cast<int>(g.size());

  // v_c = (g-prefix of length c)^-1, built incrementally.
  std::vector<std::vector<Letter>> inv_prefix(static_cast<std::size_t>(m) + 1);
  for (int c = 1; c <= m; ++c) {
    inv_prefix[static_cast<std::size_t>(c)] = inv_prefix[static_cast<std::size_t>(c - 1)];
    auto& v = inv_prefix[static_cast<std::size_t>(c)];
    v.insert(v.begin(), inverse_letter(g[static_cast<std::size_t>(c - 1)]));
  }

  std::set<std::vector<Letter>> seen;
  std::vector<Letter> a_prefix;
  for (int j = 0; j <= T; ++j) {
    if (j > 0) a_prefix.push_back(anchor.letter_at(static_cast<std::size_t>(j - 1)));
    for (int c = 0; c <= m && j + c <= T; ++c) {
      const auto& v = inv_prefix[static_cast<std::size_t>(c)];
      if (j > 0 && c > 0 && a_prefix.back() == g[static_cast<std::size_t>(c - 1)])
        continue;  // junction would cancel
      std::vector<Letter> word = a_prefix;
      word.insert(word.end(), v.begin(), v.end());
      seen.insert(std::move(word));
    }
  }

  std::vector<ReducedWord> out;
  out.reserve(seen.size());
  for (const auto& w : seen) out.push_back(ReducedWord::reduce(w));
  std::sort(out.begin(), out.end(), LengthLexLess{});
  return out;
}

double CocycleVector::at(const ReducedWord& gamma) const {
  auto it = values_.find(gamma);
  return it == values_.end() ? 0.0 : it->second;
}

CocycleVector cocycle_vector(const Observable& u, const ReducedWord& g, int T) {
  std::map<ReducedWord, double, LengthLexLess> values;
  for (const ReducedWord& gamma : cocycle_support_candidates(u, g, T)) {
    double v = cocycle_eval(g, u, gamma);
    if (v != 0.0) values.emplace(gamma, v);
  }
  return CocycleVector(T, std::move(values));
}

double NormEstimate::relative_width() const {
  if (!converged) return infinity();
  double mid = midpoint();
  if (mid == 0.0) return upper == lower ? 0.0 : infinity();
  return (upper - lower) / mid;
}

namespace {

struct PowerSum {
  double sum_power = 0.0;       // sum of |c|^p over the truncated support
  std::uint64_t support = 0;
};

PowerSum truncated_power_sum(const Observable& u, const ReducedWord& g, double p, int T) {
  PowerSum out;
  KahanSum acc;
  for (const ReducedWord& gamma : cocycle_support_candidates(u, g, T)) {
    double v = cocycle_eval(g, u, gamma);
    if (v != 0.0) {
      acc.add(std::pow(std::abs(v), p));
      ++out.support;
    }
  }
  out.sum_power = acc.value();
  return out;
}

/// sum_{i > T} 2k (2k-1)^{i-1} (K a^{-i})^p, with per-term values capped at 1.
double geometric_tail_power(const GroupModel& model, double a, double p, int T, double log_K) {
  int k = model.rank();
  if (k == 0) return 0.0;
  double n = 2.0 * k;
  double base = 2.0 * k - 1.0;
  double ratio = base * std::pow(a, -p);
  if (!(ratio < 1.0)) return infinity();

  double log_a = std::log(a);
  // Terms with K a^{-i} >= 1 contribute the full sphere size.
  int i_flat_end = static_cast<int>(std::floor(log_K / log_a));  // K a^{-i} >= 1 iff i <= log_a K
  KahanSum acc;
  int i = T + 1;
  for (; i <= i_flat_end; ++i) {
    acc.add(n * std::pow(base, i - 1));
  }
  // Geometric remainder from i onwards.
  double first = n * std::pow(base, i - 1) * std::exp(p * (log_K - i * log_a));
  acc.add(first / (1.0 - ratio));
  return acc.value();
}

NormEstimate finish_estimate(const GroupModel& model, const VisualMetric& vm, double p, int T,
                             int word_length, PowerSum sums) {
  NormEstimate est;
  est.p = p;
  est.truncation = T;
  est.support_size = sums.support;

  double a = vm.a;
  double base = model.growth_base();
  est.tail.sphere_ratio = base * std::pow(a, -p);
  est.tail.cover_ratio = model.translate_cover_count() * std::pow(a, -p);
  est.tail.sharp_constant = std::pow(a, static_cast<double>(word_length));
  est.tail.paper_constant = std::pow(a, 1.5 * word_length);
  est.converged = est.tail.sphere_ratio < 1.0;

  est.lower = round_down(std::pow(sums.sum_power, 1.0 / p));
  if (word_length == 0) {
    // c(identity) vanishes identically.
    est.lower = est.upper = 0.0;
    est.converged = true;
    return est;
  }
  if (!est.converged) {
    est.upper = infinity();
    est.tail.sharp_tail_power = infinity();
    est.tail.cover_tail_power = infinity();
    return est;
  }
  est.tail.sharp_tail_power =
      geometric_tail_power(model, a, p, T, word_length * std::log(a));
  est.tail.cover_tail_power =
      geometric_tail_power(model, a, p, T, 1.5 * word_length * std::log(a));
  est.upper = round_up(std::pow(sums.sum_power + est.tail.sharp_tail_power, 1.0 / p));
  return est;
}

}  // namespace

NormEstimate lp_norm(const GroupModel& model, const Observable& u, const ReducedWord& g, double p,
                     int T) {
  if (!(p > 0.0)) throw std::invalid_argument("lp_norm needs p > 0");
  if (T < static_cast<int>(g.size()))
    throw std::invalid_argument("lp_norm needs T >= |g|");
  PowerSum sums = truncated_power_sum(u, g, p, T);
  return finish_estimate(model, u.metric(), p, T, static_cast<int>(g.size()), sums);
}

NormEstimate lp_norm_family(const GroupModel& model, const ObservableFamily& fam,
                            const ReducedWord& g, double p, int T) {
  if (!(p > 0.0)) throw std::invalid_argument("lp_norm needs p > 0");
  if (T < static_cast<int>(g.size()))
    throw std::invalid_argument("lp_norm needs T >= |g|");
  PowerSum total;
  KahanSum acc;
  for (const Observable& u : fam.members()) {
    PowerSum s = truncated_power_sum(u, g, p, T);
    acc.add(s.sum_power);
    total.support += s.support;
  }
  total.sum_power = acc.value();
  NormEstimate est = finish_estimate(model, fam.metric(), p, T, static_cast<int>(g.size()), total);
  if (est.converged && !g.empty()) {
    // Each component has the same per-sphere tail bound.
    double s = static_cast<double>(fam.size());
    est.tail.sharp_tail_power *= s;
    est.tail.cover_tail_power *= s;
    est.upper = round_up(std::pow(total.sum_power + est.tail.sharp_tail_power, 1.0 / p));
  }
  return est;
}

double summability_threshold(const GroupModel& model, const VisualMetric& vm, ThresholdMode mode) {
  double log_a = std::log(vm.a);
  switch (mode) {
    case ThresholdMode::remark:
      return std::log(static_cast<double>(model.translate_cover_count())) / log_a;
    case ThresholdMode::exact_growth: {
      double base = model.growth_base();
      if (base <= 1.0) return 0.0;
      return std::log(base) / log_a;
    }
  }
  return 0.0;
}

PropernessBound properness_lower(const ReducedWord& g, const ObservableFamily& fam, double p) {
  PropernessBound out;
  out.cbar = fam.cover_radius();
  int m = static_cast<int>(g.size());
  out.total_indices = m / 3;
  for (int i = 1; i <= out.total_indices; ++i) {
    std::vector<Letter> prefix(g.letters().begin(), g.letters().begin() + 3 * i);
    ReducedWord gamma = ReducedWord::reduce(prefix).inverse();
    BoundaryPoint left = ray_to(gamma * g);
    BoundaryPoint right = ray_to(gamma);
    bool separated = false;
    for (const Observable& u : fam.members()) {
      if (std::abs(u.eval(left) - u.eval(right)) >= fam.cover_radius()) {
        separated = true;
        break;
      }
    }
    if (separated) {
      ++out.qualifying;
    } else {
      out.failed.push_back(i);
    }
  }
  out.measured_k0 = out.total_indices - out.qualifying;
  out.bound = out.qualifying > 0
                  ? fam.cover_radius() * std::pow(static_cast<double>(out.qualifying), 1.0 / p)
                  : 0.0;
  return out;
}

}  // namespace hypemb
