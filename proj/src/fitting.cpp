#include "hypemb/fitting.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "hypemb/numerics.hpp"

namespace hypemb {

LogLogFit fit_loglog(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) throw std::invalid_argument("fit needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  double n = static_cast<double>(points.size());
  for (auto [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0))
      throw std::invalid_argument("log-log fit needs positive coordinates");
    double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  double vxx = sxx - sx * sx / n;
  double vxy = sxy - sx * sy / n;
  double vyy = syy - sy * sy / n;
  if (vxx == 0.0) throw std::invalid_argument("log-log fit needs distinct x values");
  LogLogFit fit;
  fit.slope = vxy / vxx;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.r_squared = vyy == 0.0 ? 1.0 : (vxy * vxy) / (vxx * vyy);
  return fit;
}

CompressionFitResult compression_fit(const GroupModel& model, const ObservableFamily& fam,
                                     double p, const std::vector<int>& lengths,
                                     int samples_per_length, std::uint64_t seed,
                                     TruncationPolicy policy, double max_rel_width) {
  if (lengths.size() < 2) throw std::invalid_argument("compression fit needs >= 2 lengths");
  CompressionFitResult out;
  std::vector<std::pair<double, double>> envelope_points;
  std::vector<std::pair<double, double>> mid_points;

  for (int length : lengths) {
    WordSampler sampler(model.rank(), mix_seed(seed, static_cast<std::uint64_t>(length)));
    int T = policy.truncation_for(length);
    CompressionLengthRow row;
    row.length = length;
    row.min_norm = std::numeric_limits<double>::infinity();
    KahanSum mean;
    for (int s = 0; s < samples_per_length; ++s) {
      ReducedWord g = sampler.sample(length);
      NormEstimate est = lp_norm_family(model, fam, g, p, T);
      if (!est.converged)
        throw PrecisionError("compression fit: norm diverges at p=" + std::to_string(p));
      double width = est.relative_width();
      if (width > max_rel_width)
        throw PrecisionError("compression fit: norm interval too wide (rel width " +
                             std::to_string(width) + "); increase T");
      row.max_rel_width = std::max(row.max_rel_width, width);
      double mid = est.midpoint();
      row.min_norm = std::min(row.min_norm, mid);
      mean.add(mid);
      mid_points.emplace_back(static_cast<double>(length), mid);
    }
    row.mean_norm = mean.value() / samples_per_length;
    envelope_points.emplace_back(static_cast<double>(length), row.min_norm);
    out.rows.push_back(row);
  }

  LogLogFit env = fit_loglog(envelope_points);
  LogLogFit mid = fit_loglog(mid_points);
  out.exponent = env.slope;
  out.fit_quality = env.r_squared;
  out.mid_slope = mid.slope;
  return out;
}

}  // namespace hypemb
