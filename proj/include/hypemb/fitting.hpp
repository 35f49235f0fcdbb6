#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hypemb/cocycle.hpp"

namespace hypemb {

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least-squares fit of log(y) against log(x). Points with y <= 0 are invalid.
LogLogFit fit_loglog(const std::vector<std::pair<double, double>>& points);

struct CompressionLengthRow {
  int length = 0;
  double min_norm = 0.0;   // lower envelope (midpoints)
  double mean_norm = 0.0;
  double max_rel_width = 0.0;
};

struct CompressionFitResult {
  double exponent = 0.0;      // lower-envelope log-log slope
  double fit_quality = 0.0;   // R^2 of the envelope fit
  double mid_slope = 0.0;     // slope through all (length, midpoint) samples
  std::vector<CompressionLengthRow> rows;
};

struct TruncationPolicy {
  double multiplier = 2.0;
  int offset = 8;
  int truncation_for(int length) const {
    return static_cast<int>(multiplier * length) + offset;
  }
};

/// Samples random reduced words per length, measures the family cocycle norm
/// with certified intervals, and fits the lower envelope of log-norm against
/// log-length. Throws PrecisionError when an interval is wider than
/// max_rel_width of its midpoint (remedy: widen the truncation policy).
CompressionFitResult compression_fit(const GroupModel& model, const ObservableFamily& fam,
                                     double p, const std::vector<int>& lengths,
                                     int samples_per_length, std::uint64_t seed,
                                     TruncationPolicy policy = {}, double max_rel_width = 0.05);

}  // namespace hypemb
