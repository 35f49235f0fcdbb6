#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace hypemb {

/// Thrown when an enumeration would exceed a configured resource cap.
/// The CLI maps this to exit code 3.
struct ResourceCapError : std::runtime_error {
  ResourceCapError(const std::string& cap_name, std::uint64_t requested, std::uint64_t cap)
      : std::runtime_error("resource cap '" + cap_name + "' exceeded: requested " +
                           std::to_string(requested) + " > cap " + std::to_string(cap)) {}
};

/// Thrown when a certified interval is too wide for the requested use
/// (remedy: increase the truncation radius).
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Compensated (Kahan) accumulator. Addition order is fixed by the caller,
/// which keeps reductions deterministic.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

inline double infinity() { return std::numeric_limits<double>::infinity(); }

/// Nudge interval endpoints outward by a few ulps so that rounding in the
/// accumulation cannot flip a certified bound.
inline double round_down(double x) {
  return x - 4.0 * std::numeric_limits<double>::epsilon() * (x < 0 ? -x : x);
}
inline double round_up(double x) {
  return x + 4.0 * std::numeric_limits<double>::epsilon() * (x < 0 ? -x : x);
}

/// splitmix64; used to derive independent substream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed + 0x632be59bd9b4e019ULL * (stream + 1);
  return splitmix64(s);
}

}  // namespace hypemb
