#include "hypemb/disk.hpp"

#include <Eigen/Dense>

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "hypemb/numerics.hpp"

namespace hypemb {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

DiskPoint::DiskPoint(std::complex<double> z_) : z(z_) {
  if (!(std::abs(z) < 1.0)) throw std::invalid_argument("disk point must satisfy |z| < 1");
}

DiskPoint DiskPoint::polar_hyperbolic(double dist, double angle) {
  double r = std::tanh(0.5 * dist);
  return DiskPoint(std::polar(r, angle));
}

double hyp_distance(const DiskPoint& x, const DiskPoint& y) {
  double num = 2.0 * std::norm(x.z - y.z);
  double den = (1.0 - std::norm(x.z)) * (1.0 - std::norm(y.z));
  return std::acosh(1.0 + num / den);
}

Wall::Wall(double t1, double t2) {
  t1 = std::fmod(std::fmod(t1, two_pi) + two_pi, two_pi);
  t2 = std::fmod(std::fmod(t2, two_pi) + two_pi, two_pi);
  if (t1 > t2) std::swap(t1, t2);
  if (t1 == t2) throw std::invalid_argument("wall needs distinct boundary angles");
  theta1 = t1;
  theta2 = t2;
}

namespace {

struct WallFrame {
  std::complex<double> q;   // disk point closest to the origin on the wall
  std::complex<double> p1;  // image of the first endpoint under the automorphism
};

/// Automorphism z -> (z - q) / (1 - conj(q) z) maps the wall to a diameter
/// through the origin with endpoint direction p1.
WallFrame wall_frame(double theta1, double theta2) {
  double c = 0.5 * (theta1 + theta2);
  double h = 0.5 * std::abs(theta2 - theta1);  // in (0, pi) for canonical angles
  // t < 0 when the gap is reflex; the closest point then lies in direction
  // c + pi, which the signed radius encodes.
  double t = std::tan(0.25 * std::numbers::pi - 0.5 * h);
  WallFrame f;
  f.q = std::polar(t, c);
  std::complex<double> u1 = std::polar(1.0, theta1);
  f.p1 = (u1 - f.q) / (1.0 - std::conj(f.q) * u1);
  return f;
}

double side_of(const WallFrame& f, std::complex<double> z) {
  std::complex<double> v = (z - f.q) / (1.0 - std::conj(f.q) * z);
  return std::imag(v * std::conj(f.p1));
}

}  // namespace

bool wall_separates(const Wall& wall, const DiskPoint& x, const DiskPoint& y) {
  WallFrame f = wall_frame(wall.theta1, wall.theta2);
  return side_of(f, x.z) * side_of(f, y.z) < 0.0;
}

double wall_distance_to_origin(const Wall& wall) {
  double h = 0.5 * (wall.theta2 - wall.theta1);
  if (h > 0.5 * std::numbers::pi) h = std::numbers::pi - h;  // reflex gap: same geodesic
  double t = std::tan(0.25 * std::numbers::pi - 0.5 * h);
  return 2.0 * std::atanh(t);
}

namespace {

struct StratumResult {
  double mass = 0.0;
  double variance = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t samples = 0;
};

/// One stratum of the stratified estimator: the wall midpoint c ranges over
/// [2 pi s/S, 2 pi (s+1)/S); the gap is drawn from the kinematic density by
/// inverse CDF on [gap_lo, 2 pi - gap_lo].
StratumResult run_stratum(const DiskPoint& x, const DiskPoint& y, double gap_lo,
                          double domain_mass, int stratum, int strata, std::uint64_t n,
                          std::uint64_t seed) {
  std::uint64_t state = mix_seed(seed, static_cast<std::uint64_t>(stratum));
  double cot_lo = 1.0 / std::tan(0.5 * gap_lo);
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    double u1 = (static_cast<double>(splitmix64(state) >> 11)) * 0x1.0p-53;
    double u2 = (static_cast<double>(splitmix64(state) >> 11)) * 0x1.0p-53;
    double c = two_pi * (stratum + u1) / strata;
    double gap = 2.0 * std::atan2(1.0, cot_lo * (1.0 - 2.0 * u2));
    Wall wall(c - 0.5 * gap, c + 0.5 * gap);
    if (wall_separates(wall, x, y)) ++hits;
  }
  StratumResult out;
  out.hits = hits;
  out.samples = n;
  double stratum_mass = domain_mass / strata;
  double phat = n > 0 ? static_cast<double>(hits) / static_cast<double>(n) : 0.0;
  out.mass = stratum_mass * phat;
  out.variance = stratum_mass * stratum_mass * phat * (1.0 - phat) / std::max<double>(1.0, static_cast<double>(n));
  return out;
}

}  // namespace

McEstimate separating_measure(const DiskPoint& x, const DiskPoint& y, const McConfig& mc) {
  McEstimate out;
  if (x.z == y.z) return out;  // exactly zero, no sampling

  // Walls separating the pair pass within max of the hyperbolic norms of the
  // two points, which bounds their angular gap away from zero.
  double reach = std::max(hyp_distance(DiskPoint(0.0), x), hyp_distance(DiskPoint(0.0), y));
  double h_min = 0.5 * std::numbers::pi - 2.0 * std::atan(std::tanh(0.5 * (reach + 1e-9)));
  double gap_lo = std::max(mc.min_gap, 2.0 * h_min);
  out.gap_floor = gap_lo;

  out.domain_mass = two_pi * 4.0 / std::tan(0.5 * gap_lo);

  int strata = std::max(1, mc.strata);
  std::uint64_t per_stratum = mc.samples / static_cast<std::uint64_t>(strata);
  std::vector<StratumResult> results(static_cast<std::size_t>(strata));

  int workers = std::max(1, mc.workers);
  if (workers == 1) {
    for (int s = 0; s < strata; ++s)
      results[static_cast<std::size_t>(s)] =
          run_stratum(x, y, gap_lo, out.domain_mass, s, strata, per_stratum, mc.seed);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int s = next.fetch_add(1); s < strata; s = next.fetch_add(1))
          results[static_cast<std::size_t>(s)] =
              run_stratum(x, y, gap_lo, out.domain_mass, s, strata, per_stratum, mc.seed);
      });
    }
    for (auto& t : pool) t.join();
  }

  KahanSum mass, variance;
  for (const StratumResult& r : results) {
    mass.add(r.mass);
    variance.add(r.variance);
    out.hits += r.hits;
    out.samples += r.samples;
  }
  out.value = mass.value();
  out.stderr_ = std::sqrt(variance.value());
  out.flagged = out.value > 0.0 && out.stderr_ > mc.stderr_rel_tol * out.value;
  return out;
}

McEstimate wall_cocycle_norm(const DiskPoint& z, double p, const McConfig& mc) {
  if (!(p >= 1.0)) throw std::invalid_argument("wall cocycle norm needs p >= 1");
  McEstimate measure = separating_measure(DiskPoint(0.0), z, mc);
  McEstimate out = measure;
  out.value = std::pow(measure.value, 1.0 / p);
  // Delta method: d/dm m^{1/p} = m^{1/p - 1} / p.
  out.stderr_ = measure.value > 0.0
                    ? std::pow(measure.value, 1.0 / p - 1.0) / p * measure.stderr_
                    : 0.0;
  return out;
}

CndResult cnd_check(std::span<const DiskPoint> points, double tol) {
  std::size_t n = points.size();
  if (n < 2) throw std::invalid_argument("cnd check needs at least two points");
  std::vector<std::vector<double>> kernel(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      kernel[i][j] = kernel[j][i] = hyp_distance(points[i], points[j]);
  return cnd_check_kernel(kernel, tol);
}

CndResult cnd_check_kernel(const std::vector<std::vector<double>>& kernel, double tol) {
  const auto n = static_cast<Eigen::Index>(kernel.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = kernel[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  Eigen::MatrixXd centered = centering * m * centering;
  centered = 0.5 * (centered + centered.transpose());  // symmetrize rounding
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(centered, Eigen::EigenvaluesOnly);
  CndResult out;
  out.max_centered_eigenvalue = solver.eigenvalues().maxCoeff();
  out.pass = out.max_centered_eigenvalue <= tol;
  return out;
}

}  // namespace hypemb
