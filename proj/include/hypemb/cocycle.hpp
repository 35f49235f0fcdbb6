#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "hypemb/group.hpp"
#include "hypemb/observables.hpp"

namespace hypemb {

/// c(g)(gamma) = f_u(gamma g) - f_u(gamma) for the right-translation action on
/// functions of the group, with f_u(gamma) = u(xi_gamma).
double cocycle_eval(const ReducedWord& g, const Observable& u, const ReducedWord& gamma);

/// c(g)(gamma) can be nonzero only when gamma consists of a prefix of the
/// anchor's infinite word followed by the inverse of a prefix of g (read
/// backwards): everywhere else both rays branch off the anchor at the same
/// vertex. Returns the candidate set within the ball of radius T, sorted
/// length-lex, duplicates removed.
std::vector<ReducedWord> cocycle_support_candidates(const Observable& u, const ReducedWord& g,
                                                    int T);

/// Finitely supported part of c(g) on the ball of radius T plus the data
/// needed to certify the tail. Values are IEEE doubles (policy recorded).
class CocycleVector {
 public:
  static constexpr const char* value_policy = "ieee-double";

  CocycleVector(int truncation, std::map<ReducedWord, double, LengthLexLess> values)
      : truncation_(truncation), values_(std::move(values)) {}

  int truncation() const { return truncation_; }
  const std::map<ReducedWord, double, LengthLexLess>& values() const { return values_; }
  double at(const ReducedWord& gamma) const;

 private:
  int truncation_;
  std::map<ReducedWord, double, LengthLexLess> values_;
};

CocycleVector cocycle_vector(const Observable& u, const ReducedWord& g, int T);

/// Tail data for the norm interval. The sharp per-sphere bound on the tree is
///   |c(g)(gamma)| <= min(1, a^{-(|gamma| - |g|)}),
/// from the 1-Lipschitz observable and a branch depth of at least
/// |gamma| - |g|; the looser translate-cover form with constant
/// C~ = C a^{(3/2)|g|} a^B (A = 1, B = 0 here) is recorded alongside so
/// reports can reproduce the geometric series sum (n a^{-p/A})^{i-1}.
struct TailCertificate {
  double sphere_ratio = 0.0;   // (2k-1) a^-p, drives the converged flag
  double cover_ratio = 0.0;    // n a^-p with n the translate-cover constant
  double sharp_constant = 0.0; // a^{|g|}
  double paper_constant = 0.0; // a^{1.5 |g|}
  double sharp_tail_power = 0.0;  // certified bound on sum_{|gamma|>T} |c|^p
  double cover_tail_power = 0.0;  // same bound via the cover form
};

struct NormEstimate {
  double p = 2.0;
  double lower = 0.0;          // truncated sum^(1/p), a certified lower bound
  double upper = 0.0;          // +inf when the ratio test fails
  bool converged = false;
  TailCertificate tail;
  std::uint64_t support_size = 0;
  int truncation = 0;
  double midpoint() const { return 0.5 * (lower + upper); }
  double relative_width() const;
};

/// Certified interval for ||c(g)||_p, p > 0. The truncated sum is exact: the
/// support inside the ball is enumerated, not the ball.
NormEstimate lp_norm(const GroupModel& model, const Observable& u, const ReducedWord& g, double p,
                     int T);

/// l_p-direct-sum norm over the family: ||(c_1,...,c_s)(g)||_p^p = sum_i ||c_i(g)||_p^p.
NormEstimate lp_norm_family(const GroupModel& model, const ObservableFamily& fam,
                            const ReducedWord& g, double p, int T);

enum class ThresholdMode { remark, exact_growth };

/// Summability threshold for p: A ln(n)/ln(a) in remark mode (n the translate
/// cover constant), ln(2k-1)/ln(a) in exact-growth mode (the Hausdorff
/// dimension of the boundary).
double summability_threshold(const GroupModel& model, const VisualMetric& vm, ThresholdMode mode);

struct PropernessBound {
  double bound = 0.0;       // cbar * count^(1/p)
  int qualifying = 0;       // indices i where some family member separates the pair
  int total_indices = 0;    // floor(|g| / 3)
  int measured_k0 = 0;      // non-qualifying indices, reported
  double cbar = 0.0;
  std::vector<int> failed;  // the non-qualifying indices
};

/// Lower bound on the family norm from the prefix elements
/// gamma_i = (g-prefix of length 3i)^-1: each index whose ray pair is
/// separated by >= cbar by some family member contributes cbar^p to the norm.
PropernessBound properness_lower(const ReducedWord& g, const ObservableFamily& fam, double p);

}  // namespace hypemb
