#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hypemb/numerics.hpp"
#include "hypemb/words.hpp"

namespace hypemb {

struct EnumerationCap {
  std::uint64_t max_elements = 10'000'000;
};

/// Free group F_k with the standard generating set K = ball(1).
/// Immutable after construction; safe to share across threads.
class GroupModel {
 public:
  explicit GroupModel(int rank, EnumerationCap cap = {});

  int rank() const { return rank_; }
  int alphabet_size() const { return 2 * rank_; }
  const EnumerationCap& cap() const { return cap_; }

  /// |S(0)| = 1, |S(r)| = 2k (2k-1)^(r-1) for r >= 1.
  std::uint64_t sphere_size(int r) const;
  std::uint64_t ball_size(int r) const;

  /// Growth base of spheres; equals 2k-1 (1 for the degenerate rank-1 model).
  double growth_base() const { return rank_ >= 1 ? 2.0 * rank_ - 1.0 : 0.0; }

  /// Smallest certified n with K^2 covered by n right translates of K.
  int translate_cover_count() const { return static_cast<int>(cover_.size()); }
  const std::vector<ReducedWord>& translate_cover() const { return cover_; }

  std::vector<ReducedWord> ball(int r) const;

 private:
  int rank_;
  EnumerationCap cap_;
  std::vector<ReducedWord> cover_;
  void compute_translate_cover();
};

/// Lazily enumerates the sphere of radius r in lexicographic order.
class SphereRange {
 public:
  SphereRange(const GroupModel& model, int r);

  class iterator {
   public:
    using value_type = ReducedWord;
    const ReducedWord& operator*() const { return current_; }
    iterator& operator++();
    bool operator!=(const iterator& o) const { return done_ != o.done_; }

   private:
    friend class SphereRange;
    iterator(int alphabet, int r, bool done);
    void fill_least(std::size_t from);
    ReducedWord current_;
    int alphabet_ = 0;
    bool done_ = true;
  };

  iterator begin() const;
  iterator end() const;

 private:
  int alphabet_;
  int radius_;
};

/// Deterministic uniform samples over reduced words of a given length.
class WordSampler {
 public:
  WordSampler(int rank, std::uint64_t seed);
  ReducedWord sample(int length);

 private:
  int rank_;
  std::uint64_t state_;
  std::uint32_t next_below(std::uint32_t n);
};

}  // namespace hypemb
