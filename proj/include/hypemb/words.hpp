#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hypemb {

/// A generator letter of a free group. Letters 2j and 2j+1 denote the j-th
/// generator and its inverse; the pairing is a single XOR.
using Letter = std::uint8_t;

constexpr Letter inverse_letter(Letter x) { return static_cast<Letter>(x ^ 1u); }
constexpr int generator_of(Letter x) { return x >> 1; }
constexpr bool is_inverse(Letter x) { return (x & 1u) != 0; }

/// A freely reduced word: no adjacent (x, x^-1) pair. The empty word is the
/// identity. Immutable after construction.
class ReducedWord {
 public:
  ReducedWord() = default;

  /// Reduce an arbitrary letter sequence (folds out cancelling pairs).
  static ReducedWord reduce(std::span<const Letter> letters);

  /// Parse "abA" style notation: 'a'..'z' generators, 'A'..'Z' inverses.
  static ReducedWord parse(std::string_view text);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter back() const { return letters_.back(); }
  const std::vector<Letter>& letters() const { return letters_; }

  ReducedWord inverse() const;

  /// Reduced concatenation: cancellation can only happen at the junction.
  friend ReducedWord operator*(const ReducedWord& u, const ReducedWord& v);

  bool operator==(const ReducedWord& o) const { return letters_ == o.letters_; }
  bool operator!=(const ReducedWord& o) const { return !(*this == o); }

  std::string str() const;

 private:
  std::vector<Letter> letters_;
  friend class SphereRange;
  friend class BoundaryPoint;
  static ReducedWord unchecked(std::vector<Letter> letters);
};

/// Length-lexicographic order (shorter first, then letter-wise).
bool length_lex_less(const ReducedWord& u, const ReducedWord& v);

struct LengthLexLess {
  bool operator()(const ReducedWord& u, const ReducedWord& v) const {
    return length_lex_less(u, v);
  }
};

ReducedWord reduce_concat(const ReducedWord& u, const ReducedWord& v);

/// Word metric d(u, v) = |u^-1 v|.
int word_distance(const ReducedWord& u, const ReducedWord& v);

int common_prefix_length(const ReducedWord& u, const ReducedWord& v);

/// (u|v) = (|u| + |v| - d(u,v)) / 2; equals the common prefix length on the tree.
double gromov_product(const ReducedWord& u, const ReducedWord& v);

/// Number of letters of g cancelled when forming the reduced product u * g.
int cancellation_length(const ReducedWord& u, const ReducedWord& g);

}  // namespace hypemb
