#include "hypemb/words.hpp"

#include <algorithm>
#include <stdexcept>

namespace hypemb {

ReducedWord ReducedWord::unchecked(std::vector<Letter> letters) {
  ReducedWord w;
  w.letters_ = std::move(letters);
  return w;
}

ReducedWord ReducedWord::reduce(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (Letter x : letters) {
    if (!out.empty() && out.back() == inverse_letter(x)) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return unchecked(std::move(out));
}

ReducedWord ReducedWord::parse(std::string_view text) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char ch : text) {
    if (ch >= 'a' && ch <= 'z') {
      letters.push_back(static_cast<Letter>(2 * (ch - 'a')));
    } else if (ch >= 'A' && ch <= 'Z') {
      letters.push_back(static_cast<Letter>(2 * (ch - 'A') + 1));
    } else if (ch == ' ' || ch == '1') {
      continue;  // allow "1" as the identity
    } else {
      throw std::invalid_argument("bad letter in word literal: " + std::string(1, ch));
    }
  }
  return reduce(letters);
}

ReducedWord ReducedWord::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (Letter& x : out) x = inverse_letter(x);
  return unchecked(std::move(out));
}

ReducedWord operator*(const ReducedWord& u, const ReducedWord& v) {
  std::size_t i = u.size();
  std::size_t j = 0;
  while (i > 0 && j < v.size() && v[j] == inverse_letter(u[i - 1])) {
    --i;
    ++j;
  }
  std::vector<Letter> out;
  out.reserve(i + v.size() - j);
  out.insert(out.end(), u.letters_.begin(), u.letters_.begin() + static_cast<long>(i));
  out.insert(out.end(), v.letters_.begin() + static_cast<long>(j), v.letters_.end());
  return ReducedWord::unchecked(std::move(out));
}

std::string ReducedWord::str() const {
  if (letters_.empty()) return "1";
  std::string s;
  s.reserve(letters_.size());
  for (Letter x : letters_) {
    char base = is_inverse(x) ? 'A' : 'a';
    s.push_back(static_cast<char>(base + generator_of(x)));
  }
  return s;
}

bool length_lex_less(const ReducedWord& u, const ReducedWord& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  return std::lexicographical_compare(u.letters().begin(), u.letters().end(),
                                      v.letters().begin(), v.letters().end());
}

ReducedWord reduce_concat(const ReducedWord& u, const ReducedWord& v) { return u * v; }

int word_distance(const ReducedWord& u, const ReducedWord& v) {
  // |u^-1 v| = |u| + |v| - 2 lcp(u, v) on the tree; avoids building the product.
  int lcp = common_prefix_length(u, v);
  return static_cast<int>(u.size() + v.size()) - 2 * lcp;
}

int common_prefix_length(const ReducedWord& u, const ReducedWord& v) {
  std::size_t n = std::min(u.size(), v.size());
  std::size_t i = 0;
  while (i < n && u[i] == v[i]) ++i;
  return static_cast<int>(i);
}

double gromov_product(const ReducedWord& u, const ReducedWord& v) {
  return 0.5 * (static_cast<double>(u.size()) + static_cast<double>(v.size()) -
                word_distance(u, v));
}

int cancellation_length(const ReducedWord& u, const ReducedWord& g) {
  std::size_t c = 0;
  while (c < u.size() && c < g.size() && u[u.size() - 1 - c] == inverse_letter(g[c])) ++c;
  return static_cast<int>(c);
}

}  // namespace hypemb
