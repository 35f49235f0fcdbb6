#include "hypemb/group.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace hypemb {

GroupModel::GroupModel(int rank, EnumerationCap cap) : rank_(rank), cap_(cap) {
  if (rank < 0 || rank > 26) throw std::invalid_argument("rank must be in [0, 26]");
  compute_translate_cover();
}

std::uint64_t GroupModel::sphere_size(int r) const {
  if (r < 0) return 0;
  if (r == 0) return 1;
  if (rank_ == 0) return 0;
  std::uint64_t n = 2 * static_cast<std::uint64_t>(rank_);
  std::uint64_t base = n - 1;
  std::uint64_t count = n;
  for (int i = 1; i < r; ++i) {
    if (base > 1 && count > (UINT64_MAX / 2) / base) return UINT64_MAX / 2;  // saturate
    count *= base;
  }
  return count;
}

std::uint64_t GroupModel::ball_size(int r) const {
  std::uint64_t total = 0;
  for (int i = 0; i <= r; ++i) {
    std::uint64_t s = sphere_size(i);
    if (s >= UINT64_MAX / 2 - total) return UINT64_MAX / 2;
    total += s;
  }
  return total;
}

std::vector<ReducedWord> GroupModel::ball(int r) const {
  std::uint64_t total = ball_size(r);
  if (total > cap_.max_elements)
    throw ResourceCapError("max_elements", total, cap_.max_elements);
  std::vector<ReducedWord> out;
  out.reserve(total);
  for (int i = 0; i <= r; ++i) {
    for (const ReducedWord& w : SphereRange(*this, i)) out.push_back(w);
  }
  return out;
}

namespace {

// Greedy set cover of K^2 by right translates K*gamma, lowest length-lex
// tie-break, followed by a budgeted exhaustive search for a smaller cover.
// The 2k single-letter translates always cover K^2, so that cover is tried
// explicitly before the subset search.
std::vector<ReducedWord> minimal_translate_cover(int rank) {
  std::vector<ReducedWord> k_ball;  // K = ball(1)
  k_ball.push_back(ReducedWord());
  for (int x = 0; x < 2 * rank; ++x) {
    Letter l = static_cast<Letter>(x);
    k_ball.push_back(ReducedWord::reduce(std::span<const Letter>(&l, 1)));
  }

  // Universe K^2 = ball(2), in length-lex order.
  std::vector<ReducedWord> universe;
  std::set<std::vector<Letter>> seen;
  for (const ReducedWord& x : k_ball)
    for (const ReducedWord& y : k_ball) {
      ReducedWord w = x * y;
      if (seen.insert(w.letters()).second) universe.push_back(w);
    }
  std::sort(universe.begin(), universe.end(), LengthLexLess{});
  std::map<std::vector<Letter>, int> index;
  for (std::size_t i = 0; i < universe.size(); ++i) index[universe[i].letters()] = static_cast<int>(i);

  // Candidate translates: gamma in K^2; covered(gamma) = K*gamma within K^2.
  std::vector<std::vector<int>> covers(universe.size());
  for (std::size_t g = 0; g < universe.size(); ++g) {
    for (const ReducedWord& x : k_ball) {
      ReducedWord w = x * universe[g];
      auto it = index.find(w.letters());
      if (it != index.end()) covers[g].push_back(it->second);
    }
    std::sort(covers[g].begin(), covers[g].end());
    covers[g].erase(std::unique(covers[g].begin(), covers[g].end()), covers[g].end());
  }

  auto covers_all = [&](const std::vector<int>& picks) {
    std::vector<char> hit(universe.size(), 0);
    for (int g : picks)
      for (int e : covers[static_cast<std::size_t>(g)]) hit[static_cast<std::size_t>(e)] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  };

  // Greedy.
  std::vector<int> greedy;
  {
    std::vector<char> hit(universe.size(), 0);
    std::size_t remaining = universe.size();
    while (remaining > 0) {
      int best = -1;
      std::size_t best_gain = 0;
      for (std::size_t g = 0; g < universe.size(); ++g) {
        std::size_t gain = 0;
        for (int e : covers[g])
          if (!hit[static_cast<std::size_t>(e)]) ++gain;
        if (gain > best_gain) {
          best_gain = gain;
          best = static_cast<int>(g);
        }
      }
      greedy.push_back(best);
      for (int e : covers[static_cast<std::size_t>(best)]) {
        if (!hit[static_cast<std::size_t>(e)]) {
          hit[static_cast<std::size_t>(e)] = 1;
          --remaining;
        }
      }
    }
  }

  std::vector<int> best = greedy;

  // Single-letter translates as an explicit candidate.
  if (rank >= 1) {
    std::vector<int> letters;
    for (std::size_t g = 0; g < universe.size(); ++g)
      if (universe[g].size() == 1) letters.push_back(static_cast<int>(g));
    if (letters.size() < best.size() && covers_all(letters)) best = letters;
  }

  // Budgeted exhaustive search for anything strictly smaller, ascending size,
  // subsets in lexicographic candidate order so reruns are byte-identical.
  std::uint64_t budget = 5'000'000;
  for (std::size_t size = 1; size < best.size() && budget > 0; ++size) {
    std::vector<int> combo(size);
    for (std::size_t i = 0; i < size; ++i) combo[i] = static_cast<int>(i);
    bool found = false;
    while (budget > 0) {
      budget = budget > universe.size() ? budget - universe.size() : 0;
      if (covers_all(combo)) {
        best = combo;
        found = true;
        break;
      }
      // next combination
      long pos = static_cast<long>(size) - 1;
      while (pos >= 0 &&
             combo[static_cast<std::size_t>(pos)] ==
                 static_cast<int>(universe.size() - size + static_cast<std::size_t>(pos)))
        --pos;
      if (pos < 0) break;
      ++combo[static_cast<std::size_t>(pos)];
      for (std::size_t i = static_cast<std::size_t>(pos) + 1; i < size; ++i)
        combo[i] = combo[i - 1] + 1;
    }
    if (found) break;
  }

  std::vector<ReducedWord> out;
  out.reserve(best.size());
  for (int g : best) out.push_back(universe[static_cast<std::size_t>(g)]);
  std::sort(out.begin(), out.end(), LengthLexLess{});
  return out;
}

}  // namespace

void GroupModel::compute_translate_cover() { cover_ = minimal_translate_cover(rank_); }

SphereRange::SphereRange(const GroupModel& model, int r) : alphabet_(model.alphabet_size()), radius_(r) {
  if (r < 0) throw std::invalid_argument("sphere radius must be >= 0");
  std::uint64_t size = model.sphere_size(r);
  if (size > model.cap().max_elements)
    throw ResourceCapError("max_elements", size, model.cap().max_elements);
}

SphereRange::iterator::iterator(int alphabet, int r, bool done) : alphabet_(alphabet), done_(done) {
  if (done_) return;
  if (r == 0) {
    current_ = ReducedWord();
    return;
  }
  if (alphabet_ == 0) {
    done_ = true;
    return;
  }
  current_.letters_.assign(static_cast<std::size_t>(r), 0);
  fill_least(0);
}

void SphereRange::iterator::fill_least(std::size_t from) {
  for (std::size_t i = from; i < current_.letters_.size(); ++i) {
    Letter least = 0;
    if (i > 0 && inverse_letter(current_.letters_[i - 1]) == 0) least = 1;
    current_.letters_[i] = least;
  }
}

SphereRange::iterator& SphereRange::iterator::operator++() {
  auto& w = current_.letters_;
  if (w.empty()) {
    done_ = true;
    return *this;
  }
  long pos = static_cast<long>(w.size()) - 1;
  while (pos >= 0) {
    std::size_t i = static_cast<std::size_t>(pos);
    Letter forbidden = (i > 0) ? inverse_letter(w[i - 1]) : static_cast<Letter>(255);
    Letter next = static_cast<Letter>(w[i] + 1);
    while (next < alphabet_ && next == forbidden) ++next;
    if (next < alphabet_) {
      w[i] = next;
      fill_least(i + 1);
      return *this;
    }
    --pos;
  }
  done_ = true;
  return *this;
}

SphereRange::iterator SphereRange::begin() const { return iterator(alphabet_, radius_, false); }
SphereRange::iterator SphereRange::end() const { return iterator(alphabet_, radius_, true); }

WordSampler::WordSampler(int rank, std::uint64_t seed) : rank_(rank), state_(mix_seed(seed, 0x77)) {
  if (rank < 1) throw std::invalid_argument("WordSampler needs rank >= 1");
}

std::uint32_t WordSampler::next_below(std::uint32_t n) {
  // multiply-shift; bias is negligible for tiny n
  std::uint64_t r = splitmix64(state_);
  return static_cast<std::uint32_t>((static_cast<unsigned __int128>(r) * n) >> 64);
}

ReducedWord WordSampler::sample(int length) {
  std::vector<Letter> letters;
  letters.reserve(static_cast<std::size_t>(length));
  for (int i = 0; i < length; ++i) {
    if (i == 0) {
      letters.push_back(static_cast<Letter>(next_below(static_cast<std::uint32_t>(2 * rank_))));
    } else {
      Letter forbidden = inverse_letter(letters.back());
      Letter x = static_cast<Letter>(next_below(static_cast<std::uint32_t>(2 * rank_ - 1)));
      if (x >= forbidden) x = static_cast<Letter>(x + 1);
      letters.push_back(x);
    }
  }
  return ReducedWord::reduce(letters);
}

}  // namespace hypemb
