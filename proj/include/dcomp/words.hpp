#pragma once

#include <cstdint>
#include <vector>

#include "dcomp/common.hpp"

namespace dcomp {

using Symbol = int;
using Word = std::vector<Symbol>;

// Length-n words over {0..alphabet-1}, indexed lexicographically with
// position 0 most significant.
struct WordSpace {
  int alphabet = 1;
  int n = 0;

  std::uint64_t count() const { return checked_pow(static_cast<std::uint64_t>(alphabet), n); }

  void word_into(std::uint64_t idx, Word& w) const {
    w.resize(n);
    for (int i = n - 1; i >= 0; --i) {
      w[i] = static_cast<Symbol>(idx % alphabet);
      idx /= alphabet;
    }
  }

  Word word(std::uint64_t idx) const {
    Word w;
    word_into(idx, w);
    return w;
  }

  std::uint64_t index(const Word& w) const {
    std::uint64_t idx = 0;
    for (int i = 0; i < n; ++i) idx = idx * alphabet + static_cast<std::uint64_t>(w[i]);
    return idx;
  }

  // Weight of position i (0-based, most significant first) in the index.
  std::uint64_t place(int i) const {
    return checked_pow(static_cast<std::uint64_t>(alphabet), n - 1 - i);
  }

  int digit(std::uint64_t idx, int i) const {
    return static_cast<int>(idx / place(i) % static_cast<std::uint64_t>(alphabet));
  }

  // Index of the word with position i replaced by symbol s.
  std::uint64_t with_digit(std::uint64_t idx, int i, int s) const {
    std::uint64_t p = place(i);
    int old = static_cast<int>(idx / p % static_cast<std::uint64_t>(alphabet));
    return idx + (static_cast<std::int64_t>(s) - old) * static_cast<std::int64_t>(p);
  }
};

inline int hamming_distance(const Word& a, const Word& b) {
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
  return d;
}

}  // namespace dcomp
