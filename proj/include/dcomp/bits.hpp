#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "dcomp/common.hpp"

namespace dcomp {

// Codewords are strings over {'0','1'}; lengths stay human-readable and the
// scales involved are small.
using Bits = std::string;

inline Bits to_fixed_bits(std::uint64_t value, int width) {
  Bits b(static_cast<std::size_t>(width), '0');
  for (int i = width - 1; i >= 0; --i) {
    b[static_cast<std::size_t>(i)] = static_cast<char>('0' + (value & 1));
    value >>= 1;
  }
  return b;
}

inline std::uint64_t from_bits(const Bits& s, std::size_t pos, int width) {
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i) v = (v << 1) | static_cast<std::uint64_t>(s[pos + i] - '0');
  return v;
}

inline int floor_log2_u64(std::uint64_t v) { return 63 - __builtin_clzll(v); }

// Self-delimiting code for positive integers: floor(log2 l) zeros followed by
// the binary expansion of l. Length 2*floor(log2 l) + 1.
inline Bits elias_gamma(std::uint64_t l) {
  require(l >= 1, "elias_gamma: argument must be >= 1");
  int k = floor_log2_u64(l);
  Bits out(static_cast<std::size_t>(k), '0');
  out += to_fixed_bits(l, k + 1);
  return out;
}

inline int elias_gamma_length(std::uint64_t l) { return 2 * floor_log2_u64(l) + 1; }

struct GammaDecoded {
  std::uint64_t value = 0;
  std::size_t consumed = 0;
  bool ok = false;
};

inline GammaDecoded elias_gamma_decode(const Bits& s, std::size_t pos = 0) {
  GammaDecoded r;
  std::size_t i = pos;
  while (i < s.size() && s[i] == '0') ++i;
  if (i >= s.size()) return r;
  int k = static_cast<int>(i - pos);
  if (i + static_cast<std::size_t>(k) + 1 > s.size()) return r;
  r.value = from_bits(s, i, k + 1);
  r.consumed = i + static_cast<std::size_t>(k) + 1 - pos;
  r.ok = true;
  return r;
}

// Kraft sum over the set of distinct codewords.
inline double kraft_sum(std::vector<Bits> codewords) {
  std::sort(codewords.begin(), codewords.end());
  codewords.erase(std::unique(codewords.begin(), codewords.end()), codewords.end());
  double s = 0;
  for (const Bits& c : codewords) s += std::pow(2.0, -static_cast<double>(c.size()));
  return s;
}

// Prefix condition on the set of distinct codewords.
inline bool is_prefix_free(std::vector<Bits> codewords) {
  std::sort(codewords.begin(), codewords.end());
  codewords.erase(std::unique(codewords.begin(), codewords.end()), codewords.end());
  for (std::size_t i = 0; i + 1 < codewords.size(); ++i) {
    const Bits& a = codewords[i];
    const Bits& b = codewords[i + 1];
    if (a.size() <= b.size() && b.compare(0, a.size(), a) == 0) return false;
  }
  return true;
}

}  // namespace dcomp
