#pragma once

#include <cstdint>
#include <vector>

#include "dcomp/common.hpp"
#include "dcomp/rng.hpp"
#include "dcomp/words.hpp"

namespace dcomp {

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline int smallest_prime_at_least(int k) {
  int p = k < 2 ? 2 : k;
  while (!is_prime(p)) ++p;
  return p;
}

// Arithmetic mod a prime p; elements are ints in [0, p).
struct PrimeField {
  int p;
  int add(int a, int b) const { return (a + b) % p; }
  int sub(int a, int b) const { return (a - b % p + p) % p; }
  int mul(int a, int b) const {
    return static_cast<int>(static_cast<std::int64_t>(a) * b % p);
  }
  int neg(int a) const { return (p - a % p) % p; }
};

// Dense matrix over GF(p), row major.
struct GfMatrix {
  int rows = 0;
  int cols = 0;
  int p = 2;
  std::vector<int> a;  // rows*cols

  int& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  int at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

  static GfMatrix random(int rows, int cols, int p, CounterRng& rng) {
    GfMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.p = p;
    m.a.resize(static_cast<std::size_t>(rows) * cols);
    for (int& v : m.a) v = rng.below_int(p);
    return m;
  }

  // y = M x over GF(p); x indexed by column.
  void apply(const Word& x, std::vector<int>& y) const {
    y.assign(static_cast<std::size_t>(rows), 0);
    for (int r = 0; r < rows; ++r) {
      std::int64_t acc = 0;
      const int* row = a.data() + static_cast<std::size_t>(r) * cols;
      for (int c = 0; c < cols; ++c) acc += static_cast<std::int64_t>(row[c]) * x[c];
      y[static_cast<std::size_t>(r)] = static_cast<int>(acc % p);
    }
  }

  // Single-column contribution, for incremental syndrome updates.
  void add_column(std::vector<int>& y, int c, int coeff) const {
    for (int r = 0; r < rows; ++r) {
      y[static_cast<std::size_t>(r)] =
          static_cast<int>((y[static_cast<std::size_t>(r)] +
                            static_cast<std::int64_t>(at(r, c)) * coeff) % p);
    }
  }
};

}  // namespace dcomp
