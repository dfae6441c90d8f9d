#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "dcomp/code.hpp"
#include "dcomp/common.hpp"
#include "dcomp/source.hpp"

namespace dcomp {

struct TypicalSetConfig {
  double delta = 0.1;
  double beta = 0.25;

  void validate() const {
    require(delta > 0, "typical-set config: delta must be positive");
    require(beta > 0 && beta < 0.5, "typical-set config: beta must lie in (0, 1/2)");
  }
};

// Number of words within Hamming distance 1..ceil(n*beta)-1 of a fixed word:
// sum_{i=1}^{ceil(n beta)-1} (alpha-1)^i C(n,i).
inline double ball_count(double beta, int n, int alphabet) {
  int top = static_cast<int>(std::ceil(n * beta - 1e-12)) - 1;
  long double sum = 0, binom = 1;  // C(n,0)
  long double a = alphabet - 1;
  long double power = 1;
  for (int i = 1; i <= top; ++i) {
    binom = binom * (n - i + 1) / i;
    power *= a;
    sum += power * binom;
  }
  return static_cast<double>(sum);
}

inline double v_n(double beta, int n, int x_size) { return ball_count(beta, n, x_size); }
inline double u_n(double beta, int n, int y_size) { return ball_count(beta, n, y_size); }

// Normalized self-informations of a pair under the source.
struct InfoTriple {
  double joint, x_given_y, y_given_x;  // (1/n) log2 1/P
};

inline InfoTriple info_triple(const SourceModel& src, const Word& x, const Word& y) {
  int n = static_cast<int>(x.size());
  double pj = src.block_pmf(x, y);
  double px = src.x_marginal(x);
  double py = src.y_marginal(y);
  double inf = std::numeric_limits<double>::infinity();
  InfoTriple t;
  t.joint = pj > 0 ? -std::log2(pj) / n : inf;
  t.x_given_y = pj > 0 ? -std::log2(pj / py) / n : inf;
  t.y_given_x = pj > 0 ? -std::log2(pj / px) / n : inf;
  return t;
}

// Membership in the code-dependent typical sets T_{n,1}, T_{n,2}, T_{n,0}.
struct TypicalMembership {
  bool t1 = false, t2 = false, t0 = false;
};

inline TypicalMembership typical_membership(const InfoTriple& t, int len1, int len2, int n,
                                            double delta) {
  TypicalMembership m;
  m.t1 = t.x_given_y <= static_cast<double>(len1) / n + delta;
  m.t2 = t.y_given_x <= static_cast<double>(len2) / n + delta;
  m.t0 = t.joint <= static_cast<double>(len1 + len2) / n + delta;
  return m;
}

// Padded integer lengths used by the binning construction.
inline int padded_length(int len, int n, double delta) {
  return static_cast<int>(std::ceil(static_cast<double>(len) + 2.0 * n * delta - 1e-12));
}

// Membership in the search sets S_{n,1}(l1), S_{n,2}(l2), S_{n,0}(l1+l2).
inline bool in_search_set(const InfoTriple& t, int l1, int l2, int n, double delta) {
  return t.x_given_y <= static_cast<double>(l1) / n - delta + 1e-12 &&
         t.y_given_x <= static_cast<double>(l2) / n - delta + 1e-12 &&
         t.joint <= static_cast<double>(l1 + l2) / n - delta + 1e-12;
}

struct TypicalMasses {
  double t1c = 0, t2c = 0, t0c = 0;  // P(T^c) per set
  double union_c = 0;                // P(T1^c u T2^c u T0^c)
  // Cardinality certificates over every encountered (l1, l2): the largest
  // ratio count / 2^{l - n delta}; at most 1 when the displays hold.
  double s1_max_ratio = 0, s2_max_ratio = 0, s0_max_ratio = 0;
};

// Exact masses of the atypical sets of a code, plus the search-set counting
// certificates used by the binning construction.
inline TypicalMasses typical_masses(const DistributedCode& code, const SourceModel& src,
                                    const TypicalSetConfig& cfg,
                                    std::uint64_t budget = kDefaultBudget) {
  cfg.validate();
  int n = code.n();
  WordSpace xs{code.x_size(), n}, ys{code.y_size(), n};
  std::uint64_t xc = xs.count(), yc = ys.count();
  check_budget(xc * yc, budget, "typical-set masses");

  std::vector<int> len1(xc), len2(yc), pl1(xc), pl2(yc);
  Word w;
  for (std::uint64_t i = 0; i < xc; ++i) {
    xs.word_into(i, w);
    len1[i] = length1(code, w);
    pl1[i] = padded_length(len1[i], n, cfg.delta);
  }
  for (std::uint64_t i = 0; i < yc; ++i) {
    ys.word_into(i, w);
    len2[i] = length2(code, w);
    pl2[i] = padded_length(len2[i], n, cfg.delta);
  }

  std::vector<InfoTriple> infos(xc * yc);
  TypicalMasses m;
  Word x, y;
  for (std::uint64_t xi = 0; xi < xc; ++xi) {
    xs.word_into(xi, x);
    for (std::uint64_t yi = 0; yi < yc; ++yi) {
      ys.word_into(yi, y);
      infos[xi * yc + yi] = info_triple(src, x, y);
      double p = src.block_pmf(x, y);
      if (p <= 0) continue;
      TypicalMembership tm = typical_membership(infos[xi * yc + yi], len1[xi], len2[yi], n, cfg.delta);
      if (!tm.t1) m.t1c += p;
      if (!tm.t2) m.t2c += p;
      if (!tm.t0) m.t0c += p;
      if (!tm.t1 || !tm.t2 || !tm.t0) m.union_c += p;
    }
  }

  // Counting certificates for every padded length pair in use.
  std::vector<int> l1s(pl1), l2s(pl2);
  std::sort(l1s.begin(), l1s.end());
  l1s.erase(std::unique(l1s.begin(), l1s.end()), l1s.end());
  std::sort(l2s.begin(), l2s.end());
  l2s.erase(std::unique(l2s.begin(), l2s.end()), l2s.end());
  for (int l1 : l1s) {
    for (int l2 : l2s) {
      std::uint64_t total = 0;
      for (std::uint64_t yi = 0; yi < yc; ++yi) {
        std::uint64_t count = 0;
        for (std::uint64_t xi = 0; xi < xc; ++xi)
          if (in_search_set(infos[xi * yc + yi], l1, l2, n, cfg.delta)) ++count;
        total += count;
        m.s1_max_ratio = std::max(
            m.s1_max_ratio, static_cast<double>(count) / std::exp2(l1 - n * cfg.delta));
      }
      m.s0_max_ratio = std::max(
          m.s0_max_ratio, static_cast<double>(total) / std::exp2(l1 + l2 - n * cfg.delta));
      for (std::uint64_t xi = 0; xi < xc; ++xi) {
        std::uint64_t count = 0;
        for (std::uint64_t yi = 0; yi < yc; ++yi)
          if (in_search_set(infos[xi * yc + yi], l1, l2, n, cfg.delta)) ++count;
        m.s2_max_ratio = std::max(
            m.s2_max_ratio, static_cast<double>(count) / std::exp2(l2 - n * cfg.delta));
      }
    }
  }
  return m;
}

}  // namespace dcomp
