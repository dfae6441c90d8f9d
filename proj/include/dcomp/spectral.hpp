#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "dcomp/common.hpp"
#include "dcomp/rng.hpp"
#include "dcomp/source.hpp"

namespace dcomp {

inline double entropy_bits(const std::vector<double>& p) {
  double h = 0;
  for (double v : p)
    if (v > 0) h -= v * std::log2(v);
  return h;
}

inline double binary_entropy(double p) {
  if (p <= 0 || p >= 1) return 0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

// Inverse of the binary entropy on [0, 1/2].
inline double inv_binary_entropy(double h) {
  require(h >= 0 && h <= 1, "inv_binary_entropy: value must lie in [0,1]");
  double lo = 0, hi = 0.5;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (binary_entropy(mid) < h ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Sup-entropy rates (bits/symbol). For every supported model class the
// spectrum concentrates, so the three quantities reduce to closed forms or
// numerically bracketed entropy rates.
struct SpectralEntropies {
  double h_joint = 0;
  double h_x_given_y = 0;
  double h_y_given_x = 0;
  std::string method;   // shannon-iid | markov-rate | mixture-max | empirical-spectrum
  double bracket = 0;   // numeric bracket width (markov marginal rates)
};

namespace detail {

struct ShannonTriple {
  double joint, x_given_y, y_given_x;
};

inline ShannonTriple shannon_of_joint(const std::vector<double>& p, int x_size, int y_size) {
  std::vector<double> px(static_cast<std::size_t>(x_size), 0.0);
  std::vector<double> py(static_cast<std::size_t>(y_size), 0.0);
  for (int a = 0; a < x_size; ++a)
    for (int b = 0; b < y_size; ++b) {
      double v = p[static_cast<std::size_t>(a) * y_size + b];
      px[static_cast<std::size_t>(a)] += v;
      py[static_cast<std::size_t>(b)] += v;
    }
  double hj = entropy_bits(p);
  return {hj, hj - entropy_bits(py), hj - entropy_bits(px)};
}

// Stationary distribution of an irreducible chain by solving pi (W - I) = 0
// with normalization, via Gaussian elimination.
inline std::vector<double> stationary_distribution(const std::vector<double>& w, int s) {
  std::vector<double> a(static_cast<std::size_t>(s) * (s + 1), 0.0);
  // Equations: sum_i pi_i (W_ij - delta_ij) = 0 for j < s-1, plus sum pi = 1.
  for (int j = 0; j < s - 1; ++j)
    for (int i = 0; i < s; ++i)
      a[static_cast<std::size_t>(j) * (s + 1) + i] =
          w[static_cast<std::size_t>(i) * s + j] - (i == j ? 1.0 : 0.0);
  for (int i = 0; i < s; ++i) a[static_cast<std::size_t>(s - 1) * (s + 1) + i] = 1.0;
  a[static_cast<std::size_t>(s - 1) * (s + 1) + s] = 1.0;
  for (int col = 0; col < s; ++col) {
    int piv = col;
    for (int r = col + 1; r < s; ++r)
      if (std::abs(a[static_cast<std::size_t>(r) * (s + 1) + col]) >
          std::abs(a[static_cast<std::size_t>(piv) * (s + 1) + col]))
        piv = r;
    require(std::abs(a[static_cast<std::size_t>(piv) * (s + 1) + col]) > 1e-13,
            "markov chain: singular stationary system (not irreducible?)");
    for (int c = 0; c <= s; ++c)
      std::swap(a[static_cast<std::size_t>(piv) * (s + 1) + c],
                a[static_cast<std::size_t>(col) * (s + 1) + c]);
    for (int r = 0; r < s; ++r) {
      if (r == col) continue;
      double f = a[static_cast<std::size_t>(r) * (s + 1) + col] /
                 a[static_cast<std::size_t>(col) * (s + 1) + col];
      if (f == 0) continue;
      for (int c = col; c <= s; ++c)
        a[static_cast<std::size_t>(r) * (s + 1) + c] -=
            f * a[static_cast<std::size_t>(col) * (s + 1) + c];
    }
  }
  std::vector<double> pi(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i)
    pi[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i) * (s + 1) + s] /
                                      a[static_cast<std::size_t>(i) * (s + 1) + i];
  for (double& v : pi) v = std::max(v, 0.0);
  double total = std::accumulate(pi.begin(), pi.end(), 0.0);
  for (double& v : pi) v /= total;
  return pi;
}

inline bool is_irreducible_aperiodic(const std::vector<double>& w, int s) {
  // Reachability closure plus period-1 test via gcd of all cycle closures on
  // a BFS labeling.
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j)
      if (w[static_cast<std::size_t>(i) * s + j] > 0) adj[static_cast<std::size_t>(i)].push_back(j);
  // strong connectivity from state 0 both directions
  auto reach = [&](bool forward) {
    std::vector<bool> seen(static_cast<std::size_t>(s), false);
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int j = 0; j < s; ++j) {
        double edge = forward ? w[static_cast<std::size_t>(v) * s + j]
                              : w[static_cast<std::size_t>(j) * s + v];
        if (edge > 0 && !seen[static_cast<std::size_t>(j)]) {
          seen[static_cast<std::size_t>(j)] = true;
          stack.push_back(j);
        }
      }
    }
    return std::count(seen.begin(), seen.end(), true) == s;
  };
  if (!reach(true) || !reach(false)) return false;
  std::vector<int> level(static_cast<std::size_t>(s), -1);
  std::vector<int> queue{0};
  level[0] = 0;
  int g = 0;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int v = queue[qi];
    for (int j : adj[static_cast<std::size_t>(v)]) {
      if (level[static_cast<std::size_t>(j)] < 0) {
        level[static_cast<std::size_t>(j)] = level[static_cast<std::size_t>(v)] + 1;
        queue.push_back(j);
      } else {
        g = std::gcd(g, level[static_cast<std::size_t>(v)] + 1 - level[static_cast<std::size_t>(j)]);
      }
    }
  }
  return g == 1;
}

// Entropy rate of one marginal of a stationary Markov pair chain, bracketed
// by window conditional entropies (conditioning on the initial state gives
// the lower bound, plain windows the upper).
struct MarginalRate {
  double rate = 0;
  double bracket = 0;
};

inline MarginalRate marginal_entropy_rate(const std::vector<double>& w,
                                          const std::vector<double>& pi, int x_size, int y_size,
                                          bool x_side, std::uint64_t window_budget = 4'000'000) {
  int s = x_size * y_size;
  int alpha = x_side ? x_size : y_size;
  auto out_of = [&](int state) { return x_side ? state / y_size : state % y_size; };

  // Window conditional entropies bracket the rate: plain windows from above,
  // start-state-conditioned windows from below. Both tighten in k.
  // cur[w] is the forward vector P(O^k = w, S_k = .).
  std::vector<std::vector<double>> cur(static_cast<std::size_t>(alpha));
  for (int o = 0; o < alpha; ++o) {
    cur[static_cast<std::size_t>(o)].assign(static_cast<std::size_t>(s), 0.0);
    for (int st = 0; st < s; ++st)
      if (out_of(st) == o)
        cur[static_cast<std::size_t>(o)][static_cast<std::size_t>(st)] =
            pi[static_cast<std::size_t>(st)];
  }
  double h1 = 0;
  for (int o = 0; o < alpha; ++o) {
    double p = std::accumulate(cur[static_cast<std::size_t>(o)].begin(),
                               cur[static_cast<std::size_t>(o)].end(), 0.0);
    if (p > 0) h1 -= p * std::log2(p);
  }
  double h_prev_u = h1;
  double lower = 0, upper = h1;

  // curs[w] holds P(O_2..O_k = w, S_k = . | S_1 = start), flattened by start.
  std::vector<std::vector<double>> curs;
  curs.push_back(std::vector<double>(static_cast<std::size_t>(s) * s, 0.0));
  for (int st = 0; st < s; ++st)
    curs[0][static_cast<std::size_t>(st) * s + st] = 1.0;  // empty window
  std::vector<double> hs_cur(static_cast<std::size_t>(s), 0.0);

  double rate = 0.5 * (lower + upper);
  double bracket = upper - lower;
  std::uint64_t windows = static_cast<std::uint64_t>(alpha);
  for (int k = 2;; ++k) {
    windows *= static_cast<std::uint64_t>(alpha);
    if (windows * static_cast<std::uint64_t>(s) * s > window_budget) break;
    // extend plain windows
    std::vector<std::vector<double>> next(static_cast<std::size_t>(windows));
    double h_u = 0;
    for (std::size_t wi = 0; wi < cur.size(); ++wi) {
      for (int o = 0; o < alpha; ++o) {
        std::vector<double> v(static_cast<std::size_t>(s), 0.0);
        for (int st2 = 0; st2 < s; ++st2) {
          if (out_of(st2) != o) continue;
          double acc = 0;
          for (int st1 = 0; st1 < s; ++st1)
            acc += cur[wi][static_cast<std::size_t>(st1)] * w[static_cast<std::size_t>(st1) * s + st2];
          v[static_cast<std::size_t>(st2)] = acc;
        }
        double p = std::accumulate(v.begin(), v.end(), 0.0);
        if (p > 0) h_u -= p * std::log2(p);
        next[wi * static_cast<std::size_t>(alpha) + static_cast<std::size_t>(o)] = std::move(v);
      }
    }
    upper = h_u - h_prev_u;
    h_prev_u = h_u;
    cur = std::move(next);

    // extend start-conditioned windows (length k-1 observed symbols)
    std::vector<std::vector<double>> nexts(curs.size() * static_cast<std::size_t>(alpha));
    std::vector<double> hs_next(static_cast<std::size_t>(s), 0.0);
    for (std::size_t wi = 0; wi < curs.size(); ++wi) {
      for (int o = 0; o < alpha; ++o) {
        std::vector<double> v(static_cast<std::size_t>(s) * s, 0.0);
        for (int start = 0; start < s; ++start) {
          for (int st2 = 0; st2 < s; ++st2) {
            if (out_of(st2) != o) continue;
            double acc = 0;
            for (int st1 = 0; st1 < s; ++st1)
              acc += curs[wi][static_cast<std::size_t>(start) * s + st1] *
                     w[static_cast<std::size_t>(st1) * s + st2];
            v[static_cast<std::size_t>(start) * s + st2] = acc;
          }
        }
        for (int start = 0; start < s; ++start) {
          double p = 0;
          for (int st = 0; st < s; ++st) p += v[static_cast<std::size_t>(start) * s + st];
          if (p > 0) hs_next[static_cast<std::size_t>(start)] -= p * std::log2(p);
        }
        nexts[wi * static_cast<std::size_t>(alpha) + static_cast<std::size_t>(o)] = std::move(v);
      }
    }
    lower = 0;
    for (int start = 0; start < s; ++start)
      lower += pi[static_cast<std::size_t>(start)] *
               (hs_next[static_cast<std::size_t>(start)] - hs_cur[static_cast<std::size_t>(start)]);
    hs_cur = std::move(hs_next);
    curs = std::move(nexts);

    rate = 0.5 * (lower + upper);
    bracket = upper - lower;
    if (bracket < 1e-9) break;
  }
  return {rate, std::max(bracket, 0.0)};
}

}  // namespace detail

inline SpectralEntropies spectral_entropies(const SourceModel& src) {
  using Kind = SourceModel::Kind;
  SpectralEntropies e;
  switch (src.kind()) {
    case Kind::iid: {
      detail::ShannonTriple t = detail::shannon_of_joint(src.joint(), src.x_size(), src.y_size());
      e = {t.joint, t.x_given_y, t.y_given_x, "shannon-iid", 0.0};
      return e;
    }
    case Kind::two_symbolwise_iid: {
      detail::ShannonTriple t = detail::shannon_of_joint(
          src.joint2(), src.x_size() * src.x_size(), src.y_size() * src.y_size());
      e = {t.joint / 2, t.x_given_y / 2, t.y_given_x / 2, "shannon-iid", 0.0};
      return e;
    }
    case Kind::theorem9: {
      detail::ShannonTriple q = detail::shannon_of_joint(src.joint(), src.x_size(), src.y_size());
      double rho = src.rho();
      double lx = std::log2(static_cast<double>(src.x_size()));
      double ly = std::log2(static_cast<double>(src.y_size()));
      e = {rho * q.joint + (1 - rho) * (lx + ly), rho * q.x_given_y + (1 - rho) * lx,
           rho * q.y_given_x + (1 - rho) * ly, "shannon-iid", 0.0};
      return e;
    }
    case Kind::markov: {
      int s = src.x_size() * src.y_size();
      check_hypothesis(detail::is_irreducible_aperiodic(src.transition(), s),
                       "markov spectral entropies need an irreducible aperiodic chain");
      std::vector<double> pi = detail::stationary_distribution(src.transition(), s);
      double hj = 0;
      for (int a = 0; a < s; ++a) {
        double row = 0;
        for (int b = 0; b < s; ++b) {
          double v = src.transition()[static_cast<std::size_t>(a) * s + b];
          if (v > 0) row -= v * std::log2(v);
        }
        hj += pi[static_cast<std::size_t>(a)] * row;
      }
      detail::MarginalRate hx =
          detail::marginal_entropy_rate(src.transition(), pi, src.x_size(), src.y_size(), true);
      detail::MarginalRate hy =
          detail::marginal_entropy_rate(src.transition(), pi, src.x_size(), src.y_size(), false);
      e.h_joint = hj;
      e.h_x_given_y = std::max(hj - hy.rate, 0.0);
      e.h_y_given_x = std::max(hj - hx.rate, 0.0);
      e.method = "markov-rate";
      e.bracket = std::max(hx.bracket, hy.bracket);
      return e;
    }
    case Kind::mixture: {
      e.method = "mixture-max";
      for (const SourceModel& c : src.components()) {
        SpectralEntropies ce = spectral_entropies(c);
        e.h_joint = std::max(e.h_joint, ce.h_joint);
        e.h_x_given_y = std::max(e.h_x_given_y, ce.h_x_given_y);
        e.h_y_given_x = std::max(e.h_y_given_x, ce.h_y_given_x);
        e.bracket = std::max(e.bracket, ce.bracket);
      }
      return e;
    }
  }
  throw std::logic_error("unreachable");
}

// Monte Carlo spectrum of the normalized self-informations; the independent
// cross-check for the closed-form rules.
struct EmpiricalSpectrum {
  std::vector<double> joint, x_given_y, y_given_x;  // sorted ascending

  double quantile_joint(double p) const { return at(joint, p); }
  double quantile_x_given_y(double p) const { return at(x_given_y, p); }
  double quantile_y_given_x(double p) const { return at(y_given_x, p); }

 private:
  static double at(const std::vector<double>& v, double p) {
    if (v.empty()) return 0;
    double idx = p * (static_cast<double>(v.size()) - 1);
    std::size_t i = static_cast<std::size_t>(idx);
    return v[std::min(i, v.size() - 1)];
  }
};

inline EmpiricalSpectrum empirical_spectrum(const SourceModel& src, int n, int trials,
                                            CounterRng& rng) {
  EmpiricalSpectrum sp;
  sp.joint.reserve(static_cast<std::size_t>(trials));
  sp.x_given_y.reserve(static_cast<std::size_t>(trials));
  sp.y_given_x.reserve(static_cast<std::size_t>(trials));
  Word x, y;
  for (int t = 0; t < trials; ++t) {
    src.sample(n, rng, x, y);
    double pj = src.block_pmf(x, y);
    double px = src.x_marginal(x);
    double py = src.y_marginal(y);
    sp.joint.push_back(-std::log2(pj) / n);
    sp.x_given_y.push_back(-std::log2(pj / py) / n);
    sp.y_given_x.push_back(-std::log2(pj / px) / n);
  }
  std::sort(sp.joint.begin(), sp.joint.end());
  std::sort(sp.x_given_y.begin(), sp.x_given_y.end());
  std::sort(sp.y_given_x.begin(), sp.y_given_x.end());
  return sp;
}

}  // namespace dcomp
