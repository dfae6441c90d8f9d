#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "dcomp/common.hpp"
#include "dcomp/source.hpp"
#include "dcomp/words.hpp"

namespace dcomp {

// A Hamming-1 flip whose probability drops to zero, breaking smoothness.
struct SmoothnessViolation {
  bool y_side = true;  // flipped coordinate
  Word x, y, flipped;
  int position = 0;  // 1-based
};

struct WeakSmoothnessWitness {
  Word x, x_hat, y;
  int position = 0;  // 1-based
};

struct SmoothnessVerdict {
  bool smooth_wrt_x = false;
  bool smooth_wrt_y = false;
  double q = 0;          // largest constant certified for the sides that hold
  double q_given_y = 0;  // per-side certificates (0 when the side fails)
  double q_given_x = 0;
  std::optional<double> model_q;  // all-n constant when the model supplies one
  bool weakly_smooth_wrt_y = false;
  double weak_q = 0;
  int block_length = 0;
  std::optional<SmoothnessViolation> violation;
  std::optional<WeakSmoothnessWitness> weak_witness;
};

namespace detail {

// min over positive-probability Hamming-1 neighbor pairs of P(flip)/P(word),
// flipping on the y side (or x side). Zero ratio means not smooth.
inline double side_certificate(const SourceModel& src, int n, bool y_side,
                               std::optional<SmoothnessViolation>& violation,
                               std::uint64_t budget) {
  WordSpace xs{src.x_size(), n}, ys{src.y_size(), n};
  std::uint64_t xc = xs.count(), yc = ys.count();
  check_budget(xc * yc * static_cast<std::uint64_t>(n), budget, "smoothness check");
  int alpha = y_side ? src.y_size() : src.x_size();
  double q = 1.0;
  Word x, y, f;
  for (std::uint64_t xi = 0; xi < xc; ++xi) {
    xs.word_into(xi, x);
    for (std::uint64_t yi = 0; yi < yc; ++yi) {
      ys.word_into(yi, y);
      double p = src.block_pmf(x, y);
      if (p <= 0) continue;
      Word& target = y_side ? y : x;
      f = target;
      for (int i = 0; i < n; ++i) {
        int cur = target[static_cast<std::size_t>(i)];
        for (int s = 0; s < alpha; ++s) {
          if (s == cur) continue;
          f[static_cast<std::size_t>(i)] = s;
          double pf = y_side ? src.block_pmf(x, f) : src.block_pmf(f, y);
          if (pf <= 0) {
            if (!violation) violation = SmoothnessViolation{y_side, x, y, f, i + 1};
            return 0.0;
          }
          q = std::min(q, pf / p);
        }
        f[static_cast<std::size_t>(i)] = cur;
      }
    }
  }
  return q;
}

// Constructive all-n constants for the model classes that admit them.
inline std::optional<double> model_constant(const SourceModel& src) {
  using Kind = SourceModel::Kind;
  switch (src.kind()) {
    case Kind::iid:
    case Kind::theorem9: {
      const std::vector<double>& p = src.joint();
      for (double v : p)
        if (v <= 0) return std::nullopt;
      double q = 1.0;
      int xs = src.x_size(), ys = src.y_size();
      for (int a = 0; a < xs; ++a)
        for (int b = 0; b < ys; ++b)
          for (int b2 = 0; b2 < ys; ++b2)
            if (b2 != b)
              q = std::min(q, p[static_cast<std::size_t>(a) * ys + b2] /
                                  p[static_cast<std::size_t>(a) * ys + b]);
      for (int b = 0; b < ys; ++b)
        for (int a = 0; a < xs; ++a)
          for (int a2 = 0; a2 < xs; ++a2)
            if (a2 != a)
              q = std::min(q, p[static_cast<std::size_t>(a2) * ys + b] /
                                  p[static_cast<std::size_t>(a) * ys + b]);
      return q;  // theorem9's uniform tail only contributes ratio 1
    }
    case Kind::markov: {
      const std::vector<double>& w = src.transition();
      const std::vector<double>& in = src.initial();
      for (double v : w)
        if (v <= 0) return std::nullopt;
      for (double v : in)
        if (v <= 0) return std::nullopt;
      int s = src.x_size() * src.y_size();
      double q1 = 1.0, q2 = 1.0;
      for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b) {
          q2 = std::min(q2, w[static_cast<std::size_t>(a) * s + b] * in[static_cast<std::size_t>(a)]);
          for (int c = 0; c < s; ++c)
            q1 = std::min(q1, w[static_cast<std::size_t>(a) * s + b] *
                                  w[static_cast<std::size_t>(b) * s + c]);
        }
      return std::min(q1, q2);
    }
    case Kind::mixture: {
      double q = 1.0;
      for (const SourceModel& c : src.components()) {
        std::optional<double> cq = model_constant(c);
        if (!cq || *cq <= 0) return std::nullopt;
        q = std::min(q, *cq);
      }
      return q;
    }
    case Kind::two_symbolwise_iid: {
      // A single-symbol flip moves one super-symbol to an inner-coordinate
      // neighbor; the ratio bound over those moves holds at every even n.
      const std::vector<double>& p = src.joint2();
      for (double v : p)
        if (v <= 0) return std::nullopt;
      int xs = src.x_size(), ys = src.y_size();
      int ud = xs * xs, vd = ys * ys;
      double q = 1.0;
      auto ratio = [&](int u, int v, int u2, int v2) {
        q = std::min(q, p[static_cast<std::size_t>(u2) * vd + v2] /
                            p[static_cast<std::size_t>(u) * vd + v]);
      };
      for (int u = 0; u < ud; ++u)
        for (int v = 0; v < vd; ++v) {
          for (int s = 0; s < ys; ++s) {  // flip either inner y coordinate
            if (s != v / ys) ratio(u, v, u, s * ys + v % ys);
            if (s != v % ys) ratio(u, v, u, (v / ys) * ys + s);
          }
          for (int s = 0; s < xs; ++s) {
            if (s != u / xs) ratio(u, v, s * xs + u % xs, v);
            if (s != u % xs) ratio(u, v, (u / xs) * xs + s, v);
          }
        }
      return q;
    }
  }
  return std::nullopt;
}

}  // namespace detail

struct WeakSmoothnessResult {
  bool holds = false;
  double q = 0;
  std::optional<WeakSmoothnessWitness> witness;
};

// Exact finite-n check: every positive-probability collision premise
// (x != x_hat sharing y, differing at i) admits a single flip of y at i that
// keeps both probabilities within factor q.
inline WeakSmoothnessResult weak_smoothness_check(const SourceModel& src, int n,
                                                  std::uint64_t budget = kDefaultBudget) {
  src.validate_block(n);
  WordSpace xs{src.x_size(), n}, ys{src.y_size(), n};
  std::uint64_t xc = xs.count(), yc = ys.count();
  check_budget(xc * xc * yc, budget, "weak smoothness check");
  WeakSmoothnessResult r;
  r.q = 1.0;
  Word x1, x2, y, f;
  for (std::uint64_t a = 0; a < xc; ++a) {
    xs.word_into(a, x1);
    for (std::uint64_t b = a + 1; b < xc; ++b) {
      xs.word_into(b, x2);
      for (std::uint64_t yi = 0; yi < yc; ++yi) {
        ys.word_into(yi, y);
        double p1 = src.block_pmf(x1, y);
        if (p1 <= 0) continue;
        double p2 = src.block_pmf(x2, y);
        if (p2 <= 0) continue;
        for (int i = 0; i < n; ++i) {
          if (x1[static_cast<std::size_t>(i)] == x2[static_cast<std::size_t>(i)]) continue;
          double best = 0;
          f = y;
          for (int s = 0; s < src.y_size(); ++s) {
            if (s == y[static_cast<std::size_t>(i)]) continue;
            f[static_cast<std::size_t>(i)] = s;
            double q1 = src.block_pmf(x1, f) / p1;
            double q2 = src.block_pmf(x2, f) / p2;
            best = std::max(best, std::min(q1, q2));
          }
          if (best <= 0) {
            r.holds = false;
            r.q = 0;
            r.witness = WeakSmoothnessWitness{x1, x2, y, i + 1};
            return r;
          }
          r.q = std::min(r.q, best);
        }
      }
    }
  }
  r.holds = true;
  return r;
}

// Exact finite-n smoothness certificate plus the model-level constant where
// the model class supplies one.
inline SmoothnessVerdict smoothness_check(const SourceModel& src, int n,
                                          std::uint64_t budget = kDefaultBudget) {
  src.validate_block(n);
  SmoothnessVerdict v;
  v.block_length = n;
  v.q_given_y = detail::side_certificate(src, n, true, v.violation, budget);
  v.q_given_x = detail::side_certificate(src, n, false, v.violation, budget);
  v.smooth_wrt_y = v.q_given_y > 0;
  v.smooth_wrt_x = v.q_given_x > 0;
  if (v.smooth_wrt_x && v.smooth_wrt_y)
    v.q = std::min(v.q_given_x, v.q_given_y);
  else if (v.smooth_wrt_y)
    v.q = v.q_given_y;
  else if (v.smooth_wrt_x)
    v.q = v.q_given_x;
  v.model_q = detail::model_constant(src);
  WeakSmoothnessResult w = weak_smoothness_check(src, n, budget);
  v.weakly_smooth_wrt_y = w.holds;
  v.weak_q = w.q;
  v.weak_witness = w.witness;
  return v;
}

struct OverlapResult {
  bool holds = true;
  int a1 = -1, a2 = -1, shared_b = -1;
};

// i.i.d. weak-smoothness criterion: for every a1 != a2, the number of b with
// P(a1,b) P(a2,b) > 0 differs from one.
inline OverlapResult is_weakly_smooth_iid(const SourceModel& src) {
  require(src.kind() == SourceModel::Kind::iid, "is_weakly_smooth_iid: model must be iid");
  const std::vector<double>& p = src.joint();
  int xs = src.x_size(), ys = src.y_size();
  for (int a1 = 0; a1 < xs; ++a1)
    for (int a2 = a1 + 1; a2 < xs; ++a2) {
      int count = 0, last = -1;
      for (int b = 0; b < ys; ++b) {
        if (p[static_cast<std::size_t>(a1) * ys + b] > 0 &&
            p[static_cast<std::size_t>(a2) * ys + b] > 0) {
          ++count;
          last = b;
        }
      }
      if (count == 1) return {false, a1, a2, last};
    }
  return {};
}

}  // namespace dcomp
