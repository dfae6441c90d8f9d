#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "dcomp/code.hpp"
#include "dcomp/common.hpp"
#include "dcomp/eq.hpp"
#include "dcomp/report.hpp"
#include "dcomp/sensitivity.hpp"
#include "dcomp/smoothness.hpp"
#include "dcomp/typicality.hpp"

namespace dcomp {

struct Lemma1Result {
  BoundReport core1, core2, core3;
  std::optional<BoundReport> core3modified;
  double pe = 0;
  double q_given_y = 0, q_given_x = 0, q_joint = 0;
};

// Exact check of the three decodable-atypical-mass bounds (and the
// r-modified sum bound when r is supplied) for one (code, source, function)
// instance. Hypotheses are verified before any bound is assembled; a smaller
// q than certified may be injected to stress the right-hand sides.
inline Lemma1Result lemma1_check(const DistributedCode& code, const SourceModel& src,
                                 const VectorFunction& fn, const TypicalSetConfig& cfg,
                                 std::optional<double> r = std::nullopt,
                                 std::optional<double> q_override = std::nullopt,
                                 std::uint64_t budget = kDefaultBudget) {
  cfg.validate();
  require(code.n() == fn.n(), "lemma1_check: code/function block lengths disagree");
  int n = code.n();
  DenseFunction dense = materialize(fn, budget);

  CheckResult sens_y = is_sensitive_given_y(dense, budget);
  CheckResult sens_x = is_sensitive_given_x(dense, budget);
  CheckResult joint = is_jointly_sensitive(dense, budget);
  check_hypothesis(sens_y.holds, "lemma1_check: function is not sensitive conditioned on Y^n (Def. 3)");
  check_hypothesis(sens_x.holds, "lemma1_check: function is not sensitive conditioned on X^n (Def. 3)");
  if (!r) {
    check_hypothesis(joint.holds,
                     "lemma1_check: function is not jointly sensitive (Def. 4), so the sum "
                     "bound needs an EQ growth rate r");
  } else {
    check_hypothesis(*r >= 0, "lemma1_check: r must be >= 0");
    double rate = max_eq_rate(fn, budget);
    check_hypothesis(rate <= *r + cfg.delta + 1e-12,
                     "lemma1_check: max EQ rate exceeds r + delta, the modified sum bound "
                     "does not apply at this block length");
  }
  SmoothnessVerdict sm = smoothness_check(src, n, budget);
  check_hypothesis(sm.smooth_wrt_y, "lemma1_check: source is not smooth with respect to Y (Def. 8)");
  check_hypothesis(sm.smooth_wrt_x, "lemma1_check: source is not smooth with respect to X (Def. 8)");

  Lemma1Result res;
  res.q_given_y = q_override ? *q_override : sm.q_given_y;
  res.q_given_x = q_override ? *q_override : sm.q_given_x;
  res.q_joint = q_override ? *q_override : std::min(sm.q_given_y, sm.q_given_x);

  WordSpace xs{code.x_size(), n}, ys{code.y_size(), n};
  std::uint64_t xc = xs.count(), yc = ys.count();
  check_budget(xc * yc, budget, "lemma1 mass enumeration");

  std::vector<int> len1(xc), len2(yc);
  Word w;
  for (std::uint64_t i = 0; i < xc; ++i) {
    xs.word_into(i, w);
    len1[i] = length1(code, w);
  }
  for (std::uint64_t i = 0; i < yc; ++i) {
    ys.word_into(i, w);
    len2[i] = length2(code, w);
  }

  double pe = 0;
  double m1 = 0, m2 = 0, m0 = 0, m0r = 0;
  Word x, y;
  for (std::uint64_t xi = 0; xi < xc; ++xi) {
    xs.word_into(xi, x);
    Bits c1 = code.encode1(x);
    for (std::uint64_t yi = 0; yi < yc; ++yi) {
      ys.word_into(yi, y);
      double p = src.block_pmf(x, y);
      if (p <= 0) continue;
      std::optional<ZWord> out = code.decode(c1, code.encode2(y));
      bool correct = out && *out == dense.z_values[static_cast<std::size_t>(dense.at(xi, yi))];
      if (!correct) {
        pe += p;
        continue;
      }
      InfoTriple t = info_triple(src, x, y);
      TypicalMembership tm = typical_membership(t, len1[xi], len2[yi], n, cfg.delta);
      if (!tm.t1) m1 += p;
      if (!tm.t2) m2 += p;
      if (!tm.t0) m0 += p;
      if (r) {
        double thresh = static_cast<double>(len1[xi] + len2[yi]) / n + *r + 2 * cfg.delta;
        if (t.joint > thresh) m0r += p;
      }
    }
  }
  res.pe = pe;

  double v = v_n(cfg.beta, n, code.x_size());
  double u = u_n(cfg.beta, n, code.y_size());
  double two_nd = std::exp2(-static_cast<double>(n) * cfg.delta);

  res.core1.name = "core1";
  res.core1.lhs = m1;
  res.core1.rhs = 2.0 * code.y_size() / (cfg.beta * res.q_given_y) * pe + (v + 1) * two_nd;
  res.core1.component("pe", pe);
  res.core1.component("q", res.q_given_y);
  res.core1.component("v_n", v);

  res.core2.name = "core2";
  res.core2.lhs = m2;
  res.core2.rhs = 2.0 * code.x_size() / (cfg.beta * res.q_given_x) * pe + (u + 1) * two_nd;
  res.core2.component("pe", pe);
  res.core2.component("q", res.q_given_x);
  res.core2.component("u_n", u);

  res.core3.name = "core3";
  res.core3.lhs = m0;
  res.core3.rhs =
      2.0 * (code.x_size() + code.y_size()) / (cfg.beta * res.q_joint) * pe +
      (v + u + 2) * two_nd;
  res.core3.component("pe", pe);
  res.core3.component("q", res.q_joint);

  if (r) {
    BoundReport mod;
    mod.name = "core3modified";
    mod.lhs = m0r;
    mod.rhs = res.core3.rhs;
    mod.component("r", *r);
    mod.component("pe", pe);
    mod.component("q", res.q_joint);
    res.core3modified = mod;
  } else {
    // Joint sensitivity is 0-total sensitivity; the modified bound at r = 0
    // coincides with core3 up to the threshold's extra delta.
    BoundReport mod;
    mod.name = "core3modified";
    mod.lhs = 0;
    Word xw, yw;
    for (std::uint64_t xi = 0; xi < xc; ++xi) {
      xs.word_into(xi, xw);
      Bits c1 = code.encode1(xw);
      for (std::uint64_t yi = 0; yi < yc; ++yi) {
        ys.word_into(yi, yw);
        double p = src.block_pmf(xw, yw);
        if (p <= 0) continue;
        std::optional<ZWord> out = code.decode(c1, code.encode2(yw));
        if (!out || *out != dense.z_values[static_cast<std::size_t>(dense.at(xi, yi))]) continue;
        InfoTriple t = info_triple(src, xw, yw);
        if (t.joint > static_cast<double>(len1[xi] + len2[yi]) / n + 2 * cfg.delta) mod.lhs += p;
      }
    }
    mod.rhs = res.core3.rhs;
    mod.component("r", 0.0);
    res.core3modified = mod;
  }
  return res;
}

// --- greedy pairing procedure ---------------------------------------------

struct PairingFlip {
  int position = 0;  // 1-based flipped coordinate of y
  Word y_hat;
  Word x_star;        // the member of the pair that lands outside D
  double p_star = 0;  // P(x_star, y_hat)
  bool smooth_ok = true;    // P(x_star, y_hat) >= q P(x_star, y)
  bool combined_ok = true;  // ... >= q P(x_{v+2k}, y)
  bool in_dc = true;        // (x_star, y_hat) re-verified outside D
};

struct PairingPair {
  Word x_prime, x_second;
  bool trivial_zero = false;  // zero-probability branch, inequality vacuous
  double floor_prob = 0;      // P(x_{v+2k}, y), 0 past the end of the fiber
  std::vector<PairingFlip> flips;
};

struct PairingTranscript {
  std::vector<PairingPair> pairs;
  std::size_t d_size = 0;
  double v = 0;
  std::size_t guaranteed_pairs = 0;  // [ (|D_ay| - v) / 2 ]^+
  bool ok = true;
};

struct PairingAggregate {
  double lhs = 0;  // sum over (a,y,k) of P(x_{v+2k}, y)
  double rhs = 0;  // |Y| / (beta q) * P_e
  int max_multiplicity = 0;
  int multiplicity_cap = 0;  // n |Y|
  bool ok = true;
};

struct PairingResult {
  PairingTranscript transcript;
  PairingAggregate aggregate;
  double q = 0;
  double pe = 0;
};

namespace detail {

struct PairingContext {
  const DistributedCode* code;
  const SourceModel* src;
  const VectorFunction* fn;
  double beta;
  double q;
  bool weak_mode;
  std::uint64_t budget;
};

// Decodable set restricted to codeword a and side word y, sorted by
// probability (descending, index ascending on ties).
inline std::vector<std::uint64_t> decodable_fiber(const PairingContext& ctx, const Bits& a,
                                                  const Word& y,
                                                  std::vector<double>& probs_out) {
  WordSpace xs{ctx.code->x_size(), ctx.code->n()};
  std::vector<std::uint64_t> member;
  std::vector<double> probs;
  Bits c2 = ctx.code->encode2(y);
  Word x;
  ZWord z;
  for (std::uint64_t xi = 0; xi < xs.count(); ++xi) {
    xs.word_into(xi, x);
    if (ctx.code->encode1(x) != a) continue;
    std::optional<ZWord> out = ctx.code->decode(a, c2);
    ctx.fn->eval(x, y, z);
    if (out && *out == z) {
      member.push_back(xi);
      probs.push_back(ctx.src->block_pmf(x, y));
    }
  }
  std::vector<std::size_t> order(member.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return probs[i] > probs[j]; });
  std::vector<std::uint64_t> sorted(member.size());
  probs_out.resize(member.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted[i] = member[order[i]];
    probs_out[i] = probs[order[i]];
  }
  return sorted;
}

inline bool in_decodable(const PairingContext& ctx, const Word& x, const Word& y) {
  std::optional<ZWord> out = ctx.code->decode(ctx.code->encode1(x), ctx.code->encode2(y));
  return out && *out == ctx.fn->eval(x, y);
}

inline PairingTranscript run_pairing(const PairingContext& ctx, const Bits& a, const Word& y,
                                     std::vector<double>* floor_terms) {
  int n = ctx.code->n();
  WordSpace xs{ctx.code->x_size(), n};
  std::vector<double> probs;
  std::vector<std::uint64_t> fiber = decodable_fiber(ctx, a, y, probs);

  PairingTranscript tr;
  tr.d_size = fiber.size();
  tr.v = v_n(ctx.beta, n, ctx.code->x_size());
  double guaranteed = 0.5 * (static_cast<double>(fiber.size()) - tr.v);
  tr.guaranteed_pairs = guaranteed >= 1 ? static_cast<std::size_t>(guaranteed) : 0;

  std::vector<char> used(fiber.size(), 0);
  std::vector<Word> words(fiber.size());
  for (std::size_t i = 0; i < fiber.size(); ++i) words[i] = xs.word(fiber[i]);

  int y_alpha = ctx.code->y_size();
  std::size_t k = 0;
  for (;;) {
    std::size_t ip = fiber.size(), is = fiber.size();
    for (std::size_t i = 0; i < fiber.size(); ++i)
      if (!used[i]) {
        ip = i;
        break;
      }
    if (ip == fiber.size()) break;
    for (std::size_t i = ip + 1; i < fiber.size(); ++i) {
      if (used[i]) continue;
      if (hamming_distance(words[ip], words[i]) >= ctx.beta * n - 1e-12) {
        is = i;
        break;
      }
    }
    if (is == fiber.size()) break;
    used[ip] = used[is] = 1;
    ++k;

    PairingPair pp;
    pp.x_prime = words[ip];
    pp.x_second = words[is];
    // 0-based index of the sorted element x_{v+2k}
    std::size_t floor_idx = static_cast<std::size_t>(tr.v + 1e-9) + 2 * k - 1;
    pp.floor_prob = floor_idx < fiber.size() ? probs[floor_idx] : 0.0;
    if (floor_terms) floor_terms->push_back(pp.floor_prob);

    double p_prime = ctx.src->block_pmf(pp.x_prime, y);
    double p_second = ctx.src->block_pmf(pp.x_second, y);
    if (ctx.weak_mode && p_prime * p_second <= 0) {
      pp.trivial_zero = true;
      if (pp.floor_prob > 0) tr.ok = false;  // the vacuous branch needs a zero floor
      tr.pairs.push_back(std::move(pp));
      continue;
    }

    // the first ceil(beta n) differing positions
    int need = static_cast<int>(std::ceil(ctx.beta * n - 1e-12));
    std::vector<int> positions;
    for (int i = 0; i < n && static_cast<int>(positions.size()) < need; ++i)
      if (pp.x_prime[static_cast<std::size_t>(i)] != pp.x_second[static_cast<std::size_t>(i)])
        positions.push_back(i);

    for (int pos : positions) {
      PairingFlip fl;
      fl.position = pos + 1;
      Word yh = y;
      bool found = false;
      for (int s = 0; s < y_alpha && !found; ++s) {
        if (s == y[static_cast<std::size_t>(pos)]) continue;
        yh[static_cast<std::size_t>(pos)] = s;
        if (ctx.weak_mode) {
          // the flip certified by weak smoothness; high sensitivity then
          // forces the outputs apart
          if (ctx.src->block_pmf(pp.x_prime, yh) >= ctx.q * p_prime - 1e-15 &&
              ctx.src->block_pmf(pp.x_second, yh) >= ctx.q * p_second - 1e-15 &&
              ctx.fn->eval(pp.x_prime, yh) != ctx.fn->eval(pp.x_second, yh))
            found = true;
        } else {
          if (ctx.fn->eval(pp.x_prime, yh) != ctx.fn->eval(pp.x_second, yh)) found = true;
        }
      }
      if (!found) {
        fl.in_dc = fl.smooth_ok = fl.combined_ok = false;
        tr.ok = false;
        pp.flips.push_back(std::move(fl));
        continue;
      }
      fl.y_hat = yh;
      bool prime_out = !in_decodable(ctx, pp.x_prime, yh);
      fl.x_star = prime_out ? pp.x_prime : pp.x_second;
      if (!prime_out && in_decodable(ctx, pp.x_second, yh)) {
        fl.in_dc = false;  // both decode correctly: contradicts the collision
        tr.ok = false;
      }
      fl.p_star = ctx.src->block_pmf(fl.x_star, yh);
      double p_star_y = ctx.src->block_pmf(fl.x_star, y);
      fl.smooth_ok = fl.p_star >= ctx.q * p_star_y - 1e-15;
      fl.combined_ok = fl.p_star >= ctx.q * pp.floor_prob - 1e-15;
      if (!fl.smooth_ok || !fl.combined_ok) tr.ok = false;
      pp.flips.push_back(std::move(fl));
    }
    tr.pairs.push_back(std::move(pp));
  }
  return tr;
}

}  // namespace detail

// Greedy pairing transcript for one (a, y) plus the aggregated bound over
// all (a, y). weak_mode swaps the hypotheses to weak smoothness and high
// sensitivity.
inline PairingResult pairing_construction(const DistributedCode& code, const SourceModel& src,
                                          const VectorFunction& fn, const Bits& a, const Word& y,
                                          double beta, bool weak_mode = false,
                                          std::uint64_t budget = kDefaultBudget) {
  require(beta > 0 && beta < 0.5, "pairing: beta must lie in (0, 1/2)");
  int n = code.n();
  PairingResult res;
  if (weak_mode) {
    CheckResult hs = is_highly_sensitive_given_y(fn, budget);
    check_hypothesis(hs.holds,
                     "pairing: function is not highly sensitive conditioned on Y^n");
    WeakSmoothnessResult ws = weak_smoothness_check(src, n, budget);
    check_hypothesis(ws.holds,
                     "pairing: source is not weakly smooth with respect to Y (Def. 9)");
    res.q = ws.q;
  } else {
    CheckResult s = is_sensitive_given_y(fn, budget);
    check_hypothesis(s.holds, "pairing: function is not sensitive conditioned on Y^n (Def. 3)");
    SmoothnessVerdict sm = smoothness_check(src, n, budget);
    check_hypothesis(sm.smooth_wrt_y, "pairing: source is not smooth with respect to Y (Def. 8)");
    res.q = sm.q_given_y;
  }

  detail::PairingContext ctx{&code, &src, &fn, beta, res.q, weak_mode, budget};
  res.transcript = detail::run_pairing(ctx, a, y, nullptr);

  // Aggregate over every (a, y), counting witness multiplicities.
  WordSpace xs{code.x_size(), n}, ys{code.y_size(), n};
  check_budget(xs.count() * xs.count() * ys.count(), budget, "pairing aggregate");
  res.pe = error_probability_exact(code, src, fn, budget);
  std::vector<Bits> cws;
  {
    Word xw;
    for (std::uint64_t xi = 0; xi < xs.count(); ++xi) {
      xs.word_into(xi, xw);
      cws.push_back(code.encode1(xw));
    }
    std::sort(cws.begin(), cws.end());
    cws.erase(std::unique(cws.begin(), cws.end()), cws.end());
  }
  std::unordered_map<std::string, int> multiplicity;
  Word yw;
  for (const Bits& cw : cws) {
    for (std::uint64_t yi = 0; yi < ys.count(); ++yi) {
      ys.word_into(yi, yw);
      std::vector<double> floors;
      PairingTranscript tr = detail::run_pairing(ctx, cw, yw, &floors);
      if (!tr.ok) res.aggregate.ok = false;
      for (double f : floors) res.aggregate.lhs += f;
      for (const PairingPair& pp : tr.pairs)
        for (const PairingFlip& fl : pp.flips)
          if (fl.in_dc && !fl.x_star.empty()) {
            std::string key;
            for (Symbol sym : fl.x_star) key += std::to_string(sym) + ",";
            key += "|";
            for (Symbol sym : fl.y_hat) key += std::to_string(sym) + ",";
            int& c = multiplicity[key];
            ++c;
            res.aggregate.max_multiplicity = std::max(res.aggregate.max_multiplicity, c);
          }
    }
  }
  res.aggregate.rhs = code.y_size() / (beta * res.q) * res.pe;
  res.aggregate.multiplicity_cap = n * code.y_size();
  if (res.aggregate.max_multiplicity > res.aggregate.multiplicity_cap)
    res.aggregate.ok = false;
  if (res.aggregate.lhs > res.aggregate.rhs + 1e-12) res.aggregate.ok = false;
  return res;
}

inline PairingResult weak_mode_pairing(const DistributedCode& code, const SourceModel& src,
                                       const VectorFunction& fn, const Bits& a, const Word& y,
                                       double beta, std::uint64_t budget = kDefaultBudget) {
  return pairing_construction(code, src, fn, a, y, beta, true, budget);
}

}  // namespace dcomp
