#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dcomp/bits.hpp"
#include "dcomp/code.hpp"
#include "dcomp/common.hpp"
#include "dcomp/sensitivity.hpp"
#include "dcomp/smoothness.hpp"
#include "dcomp/source.hpp"
#include "dcomp/report.hpp"
#include "dcomp/typicality.hpp"

namespace dcomp {

// Pointwise check of the constructed-length display
// |enc(x)| <= l(x) + 2 n delta + 2 log2(n L + 2 n delta) + 3.
struct LengthCheck {
  bool ok = true;
  double min_slack = std::numeric_limits<double>::infinity();
  int max_length = 0;
};

namespace detail {

inline LengthCheck check_length_display(const std::vector<int>& base_len,
                                        const std::vector<int>& actual_len, int n, double delta,
                                        int max_base_len) {
  LengthCheck c;
  double cap = static_cast<double>(max_base_len);  // n * L
  for (std::size_t i = 0; i < base_len.size(); ++i) {
    double bound = base_len[i] + 2.0 * n * delta + 2.0 * std::log2(cap + 2.0 * n * delta) + 3.0;
    double slack = bound - actual_len[i];
    c.min_slack = std::min(c.min_slack, slack);
    c.max_length = std::max(c.max_length, actual_len[i]);
    if (slack < 0) c.ok = false;
  }
  return c;
}

}  // namespace detail

// SW code built from a function code by adaptive-length random binning:
// header = gamma(padded length), body = the sequence's random bin index;
// the decoder looks for the unique search-set pair with matching lengths
// and bins.
class BinnedSwCode : public DistributedCode {
 public:
  BinnedSwCode(int n, int x_size, int y_size, double delta, std::vector<int> pl1,
               std::vector<int> pl2, std::vector<Bits> bin1, std::vector<Bits> bin2,
               std::vector<InfoTriple> infos)
      : n_(n), x_size_(x_size), y_size_(y_size), delta_(delta), xs_{x_size, n}, ys_{y_size, n},
        pl1_(std::move(pl1)), pl2_(std::move(pl2)), bin1_(std::move(bin1)),
        bin2_(std::move(bin2)), infos_(std::move(infos)),
        identity_(identity_function(x_size, y_size, n)) {}

  int n() const override { return n_; }
  int x_size() const override { return x_size_; }
  int y_size() const override { return y_size_; }

  Kind kind() const override {
    auto all_same = [](const std::vector<int>& v) {
      for (int x : v)
        if (x != v[0]) return false;
      return true;
    };
    return all_same(pl1_) && all_same(pl2_) ? Kind::fixed_length : Kind::variable_length;
  }

  Bits encode1(const Word& x) const override {
    std::uint64_t i = xs_.index(x);
    return elias_gamma(static_cast<std::uint64_t>(pl1_[i])) + bin1_[i];
  }

  Bits encode2(const Word& y) const override {
    std::uint64_t i = ys_.index(y);
    return elias_gamma(static_cast<std::uint64_t>(pl2_[i])) + bin2_[i];
  }

  std::optional<ZWord> decode(const Bits& c1, const Bits& c2) const override {
    GammaDecoded g1 = elias_gamma_decode(c1);
    GammaDecoded g2 = elias_gamma_decode(c2);
    if (!g1.ok || !g2.ok) return std::nullopt;
    int l1 = static_cast<int>(g1.value), l2 = static_cast<int>(g2.value);
    if (c1.size() != g1.consumed + static_cast<std::size_t>(l1) ||
        c2.size() != g2.consumed + static_cast<std::size_t>(l2))
      return std::nullopt;
    Bits m1 = c1.substr(g1.consumed), m2 = c2.substr(g2.consumed);
    std::uint64_t xc = xs_.count(), yc = ys_.count();
    std::optional<std::pair<std::uint64_t, std::uint64_t>> found;
    for (std::uint64_t xi = 0; xi < xc; ++xi) {
      if (pl1_[xi] != l1 || bin1_[xi] != m1) continue;
      for (std::uint64_t yi = 0; yi < yc; ++yi) {
        if (pl2_[yi] != l2 || bin2_[yi] != m2) continue;
        if (!in_search_set(infos_[xi * yc + yi], l1, l2, n_, delta_)) continue;
        if (found) return std::nullopt;  // ambiguous
        found = {xi, yi};
      }
    }
    if (!found) return std::nullopt;
    return identity_.eval(xs_.word(found->first), ys_.word(found->second));
  }

  const std::vector<int>& padded_len1() const { return pl1_; }
  const std::vector<int>& padded_len2() const { return pl2_; }

 private:
  int n_, x_size_, y_size_;
  double delta_;
  WordSpace xs_, ys_;
  std::vector<int> pl1_, pl2_;
  std::vector<Bits> bin1_, bin2_;
  std::vector<InfoTriple> infos_;
  VectorFunction identity_;
};

struct BinningBuild {
  std::shared_ptr<BinnedSwCode> code;
  LengthCheck len1, len2;
};

namespace detail {

inline std::vector<InfoTriple> info_table(const SourceModel& src, int n, int x_size, int y_size,
                                          std::uint64_t budget) {
  WordSpace xs{x_size, n}, ys{y_size, n};
  std::uint64_t xc = xs.count(), yc = ys.count();
  check_budget(xc * yc, budget, "pair information table");
  std::vector<InfoTriple> infos(xc * yc);
  Word x, y;
  for (std::uint64_t xi = 0; xi < xc; ++xi) {
    xs.word_into(xi, x);
    for (std::uint64_t yi = 0; yi < yc; ++yi) {
      ys.word_into(yi, y);
      infos[xi * yc + yi] = info_triple(src, x, y);
    }
  }
  return infos;
}

inline std::vector<int> code_lengths1(const DistributedCode& c) {
  WordSpace xs{c.x_size(), c.n()};
  std::vector<int> out(xs.count());
  Word w;
  for (std::uint64_t i = 0; i < xs.count(); ++i) {
    xs.word_into(i, w);
    out[i] = length1(c, w);
  }
  return out;
}

inline std::vector<int> code_lengths2(const DistributedCode& c) {
  WordSpace ys{c.y_size(), c.n()};
  std::vector<int> out(ys.count());
  Word w;
  for (std::uint64_t i = 0; i < ys.count(); ++i) {
    ys.word_into(i, w);
    out[i] = length2(c, w);
  }
  return out;
}

inline std::vector<Bits> draw_bins(const std::vector<int>& lens, CounterRng& rng) {
  std::vector<Bits> bins(lens.size());
  for (std::size_t i = 0; i < lens.size(); ++i) {
    Bits b(static_cast<std::size_t>(lens[i]), '0');
    for (int j = 0; j < lens[i]; ++j) b[static_cast<std::size_t>(j)] = rng.next_u64() & 1 ? '1' : '0';
    bins[i] = std::move(b);
  }
  return bins;
}

}  // namespace detail

inline BinningBuild build_random_binning_sw(const DistributedCode& phi, const SourceModel& src,
                                            double delta, std::uint64_t seed,
                                            std::uint64_t budget = kDefaultBudget) {
  require(delta > 0, "build_random_binning_sw: delta must be positive");
  int n = phi.n();
  std::vector<int> len1 = detail::code_lengths1(phi);
  std::vector<int> len2 = detail::code_lengths2(phi);
  std::vector<int> pl1(len1.size()), pl2(len2.size());
  for (std::size_t i = 0; i < len1.size(); ++i) pl1[i] = padded_length(len1[i], n, delta);
  for (std::size_t i = 0; i < len2.size(); ++i) pl2[i] = padded_length(len2[i], n, delta);
  CounterRng rng1(seed, 1), rng2(seed, 2);
  std::vector<Bits> bin1 = detail::draw_bins(pl1, rng1);
  std::vector<Bits> bin2 = detail::draw_bins(pl2, rng2);
  std::vector<InfoTriple> infos =
      detail::info_table(src, n, phi.x_size(), phi.y_size(), budget);
  BinningBuild b;
  b.code = std::make_shared<BinnedSwCode>(n, phi.x_size(), phi.y_size(), delta, pl1, pl2,
                                          std::move(bin1), std::move(bin2), std::move(infos));
  std::vector<int> act1(len1.size()), act2(len2.size());
  for (std::size_t i = 0; i < pl1.size(); ++i)
    act1[i] = elias_gamma_length(static_cast<std::uint64_t>(pl1[i])) + pl1[i];
  for (std::size_t i = 0; i < pl2.size(); ++i)
    act2[i] = elias_gamma_length(static_cast<std::uint64_t>(pl2[i])) + pl2[i];
  int mb1 = *std::max_element(len1.begin(), len1.end());
  int mb2 = *std::max_element(len2.begin(), len2.end());
  b.len1 = detail::check_length_display(len1, act1, n, delta, mb1);
  b.len2 = detail::check_length_display(len2, act2, n, delta, mb2);
  return b;
}

// Exact expectation, over independent uniform bins, of the constructed SW
// code's error probability, with the paper-form bound it must not exceed.
struct ExpectedErrorReport {
  double expected_error = 0;     // exact expectation over bin assignments
  double atypical_union = 0;     // P(T1^c u T2^c u T0^c) of the base code
  double bound = 0;              // atypical_union + 3 * 2^{-n delta}
  double slack() const { return bound - expected_error; }
};

inline ExpectedErrorReport binning_expected_error(const DistributedCode& phi,
                                                  const SourceModel& src, double delta,
                                                  std::uint64_t budget = kDefaultBudget,
                                                  std::uint64_t subset_budget = 1 << 22) {
  require(delta > 0, "binning_expected_error: delta must be positive");
  int n = phi.n();
  WordSpace xs{phi.x_size(), n}, ys{phi.y_size(), n};
  std::uint64_t xc = xs.count(), yc = ys.count();
  std::vector<InfoTriple> infos = detail::info_table(src, n, phi.x_size(), phi.y_size(), budget);
  std::vector<int> len1 = detail::code_lengths1(phi);
  std::vector<int> len2 = detail::code_lengths2(phi);
  std::vector<int> pl1(len1.size()), pl2(len2.size());
  for (std::size_t i = 0; i < len1.size(); ++i) pl1[i] = padded_length(len1[i], n, delta);
  for (std::size_t i = 0; i < len2.size(); ++i) pl2[i] = padded_length(len2[i], n, delta);

  ExpectedErrorReport rep;
  Word x, y;
  for (std::uint64_t xi = 0; xi < xc; ++xi) {
    xs.word_into(xi, x);
    for (std::uint64_t yi = 0; yi < yc; ++yi) {
      ys.word_into(yi, y);
      double p = src.block_pmf(x, y);
      if (p <= 0) continue;
      int l1 = pl1[xi], l2 = pl2[yi];
      TypicalMembership tm = typical_membership(infos[xi * yc + yi], len1[xi], len2[yi], n, delta);
      if (!tm.t1 || !tm.t2 || !tm.t0) rep.atypical_union += p;
      if (!in_search_set(infos[xi * yc + yi], l1, l2, n, delta)) {
        rep.expected_error += p;
        continue;
      }
      double q1 = std::exp2(static_cast<double>(-l1));
      double q2 = std::exp2(static_cast<double>(-l2));
      // No-wrong-candidate probability factorizes: candidates sharing the
      // true y (resp. x) must each miss their single bin; a pair candidate
      // whose x-part or y-part already appears as a single candidate is
      // subsumed by that requirement, so only pairs over fresh coordinates
      // need the joint enumeration.
      double keep = 1.0;
      std::vector<std::uint64_t> v1;  // fresh x-candidates appearing in pairs
      std::vector<std::vector<std::uint64_t>> pair_adj;
      {
        std::vector<char> y_single(yc, 0);
        for (std::uint64_t yj = 0; yj < yc; ++yj) {
          if (yj == yi || pl2[yj] != l2) continue;
          if (in_search_set(infos[xi * yc + yj], l1, l2, n, delta)) {
            keep *= 1.0 - q2;  // (x, y-hat) candidate
            y_single[yj] = 1;
          }
        }
        for (std::uint64_t xj = 0; xj < xc; ++xj) {
          if (xj == xi || pl1[xj] != l1) continue;
          if (in_search_set(infos[xj * yc + yi], l1, l2, n, delta)) {
            keep *= 1.0 - q1;  // (x-hat, y) candidate
            continue;
          }
          std::vector<std::uint64_t> adj;
          for (std::uint64_t yj = 0; yj < yc; ++yj) {
            if (yj == yi || pl2[yj] != l2 || y_single[yj]) continue;
            if (in_search_set(infos[xj * yc + yj], l1, l2, n, delta)) adj.push_back(yj);
          }
          if (!adj.empty()) {
            v1.push_back(xj);
            pair_adj.push_back(std::move(adj));
          }
        }
      }
      check_budget(std::uint64_t{1} << std::min<std::size_t>(v1.size(), 63), subset_budget,
                   "binning expected error subset enumeration");
      double no_pair = 0;
      std::uint64_t m = std::uint64_t{1} << v1.size();
      for (std::uint64_t mask = 0; mask < m; ++mask) {
        double pr = 1.0;
        std::vector<std::uint64_t> hit;
        for (std::size_t k = 0; k < v1.size(); ++k) {
          if (mask >> k & 1) {
            pr *= q1;
            for (std::uint64_t yj : pair_adj[k]) hit.push_back(yj);
          } else {
            pr *= 1.0 - q1;
          }
        }
        std::sort(hit.begin(), hit.end());
        hit.erase(std::unique(hit.begin(), hit.end()), hit.end());
        no_pair += pr * std::pow(1.0 - q2, static_cast<double>(hit.size()));
      }
      rep.expected_error += p * (1.0 - keep * no_pair);
    }
  }
  rep.bound = rep.atypical_union + 3.0 * std::exp2(-static_cast<double>(n) * delta);
  return rep;
}


// SW code with full side-information: encoder 2 ships y verbatim, encoder 1
// is the single-sided adaptive random binning, and the decoder searches
// S_{n,1}(l1) only.
class FullSideSwCode : public DistributedCode {
 public:
  FullSideSwCode(int n, int x_size, int y_size, double delta, std::vector<int> pl1,
                 std::vector<Bits> bin1, std::vector<InfoTriple> infos)
      : n_(n), x_size_(x_size), y_size_(y_size), delta_(delta), xs_{x_size, n}, ys_{y_size, n},
        pl1_(std::move(pl1)), bin1_(std::move(bin1)), infos_(std::move(infos)),
        identity_(identity_function(x_size, y_size, n)) {
    y_width_ = 1;
    while ((std::uint64_t{1} << y_width_) < ys_.count()) ++y_width_;
  }

  int n() const override { return n_; }
  int x_size() const override { return x_size_; }
  int y_size() const override { return y_size_; }

  Kind kind() const override {
    for (int l : pl1_)
      if (l != pl1_[0]) return Kind::variable_length;
    return Kind::fixed_length;
  }

  Bits encode1(const Word& x) const override {
    std::uint64_t i = xs_.index(x);
    return elias_gamma(static_cast<std::uint64_t>(pl1_[i])) + bin1_[i];
  }

  Bits encode2(const Word& y) const override { return to_fixed_bits(ys_.index(y), y_width_); }

  std::optional<ZWord> decode(const Bits& c1, const Bits& c2) const override {
    GammaDecoded g1 = elias_gamma_decode(c1);
    if (!g1.ok) return std::nullopt;
    int l1 = static_cast<int>(g1.value);
    if (c1.size() != g1.consumed + static_cast<std::size_t>(l1)) return std::nullopt;
    if (c2.size() != static_cast<std::size_t>(y_width_)) return std::nullopt;
    Bits m1 = c1.substr(g1.consumed);
    std::uint64_t yi = from_bits(c2, 0, y_width_);
    if (yi >= ys_.count()) return std::nullopt;
    std::uint64_t xc = xs_.count(), yc = ys_.count();
    std::optional<std::uint64_t> found;
    for (std::uint64_t xi = 0; xi < xc; ++xi) {
      if (pl1_[xi] != l1 || bin1_[xi] != m1) continue;
      if (infos_[xi * yc + yi].x_given_y >
          static_cast<double>(l1) / n_ - delta_ + 1e-12)
        continue;
      if (found) return std::nullopt;
      found = xi;
    }
    if (!found) return std::nullopt;
    return identity_.eval(xs_.word(*found), ys_.word(yi));
  }

 private:
  int n_, x_size_, y_size_;
  double delta_;
  WordSpace xs_, ys_;
  std::vector<int> pl1_;
  std::vector<Bits> bin1_;
  std::vector<InfoTriple> infos_;
  VectorFunction identity_;
  int y_width_ = 1;
};

struct FullSideBuild {
  std::shared_ptr<FullSideSwCode> code;
  LengthCheck len;
  BoundReport error_bound;  // exact E_bins[P_e] vs the constructed-code display
  double q = 0;             // smoothness certificate used in the bound
  double pe_phi = 0;        // exact error of the input function code
};

// Transform a code for a sensitive function into a full-side-information SW
// code, certifying the length and error displays at this block length.
// Refuses when a hypothesis fails, naming it.
inline FullSideBuild build_full_side_sw(const DistributedCode& phi, const VectorFunction& fn,
                                        const SourceModel& src, const TypicalSetConfig& cfg,
                                        std::uint64_t seed,
                                        std::uint64_t budget = kDefaultBudget) {
  cfg.validate();
  require(phi.n() == fn.n(), "build_full_side_sw: code/function block lengths disagree");
  int n = phi.n();
  CheckResult sens = is_sensitive_given_y(fn, budget);
  check_hypothesis(sens.holds,
                   "build_full_side_sw: function is not sensitive conditioned on Y^n (Def. 3)");
  SmoothnessVerdict sm = smoothness_check(src, n, budget);
  check_hypothesis(sm.smooth_wrt_y,
                   "build_full_side_sw: source is not smooth with respect to Y (Def. 8)");
  double q = sm.q_given_y;

  std::vector<int> len1 = detail::code_lengths1(phi);
  std::vector<int> pl1(len1.size());
  for (std::size_t i = 0; i < len1.size(); ++i) pl1[i] = padded_length(len1[i], n, cfg.delta);
  CounterRng rng(seed, 1);
  std::vector<Bits> bin1 = detail::draw_bins(pl1, rng);
  std::vector<InfoTriple> infos = detail::info_table(src, n, phi.x_size(), phi.y_size(), budget);

  FullSideBuild b;
  b.q = q;
  b.code = std::make_shared<FullSideSwCode>(n, phi.x_size(), phi.y_size(), cfg.delta, pl1,
                                            std::move(bin1), infos);
  std::vector<int> act(pl1.size());
  for (std::size_t i = 0; i < pl1.size(); ++i)
    act[i] = elias_gamma_length(static_cast<std::uint64_t>(pl1[i])) + pl1[i];
  int mb = *std::max_element(len1.begin(), len1.end());
  b.len = detail::check_length_display(len1, act, n, cfg.delta, mb);

  // Exact expected error over bins: the true x decodes iff it lands in
  // S_{n,1}; each qualifying impostor independently collides w.p. 2^{-l1}.
  WordSpace xs{phi.x_size(), n}, ys{phi.y_size(), n};
  std::uint64_t xc = xs.count(), yc = ys.count();
  double expected = 0, t1c_mass = 0;
  Word x, y;
  for (std::uint64_t xi = 0; xi < xc; ++xi) {
    xs.word_into(xi, x);
    for (std::uint64_t yi = 0; yi < yc; ++yi) {
      ys.word_into(yi, y);
      double p = src.block_pmf(x, y);
      if (p <= 0) continue;
      int l1 = pl1[xi];
      double thresh = static_cast<double>(l1) / n - cfg.delta + 1e-12;
      if (infos[xi * yc + yi].x_given_y >
          static_cast<double>(len1[xi]) / n + cfg.delta)
        t1c_mass += p;
      if (infos[xi * yc + yi].x_given_y > thresh) {
        expected += p;
        continue;
      }
      std::uint64_t impostors = 0;
      for (std::uint64_t xj = 0; xj < xc; ++xj) {
        if (xj == xi || pl1[xj] != l1) continue;
        if (infos[xj * yc + yi].x_given_y <= thresh) ++impostors;
      }
      expected += p * (1.0 - std::pow(1.0 - std::exp2(static_cast<double>(-l1)),
                                      static_cast<double>(impostors)));
    }
  }
  b.pe_phi = error_probability_exact(phi, src, fn, budget);
  double v = v_n(cfg.beta, n, phi.x_size());
  double two_nd = std::exp2(-static_cast<double>(n) * cfg.delta);
  b.error_bound.name = "full-side-error";
  b.error_bound.lhs = expected;
  b.error_bound.rhs = (1.0 + 2.0 * phi.y_size() / (cfg.beta * q)) * b.pe_phi + (v + 2.0) * two_nd;
  b.error_bound.component("pe_phi", b.pe_phi);
  b.error_bound.component("q", q);
  b.error_bound.component("v_n", v);
  b.error_bound.component("t1c_mass", t1c_mass);
  b.error_bound.component("mid", t1c_mass + two_nd);
  return b;
}

}  // namespace dcomp
