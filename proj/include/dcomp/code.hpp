#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dcomp/bits.hpp"
#include "dcomp/common.hpp"
#include "dcomp/function.hpp"
#include "dcomp/rng.hpp"
#include "dcomp/source.hpp"

namespace dcomp {

// A pair of prefix-free encoders and a joint decoder. Decoding may fail
// (no/ambiguous candidate); failures count as errors.
class DistributedCode {
 public:
  enum class Kind { fixed_length, variable_length };

  virtual ~DistributedCode() = default;
  virtual int n() const = 0;
  virtual int x_size() const = 0;
  virtual int y_size() const = 0;
  virtual Kind kind() const = 0;
  virtual Bits encode1(const Word& x) const = 0;
  virtual Bits encode2(const Word& y) const = 0;
  virtual std::optional<ZWord> decode(const Bits& c1, const Bits& c2) const = 0;
};

inline int length1(const DistributedCode& c, const Word& x) {
  return static_cast<int>(c.encode1(x).size());
}
inline int length2(const DistributedCode& c, const Word& y) {
  return static_cast<int>(c.encode2(y).size());
}

// Largest per-symbol codeword lengths, computed from the actual tables.
struct LengthCaps {
  double L1 = 0, L2 = 0;  // max len / n
  int max_len1 = 0, max_len2 = 0;
};

inline LengthCaps length_caps(const DistributedCode& c, std::uint64_t budget = kDefaultBudget) {
  WordSpace xs{c.x_size(), c.n()}, ys{c.y_size(), c.n()};
  check_budget(xs.count() + ys.count(), budget, "length cap scan");
  LengthCaps caps;
  Word w;
  for (std::uint64_t i = 0; i < xs.count(); ++i) {
    xs.word_into(i, w);
    caps.max_len1 = std::max(caps.max_len1, length1(c, w));
  }
  for (std::uint64_t i = 0; i < ys.count(); ++i) {
    ys.word_into(i, w);
    caps.max_len2 = std::max(caps.max_len2, length2(c, w));
  }
  caps.L1 = static_cast<double>(caps.max_len1) / c.n();
  caps.L2 = static_cast<double>(caps.max_len2) / c.n();
  return caps;
}

// Explicitly tabulated code over the word-index spaces.
class TableCode : public DistributedCode {
 public:
  TableCode(int n, int x_size, int y_size, std::vector<Bits> enc1, std::vector<Bits> enc2)
      : n_(n), x_size_(x_size), y_size_(y_size), xs_{x_size, n}, ys_{y_size, n},
        enc1_(std::move(enc1)), enc2_(std::move(enc2)) {
    require(enc1_.size() == xs_.count() && enc2_.size() == ys_.count(),
            "TableCode: encoder tables must cover the word spaces");
  }

  void set_decode_entry(const Bits& c1, const Bits& c2, ZWord z) {
    dec_[key(c1, c2)] = std::move(z);
  }

  int n() const override { return n_; }
  int x_size() const override { return x_size_; }
  int y_size() const override { return y_size_; }

  Kind kind() const override {
    auto fixed = [](const std::vector<Bits>& t) {
      for (const Bits& b : t)
        if (b.size() != t[0].size()) return false;
      return true;
    };
    return fixed(enc1_) && fixed(enc2_) ? Kind::fixed_length : Kind::variable_length;
  }

  Bits encode1(const Word& x) const override { return enc1_[xs_.index(x)]; }
  Bits encode2(const Word& y) const override { return enc2_[ys_.index(y)]; }

  std::optional<ZWord> decode(const Bits& c1, const Bits& c2) const override {
    auto it = dec_.find(key(c1, c2));
    if (it == dec_.end()) return std::nullopt;
    return it->second;
  }

  const std::vector<Bits>& enc1_table() const { return enc1_; }
  const std::vector<Bits>& enc2_table() const { return enc2_; }
  const std::unordered_map<std::string, ZWord>& decode_table() const { return dec_; }

 private:
  static std::string key(const Bits& c1, const Bits& c2) { return c1 + "|" + c2; }

  int n_, x_size_, y_size_;
  WordSpace xs_, ys_;
  std::vector<Bits> enc1_, enc2_;
  std::unordered_map<std::string, ZWord> dec_;
};

// Zero-error SW code at full rates: indices sent verbatim.
inline std::shared_ptr<TableCode> full_rate_sw_code(int x_size, int y_size, int n) {
  WordSpace xs{x_size, n}, ys{y_size, n};
  int w1 = std::max(1, 64 - __builtin_clzll(std::max<std::uint64_t>(xs.count() - 1, 1)));
  int w2 = std::max(1, 64 - __builtin_clzll(std::max<std::uint64_t>(ys.count() - 1, 1)));
  if (xs.count() == 1) w1 = 1;
  if (ys.count() == 1) w2 = 1;
  std::vector<Bits> e1(xs.count()), e2(ys.count());
  for (std::uint64_t i = 0; i < xs.count(); ++i) e1[i] = to_fixed_bits(i, w1);
  for (std::uint64_t i = 0; i < ys.count(); ++i) e2[i] = to_fixed_bits(i, w2);
  auto code = std::make_shared<TableCode>(n, x_size, y_size, std::move(e1), std::move(e2));
  VectorFunction id = identity_function(x_size, y_size, n);
  Word x, y;
  for (std::uint64_t xi = 0; xi < xs.count(); ++xi) {
    xs.word_into(xi, x);
    for (std::uint64_t yi = 0; yi < ys.count(); ++yi) {
      ys.word_into(yi, y);
      code->set_decode_entry(to_fixed_bits(xi, w1), to_fixed_bits(yi, w2), id.eval(x, y));
    }
  }
  return code;
}

// Seeded random binning at fixed lengths len1/len2 with the maximum-
// probability decoder; the generic code generator for the bound suites.
inline std::shared_ptr<TableCode> random_binning_code(const VectorFunction& fn,
                                                      const SourceModel& src, int len1, int len2,
                                                      std::uint64_t seed,
                                                      std::uint64_t budget = kDefaultBudget) {
  int n = fn.n();
  WordSpace xs{fn.x_size(), n}, ys{fn.y_size(), n};
  std::uint64_t xc = xs.count(), yc = ys.count();
  check_budget(xc * yc, budget, "random binning code construction");
  CounterRng rng(seed, 0x62696E73ULL);
  std::vector<Bits> e1(xc), e2(yc);
  for (std::uint64_t i = 0; i < xc; ++i) e1[i] = to_fixed_bits(rng.below(1ULL << len1), len1);
  for (std::uint64_t i = 0; i < yc; ++i) e2[i] = to_fixed_bits(rng.below(1ULL << len2), len2);
  auto code = std::make_shared<TableCode>(n, fn.x_size(), fn.y_size(), e1, e2);
  // MAP decoding within the bin pair.
  std::unordered_map<std::string, std::pair<double, ZWord>> best;
  Word x, y;
  for (std::uint64_t xi = 0; xi < xc; ++xi) {
    xs.word_into(xi, x);
    for (std::uint64_t yi = 0; yi < yc; ++yi) {
      ys.word_into(yi, y);
      double p = src.block_pmf(x, y);
      std::string k = e1[xi] + "|" + e2[yi];
      auto it = best.find(k);
      if (it == best.end() || p > it->second.first)
        best[k] = {p, fn.eval(x, y)};
    }
  }
  for (auto& [k, v] : best) {
    std::size_t bar = k.find('|');
    code->set_decode_entry(k.substr(0, bar), k.substr(bar + 1), std::move(v.second));
  }
  return code;
}

// Random complete prefix-free encoders (random trie splits) with MAP
// decoding; exercises genuinely variable-length inputs.
inline std::shared_ptr<TableCode> random_prefix_code(const VectorFunction& fn,
                                                     const SourceModel& src, std::uint64_t seed,
                                                     int max_len,
                                                     std::uint64_t budget = kDefaultBudget) {
  int n = fn.n();
  WordSpace xs{fn.x_size(), n}, ys{fn.y_size(), n};
  std::uint64_t xc = xs.count(), yc = ys.count();
  check_budget(xc * yc, budget, "random prefix code construction");
  CounterRng rng(seed, 0x74726965ULL);
  auto build = [&rng, max_len](std::uint64_t leaves) {
    std::vector<Bits> words{""};
    while (words.size() < leaves) {
      // split a random leaf that still has room to grow
      std::size_t pick = rng.below(words.size());
      bool grown = false;
      for (std::size_t off = 0; off < words.size() && !grown; ++off) {
        std::size_t i = (pick + off) % words.size();
        if (static_cast<int>(words[i].size()) >= max_len) continue;
        Bits w = words[i];
        words[i] = w + "0";
        words.push_back(w + "1");
        grown = true;
      }
      require(grown, "random_prefix_code: max_len too small for leaf count");
    }
    // shuffle assignment
    for (std::size_t i = words.size(); i > 1; --i)
      std::swap(words[i - 1], words[rng.below(i)]);
    return words;
  };
  std::vector<Bits> e1 = build(xc), e2 = build(yc);
  auto code = std::make_shared<TableCode>(n, fn.x_size(), fn.y_size(), e1, e2);
  std::unordered_map<std::string, std::pair<double, ZWord>> best;
  Word x, y;
  for (std::uint64_t xi = 0; xi < xc; ++xi) {
    xs.word_into(xi, x);
    for (std::uint64_t yi = 0; yi < yc; ++yi) {
      ys.word_into(yi, y);
      double p = src.block_pmf(x, y);
      std::string k = e1[xi] + "|" + e2[yi];
      auto it = best.find(k);
      if (it == best.end() || p > it->second.first) best[k] = {p, fn.eval(x, y)};
    }
  }
  for (auto& [k, v] : best) {
    std::size_t bar = k.find('|');
    code->set_decode_entry(k.substr(0, bar), k.substr(bar + 1), std::move(v.second));
  }
  return code;
}

// Exact error probability by enumerating the pair space.
inline double error_probability_exact(const DistributedCode& code, const SourceModel& src,
                                      const VectorFunction& fn,
                                      std::uint64_t budget = kDefaultBudget) {
  require(code.n() == fn.n() && code.x_size() == fn.x_size() && code.y_size() == fn.y_size(),
          "error_probability_exact: code/function dimensions disagree");
  WordSpace xs{fn.x_size(), fn.n()}, ys{fn.y_size(), fn.n()};
  std::uint64_t xc = xs.count(), yc = ys.count();
  check_budget(xc * yc, budget, "exact error probability");
  double err = 0;
  Word x, y;
  ZWord z;
  for (std::uint64_t xi = 0; xi < xc; ++xi) {
    xs.word_into(xi, x);
    Bits c1 = code.encode1(x);
    for (std::uint64_t yi = 0; yi < yc; ++yi) {
      ys.word_into(yi, y);
      double p = src.block_pmf(x, y);
      if (p <= 0) continue;
      fn.eval(x, y, z);
      std::optional<ZWord> out = code.decode(c1, code.encode2(y));
      if (!out || *out != z) err += p;
    }
  }
  return err;
}

// Wilson 95% interval around a Monte Carlo estimate.
struct McEstimate {
  double p_hat = 0;
  double ci_low = 0;
  double ci_high = 1;
  std::uint64_t errors = 0;
  std::uint64_t trials = 0;
};

inline McEstimate wilson_interval(std::uint64_t errors, std::uint64_t trials) {
  McEstimate e;
  e.errors = errors;
  e.trials = trials;
  if (trials == 0) return e;
  double z = 1.959963984540054;
  double nt = static_cast<double>(trials);
  double p = static_cast<double>(errors) / nt;
  double z2 = z * z;
  double denom = 1 + z2 / nt;
  double center = (p + z2 / (2 * nt)) / denom;
  double half = z * std::sqrt(p * (1 - p) / nt + z2 / (4 * nt * nt)) / denom;
  e.p_hat = p;
  e.ci_low = std::max(0.0, center - half);
  e.ci_high = std::min(1.0, center + half);
  return e;
}

inline McEstimate error_probability_mc(const DistributedCode& code, const SourceModel& src,
                                       const VectorFunction& fn, std::uint64_t trials,
                                       CounterRng& rng) {
  require(trials >= 1, "error_probability_mc: trials must be >= 1");
  std::uint64_t errors = 0;
  Word x, y;
  ZWord z;
  for (std::uint64_t t = 0; t < trials; ++t) {
    src.sample(code.n(), rng, x, y);
    fn.eval(x, y, z);
    std::optional<ZWord> out = code.decode(code.encode1(x), code.encode2(y));
    if (!out || *out != z) ++errors;
  }
  return wilson_interval(errors, trials);
}

}  // namespace dcomp
