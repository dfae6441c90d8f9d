#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "dcomp/bits.hpp"
#include "dcomp/code.hpp"
#include "dcomp/common.hpp"
#include "dcomp/gf.hpp"
#include "dcomp/rng.hpp"
#include "dcomp/source.hpp"

namespace dcomp {

struct KmDecoderConfig {
  std::uint64_t table_max_entries = 2'000'000;   // cap on p^{k_b} per block
  std::uint64_t fill_pattern_budget = 20'000'000;  // patterns enumerated per block
  int max_weight_cap = 6;
};

namespace detail {

// Chunked base-p packing of symbol vectors into bit strings.
struct BasePacking {
  int base = 2;
  std::vector<int> chunk_syms;
  std::vector<int> chunk_bits;
  int total_bits = 0;

  static BasePacking plan(int base, int count) {
    BasePacking pk;
    pk.base = base;
    if (base == 1) return pk;  // single-symbol alphabet carries no information
    int max_chunk = 1;
    std::uint64_t v = static_cast<std::uint64_t>(base);
    while (v <= (std::uint64_t{1} << 61) / static_cast<std::uint64_t>(base)) {
      v *= static_cast<std::uint64_t>(base);
      ++max_chunk;
    }
    int left = count;
    while (left > 0) {
      int c = std::min(left, max_chunk);
      std::uint64_t top = checked_pow(static_cast<std::uint64_t>(base), c) - 1;
      int bits = top == 0 ? 0 : 64 - __builtin_clzll(top);
      pk.chunk_syms.push_back(c);
      pk.chunk_bits.push_back(bits);
      pk.total_bits += bits;
      left -= c;
    }
    return pk;
  }

  void pack(const int* syms, Bits& out) const {
    int off = 0;
    for (std::size_t c = 0; c < chunk_syms.size(); ++c) {
      std::uint64_t v = 0;
      for (int i = chunk_syms[c] - 1; i >= 0; --i)
        v = v * static_cast<std::uint64_t>(base) + static_cast<std::uint64_t>(syms[off + i]);
      out += to_fixed_bits(v, chunk_bits[c]);
      off += chunk_syms[c];
    }
  }

  bool unpack(const Bits& in, std::size_t pos, std::vector<int>& syms) const {
    syms.clear();
    for (std::size_t c = 0; c < chunk_syms.size(); ++c) {
      if (pos + static_cast<std::size_t>(chunk_bits[c]) > in.size()) return false;
      std::uint64_t v = from_bits(in, pos, chunk_bits[c]);
      pos += static_cast<std::size_t>(chunk_bits[c]);
      for (int i = 0; i < chunk_syms[c]; ++i) {
        syms.push_back(static_cast<int>(v % static_cast<std::uint64_t>(base)));
        v /= static_cast<std::uint64_t>(base);
      }
      if (v != 0) return false;
    }
    return true;
  }
};

// Minimum-cost deviation from the modal noise word, per syndrome.
struct CosetEntry {
  float cost = std::numeric_limits<float>::infinity();
  std::uint8_t weight = 0;
  std::array<std::uint8_t, 6> pos{};
  std::array<std::uint8_t, 6> val{};

  bool filled() const { return cost < std::numeric_limits<float>::infinity(); }
};

struct KmBlock {
  int col_offset = 0;
  int cols = 0;
  int parities = 0;
  GfMatrix h;
  std::vector<CosetEntry> table;  // indexed by packed syndrome, size p^parities
  int fill_weight = 0;
};

}  // namespace detail

// Linear modulo-sum coding for the GF(p)-sum / raw-pair function: both
// encoders apply the same seeded linear map to the sum part and append the
// tail verbatim. The decoder recovers the syndrome of Z = X (+) Y and picks
// the maximum-likelihood Z within the tabulated weight cap, per block.
class KmCode : public DistributedCode {
 public:
  KmCode(const SourceModel& src, int n, double rate_bits_per_symbol, std::uint64_t seed,
         KmDecoderConfig cfg = {})
      : n_(n), x_size_(src.x_size()), y_size_(src.y_size()), rate_(rate_bits_per_symbol) {
    check_hypothesis(src.kind() == SourceModel::Kind::theorem9,
                     "km_modsum_code: source must be the anti-diagonal GF(p)-sum construction");
    require(rate_bits_per_symbol >= 0, "km_modsum_code: rate must be >= 0");
    require(n >= 1, "km_modsum_code: n must be >= 1");
    p_ = smallest_prime_at_least(x_size_ + y_size_ - 1);
    m_ = src.sum_len(n);
    double logp = std::log2(static_cast<double>(p_));
    k_ = m_ > 0 ? static_cast<int>(std::ceil(m_ * rate_bits_per_symbol / logp - 1e-12)) : 0;

    // per-symbol law of Z = X (+) Y and its modal value
    z_law_.assign(static_cast<std::size_t>(p_), 0.0);
    for (int a = 0; a < x_size_; ++a)
      for (int b = 0; b < y_size_; ++b)
        z_law_[static_cast<std::size_t>((a + b) % p_)] +=
            src.joint()[static_cast<std::size_t>(a) * y_size_ + b];
    modal_ = 0;
    for (int v = 1; v < p_; ++v)
      if (z_law_[static_cast<std::size_t>(v)] > z_law_[static_cast<std::size_t>(modal_)]) modal_ = v;

    // block layout driven by the per-block table cap
    int k_max = 0;
    std::uint64_t cells = 1;
    while (cells <= cfg.table_max_entries / static_cast<std::uint64_t>(p_)) {
      cells *= static_cast<std::uint64_t>(p_);
      ++k_max;
    }
    k_max = std::max(k_max, 1);
    int nblocks = k_ > 0 ? (k_ + k_max - 1) / k_max : 0;
    CounterRng rng(seed, 0x6B6D6D74ULL);
    int col = 0, kleft = k_;
    for (int b = 0; b < nblocks; ++b) {
      detail::KmBlock blk;
      int rem = nblocks - b;
      blk.cols = (m_ - col + rem - 1) / rem;
      blk.parities = (kleft + rem - 1) / rem;
      blk.col_offset = col;
      blk.h = GfMatrix::random(blk.parities, blk.cols, p_, rng);
      col += blk.cols;
      kleft -= blk.parities;
      blocks_.push_back(std::move(blk));
    }
    if (nblocks == 0 && m_ > 0) {
      // rate rounds to zero parities: a single empty block covering the sum
      // part, decoded as the all-modal word
      detail::KmBlock blk;
      blk.cols = m_;
      blk.parities = 0;
      blk.h = GfMatrix{0, m_, p_, {}};
      blocks_.push_back(std::move(blk));
    }
    for (detail::KmBlock& blk : blocks_) fill_table(blk, cfg);

    syn_pack_ = detail::BasePacking::plan(p_, k_);
    tail1_pack_ = detail::BasePacking::plan(x_size_, n_ - m_);
    tail2_pack_ = detail::BasePacking::plan(y_size_, n_ - m_);
  }

  int n() const override { return n_; }
  int x_size() const override { return x_size_; }
  int y_size() const override { return y_size_; }
  Kind kind() const override { return Kind::fixed_length; }

  int prime() const { return p_; }
  int sum_len() const { return m_; }
  int parity_symbols() const { return k_; }
  int encoded_bits1() const { return syn_pack_.total_bits + tail1_pack_.total_bits; }
  int encoded_bits2() const { return syn_pack_.total_bits + tail2_pack_.total_bits; }
  double actual_rate1() const { return static_cast<double>(encoded_bits1()) / n_; }
  double actual_rate2() const { return static_cast<double>(encoded_bits2()) / n_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  int fill_weight(int b) const { return blocks_[static_cast<std::size_t>(b)].fill_weight; }

  Bits encode1(const Word& x) const override { return encode_side(x, tail1_pack_); }
  Bits encode2(const Word& y) const override { return encode_side(y, tail2_pack_); }

  std::optional<ZWord> decode(const Bits& c1, const Bits& c2) const override {
    std::vector<int> s1, s2, t1, t2;
    if (!syn_pack_.unpack(c1, 0, s1)) return std::nullopt;
    if (!tail1_pack_.unpack(c1, static_cast<std::size_t>(syn_pack_.total_bits), t1))
      return std::nullopt;
    if (!syn_pack_.unpack(c2, 0, s2)) return std::nullopt;
    if (!tail2_pack_.unpack(c2, static_cast<std::size_t>(syn_pack_.total_bits), t2))
      return std::nullopt;
    if (c1.size() != static_cast<std::size_t>(encoded_bits1()) ||
        c2.size() != static_cast<std::size_t>(encoded_bits2()))
      return std::nullopt;

    ZWord out(static_cast<std::size_t>(n_));
    int soff = 0;
    for (const detail::KmBlock& blk : blocks_) {
      // syndrome of z, then of the deviation from the modal word
      std::vector<int> sz(static_cast<std::size_t>(blk.parities));
      for (int r = 0; r < blk.parities; ++r)
        sz[static_cast<std::size_t>(r)] = (s1[static_cast<std::size_t>(soff + r)] +
                                           s2[static_cast<std::size_t>(soff + r)]) % p_;
      std::uint64_t idx = 0;
      {
        std::vector<int> sigma(static_cast<std::size_t>(blk.parities));
        for (int r = 0; r < blk.parities; ++r) {
          std::int64_t modal_syn = 0;
          for (int c = 0; c < blk.cols; ++c) modal_syn += blk.h.at(r, c);
          modal_syn = modal_syn % p_ * modal_;
          int v = static_cast<int>(((sz[static_cast<std::size_t>(r)] - modal_syn) % p_ + p_) % p_);
          sigma[static_cast<std::size_t>(r)] = v;
        }
        for (int r = blk.parities - 1; r >= 0; --r)
          idx = idx * static_cast<std::uint64_t>(p_) +
                static_cast<std::uint64_t>(sigma[static_cast<std::size_t>(r)]);
      }
      const detail::CosetEntry& e = blk.table[idx];
      if (!e.filled()) return std::nullopt;
      for (int c = 0; c < blk.cols; ++c)
        out[static_cast<std::size_t>(blk.col_offset + c)] = modal_;
      for (int i = 0; i < e.weight; ++i)
        out[static_cast<std::size_t>(blk.col_offset + e.pos[static_cast<std::size_t>(i)])] =
            (modal_ + e.val[static_cast<std::size_t>(i)]) % p_;
      soff += blk.parities;
    }
    for (int i = m_; i < n_; ++i)
      out[static_cast<std::size_t>(i)] =
          t1[static_cast<std::size_t>(i - m_)] * y_size_ + t2[static_cast<std::size_t>(i - m_)];
    return out;
  }

 private:
  Bits encode_side(const Word& w, const detail::BasePacking& tail_pack) const {
    require(static_cast<int>(w.size()) == n_, "km encode: wrong block length");
    Bits out;
    std::vector<int> syms(static_cast<std::size_t>(k_));
    int soff = 0;
    std::vector<int> syn;
    for (const detail::KmBlock& blk : blocks_) {
      Word part(w.begin() + blk.col_offset, w.begin() + blk.col_offset + blk.cols);
      blk.h.apply(part, syn);
      for (int r = 0; r < blk.parities; ++r) syms[static_cast<std::size_t>(soff + r)] = syn[static_cast<std::size_t>(r)];
      soff += blk.parities;
    }
    syn_pack_.pack(syms.data(), out);
    std::vector<int> tail(w.begin() + m_, w.end());
    tail_pack.pack(tail.data(), out);
    return out;
  }

  void fill_table(detail::KmBlock& blk, const KmDecoderConfig& cfg) {
    std::uint64_t cells = checked_pow(static_cast<std::uint64_t>(p_), blk.parities);
    blk.table.assign(cells, detail::CosetEntry{});
    blk.table[0] = detail::CosetEntry{0.0f, 0, {}, {}};

    // value costs: -log2 P_Z(modal + d), nonzero deviations only
    std::vector<double> dev_cost(static_cast<std::size_t>(p_),
                                 std::numeric_limits<double>::infinity());
    std::vector<int> devs;
    for (int d = 1; d < p_; ++d) {
      double pz = z_law_[static_cast<std::size_t>((modal_ + d) % p_)];
      if (pz > 0) {
        dev_cost[static_cast<std::size_t>(d)] = -std::log2(pz);
        devs.push_back(d);
      }
    }
    if (devs.empty() || blk.parities == 0) {
      blk.fill_weight = 0;
      return;
    }

    // deepest weight whose cumulative pattern count fits the budget
    int cap = 0;
    long double cum = 1;
    for (int w = 1; w <= std::min({cfg.max_weight_cap, blk.cols, 6}); ++w) {
      long double binom = 1;
      for (int i = 0; i < w; ++i) binom = binom * (blk.cols - i) / (i + 1);
      long double add = binom * std::pow(static_cast<long double>(devs.size()), w);
      if (cum + add > static_cast<long double>(cfg.fill_pattern_budget)) break;
      cum += add;
      cap = w;
    }
    blk.fill_weight = cap;

    std::vector<int> sigma(static_cast<std::size_t>(blk.parities), 0);
    std::array<std::uint8_t, 6> pos{}, val{};
    fill_dfs(blk, 0, 0, 0.0, sigma, pos, val, dev_cost, devs, cap);
  }

  void fill_dfs(detail::KmBlock& blk, int start, int weight, double cost,
                std::vector<int>& sigma, std::array<std::uint8_t, 6>& pos,
                std::array<std::uint8_t, 6>& val, const std::vector<double>& dev_cost,
                const std::vector<int>& devs, int cap) {
    if (weight == cap) return;
    for (int c = start; c < blk.cols; ++c) {
      pos[static_cast<std::size_t>(weight)] = static_cast<std::uint8_t>(c);
      for (int d : devs) {
        val[static_cast<std::size_t>(weight)] = static_cast<std::uint8_t>(d);
        blk.h.add_column(sigma, c, d);
        double ncost = cost + dev_cost[static_cast<std::size_t>(d)];
        std::uint64_t idx = 0;
        for (int r = blk.parities - 1; r >= 0; --r)
          idx = idx * static_cast<std::uint64_t>(p_) +
                static_cast<std::uint64_t>(sigma[static_cast<std::size_t>(r)]);
        detail::CosetEntry& e = blk.table[idx];
        if (static_cast<float>(ncost) < e.cost - 1e-9f) {
          e.cost = static_cast<float>(ncost);
          e.weight = static_cast<std::uint8_t>(weight + 1);
          e.pos = pos;
          e.val = val;
        }
        fill_dfs(blk, c + 1, weight + 1, ncost, sigma, pos, val, dev_cost, devs, cap);
        blk.h.add_column(sigma, c, p_ - d);
      }
    }
  }

  int n_, x_size_, y_size_;
  double rate_;
  int p_ = 2, m_ = 0, k_ = 0, modal_ = 0;
  std::vector<double> z_law_;
  std::vector<detail::KmBlock> blocks_;
  detail::BasePacking syn_pack_, tail1_pack_, tail2_pack_;
};

inline std::shared_ptr<KmCode> km_modsum_code(const SourceModel& src, int n,
                                              double rate_bits_per_symbol, std::uint64_t seed,
                                              KmDecoderConfig cfg = {}) {
  return std::make_shared<KmCode>(src, n, rate_bits_per_symbol, seed, cfg);
}

}  // namespace dcomp
