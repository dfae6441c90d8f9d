#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dcomp/common.hpp"
#include "dcomp/gf.hpp"
#include "dcomp/words.hpp"

namespace dcomp {

// Function outputs are tuples of per-coordinate labels. Symbol-wise and
// mixed constructions emit one label per position; opaque block tables emit
// a single label.
using ZWord = std::vector<int>;

// A finite single-letter function f: X x Y -> Z with output labels
// canonicalized to dense integers in first-appearance (row-major) order.
class SingleLetterFunction {
 public:
  SingleLetterFunction(int x_size, int y_size, const std::vector<std::string>& raw_labels)
      : x_size_(x_size), y_size_(y_size), table_(raw_labels.size()) {
    require(x_size >= 1 && y_size >= 1, "function: alphabet sizes must be >= 1");
    require(raw_labels.size() == static_cast<std::size_t>(x_size) * y_size,
            "function: table must have x_size*y_size entries");
    std::map<std::string, int> ids;
    for (std::size_t i = 0; i < raw_labels.size(); ++i) {
      auto it = ids.find(raw_labels[i]);
      if (it == ids.end()) {
        it = ids.emplace(raw_labels[i], static_cast<int>(labels_.size())).first;
        labels_.push_back(raw_labels[i]);
      }
      table_[i] = it->second;
    }
  }

  static SingleLetterFunction from_values(int x_size, int y_size, const std::vector<int>& vals) {
    std::vector<std::string> raw(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) raw[i] = std::to_string(vals[i]);
    return SingleLetterFunction(x_size, y_size, raw);
  }

  static SingleLetterFunction identity(int x_size, int y_size) {
    std::vector<std::string> raw;
    raw.reserve(static_cast<std::size_t>(x_size) * y_size);
    for (int x = 0; x < x_size; ++x)
      for (int y = 0; y < y_size; ++y)
        raw.push_back("(" + std::to_string(x) + "," + std::to_string(y) + ")");
    return SingleLetterFunction(x_size, y_size, raw);
  }

  static SingleLetterFunction mod_sum(int x_size, int y_size, int modulus) {
    std::vector<int> vals;
    vals.reserve(static_cast<std::size_t>(x_size) * y_size);
    for (int x = 0; x < x_size; ++x)
      for (int y = 0; y < y_size; ++y) vals.push_back((x + y) % modulus);
    return from_values(x_size, y_size, vals);
  }

  int x_size() const { return x_size_; }
  int y_size() const { return y_size_; }
  int z_count() const { return static_cast<int>(labels_.size()); }
  int operator()(int x, int y) const {
    return table_[static_cast<std::size_t>(x) * y_size_ + y];
  }
  const std::string& z_label(int z) const { return labels_[static_cast<std::size_t>(z)]; }
  const std::vector<int>& table() const { return table_; }

 private:
  int x_size_, y_size_;
  std::vector<int> table_;  // row-major in x, dense label ids
  std::vector<std::string> labels_;
};

// A block function f_n: X^n x Y^n -> Z_n.
class VectorFunction {
 public:
  enum class Origin { symbolwise, explicit_table, gfp_mixed };

  static VectorFunction lift_symbolwise(const SingleLetterFunction& f, int n) {
    require(n >= 1, "lift_symbolwise: n must be >= 1");
    VectorFunction fn;
    fn.origin_ = Origin::symbolwise;
    fn.n_ = n;
    fn.x_size_ = f.x_size();
    fn.y_size_ = f.y_size();
    fn.base_ = f;
    return fn;
  }

  // Opaque table on X^n x Y^n, one dense label per pair; row index is the
  // x-word index, column the y-word index.
  static VectorFunction explicit_table(int n, int x_size, int y_size,
                                       const std::vector<std::string>& raw) {
    VectorFunction fn;
    fn.origin_ = Origin::explicit_table;
    fn.n_ = n;
    fn.x_size_ = x_size;
    fn.y_size_ = y_size;
    WordSpace xs{x_size, n}, ys{y_size, n};
    std::uint64_t xc = xs.count(), yc = ys.count();
    require(raw.size() == xc * yc, "explicit_table: needs x_size^n * y_size^n entries");
    std::map<std::string, int> ids;
    fn.table_.resize(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      auto it = ids.find(raw[i]);
      if (it == ids.end()) {
        it = ids.emplace(raw[i], static_cast<int>(fn.labels_.size())).first;
        fn.labels_.push_back(raw[i]);
      }
      fn.table_[i] = it->second;
    }
    fn.y_count_ = yc;
    return fn;
  }

  // First sum_len coordinates are x+y in GF(p), the rest are the raw pairs.
  static VectorFunction gfp_mixed(int n, int x_size, int y_size, int sum_len) {
    require(n >= 1 && sum_len >= 0 && sum_len <= n, "gfp_mixed: bad coordinate split");
    require(x_size >= 1 && y_size >= 1, "gfp_mixed: invalid cardinalities");
    VectorFunction fn;
    fn.origin_ = Origin::gfp_mixed;
    fn.n_ = n;
    fn.x_size_ = x_size;
    fn.y_size_ = y_size;
    fn.sum_len_ = sum_len;
    fn.prime_ = smallest_prime_at_least(x_size + y_size - 1);
    return fn;
  }

  Origin origin() const { return origin_; }
  int n() const { return n_; }
  int x_size() const { return x_size_; }
  int y_size() const { return y_size_; }
  int prime() const { return prime_; }
  int sum_len() const { return sum_len_; }
  const SingleLetterFunction& base() const { return *base_; }
  bool has_base() const { return base_.has_value(); }

  int out_len() const { return origin_ == Origin::explicit_table ? 1 : n_; }

  void eval(const Word& x, const Word& y, ZWord& out) const {
    switch (origin_) {
      case Origin::symbolwise: {
        out.resize(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] = (*base_)(x[i], y[i]);
        return;
      }
      case Origin::explicit_table: {
        WordSpace xs{x_size_, n_}, ys{y_size_, n_};
        out.assign(1, table_[xs.index(x) * y_count_ + ys.index(y)]);
        return;
      }
      case Origin::gfp_mixed: {
        out.resize(static_cast<std::size_t>(n_));
        for (int i = 0; i < sum_len_; ++i)
          out[static_cast<std::size_t>(i)] = (x[i] + y[i]) % prime_;
        for (int i = sum_len_; i < n_; ++i)
          out[static_cast<std::size_t>(i)] = x[i] * y_size_ + y[i];
        return;
      }
    }
  }

  ZWord eval(const Word& x, const Word& y) const {
    ZWord out;
    eval(x, y, out);
    return out;
  }

  // Human-readable rendering of an output tuple.
  std::string format(const ZWord& z) const {
    std::string s = "(";
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (i) s += ",";
      s += coordinate_label(static_cast<int>(i), z[i]);
    }
    s += ")";
    return s;
  }

  std::string coordinate_label(int i, int v) const {
    switch (origin_) {
      case Origin::symbolwise:
        return base_->z_label(v);
      case Origin::explicit_table:
        return labels_[static_cast<std::size_t>(v)];
      case Origin::gfp_mixed:
        if (i < sum_len_) return std::to_string(v);
        return "(" + std::to_string(v / y_size_) + "," + std::to_string(v % y_size_) + ")";
    }
    return std::to_string(v);
  }

 private:
  VectorFunction() = default;

  Origin origin_ = Origin::symbolwise;
  int n_ = 1, x_size_ = 1, y_size_ = 1;
  std::optional<SingleLetterFunction> base_;
  std::vector<int> table_;
  std::vector<std::string> labels_;
  std::uint64_t y_count_ = 0;
  int prime_ = 0, sum_len_ = 0;
};

inline VectorFunction lift_symbolwise(const SingleLetterFunction& f, int n) {
  return VectorFunction::lift_symbolwise(f, n);
}

// Mixed GF(p)-sum / raw-pair block function; the sum part covers the first
// floor(n*rho) coordinates and p is the smallest prime > |X|+|Y|-2.
inline VectorFunction theorem9_function(int x_size, int y_size, int n, double rho) {
  require(rho >= 0.0 && rho <= 1.0, "theorem9_function: rho must lie in [0,1]");
  int sum_len = static_cast<int>(n * rho + 1e-9);
  return VectorFunction::gfp_mixed(n, x_size, y_size, sum_len);
}

inline VectorFunction identity_function(int x_size, int y_size, int n) {
  return lift_symbolwise(SingleLetterFunction::identity(x_size, y_size), n);
}

// Fully materialized block function over the word-index spaces; the working
// representation for every exhaustive check.
struct DenseFunction {
  int n = 1, x_size = 1, y_size = 1;
  WordSpace xs, ys;
  std::uint64_t x_count = 0, y_count = 0;
  std::vector<std::int32_t> z;  // x_idx * y_count + y_idx -> interned id
  std::vector<ZWord> z_values;

  std::int32_t at(std::uint64_t xi, std::uint64_t yi) const { return z[xi * y_count + yi]; }
};

struct ZWordHash {
  std::size_t operator()(const ZWord& z) const {
    std::size_t h = 1469598103934665603ULL;
    for (int v : z) {
      h ^= static_cast<std::size_t>(v) + 0x9E3779B9ULL;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

inline DenseFunction materialize(const VectorFunction& fn,
                                 std::uint64_t budget = kDefaultBudget) {
  DenseFunction d;
  d.n = fn.n();
  d.x_size = fn.x_size();
  d.y_size = fn.y_size();
  d.xs = {fn.x_size(), fn.n()};
  d.ys = {fn.y_size(), fn.n()};
  d.x_count = d.xs.count();
  d.y_count = d.ys.count();
  check_budget(d.x_count * d.y_count, budget, "materialize function table");
  d.z.resize(d.x_count * d.y_count);
  std::unordered_map<ZWord, std::int32_t, ZWordHash> ids;
  Word x, y;
  ZWord out;
  for (std::uint64_t xi = 0; xi < d.x_count; ++xi) {
    d.xs.word_into(xi, x);
    for (std::uint64_t yi = 0; yi < d.y_count; ++yi) {
      d.ys.word_into(yi, y);
      fn.eval(x, y, out);
      auto it = ids.find(out);
      if (it == ids.end()) {
        it = ids.emplace(out, static_cast<std::int32_t>(d.z_values.size())).first;
        d.z_values.push_back(out);
      }
      d.z[xi * d.y_count + yi] = it->second;
    }
  }
  return d;
}

}  // namespace dcomp
