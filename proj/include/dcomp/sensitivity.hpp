#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dcomp/common.hpp"
#include "dcomp/function.hpp"

namespace dcomp {

// A tuple violating one of the sensitivity definitions. `position` is
// 1-based; fields not used by the failed definition stay empty.
struct SensitivityWitness {
  std::string property;  // which check produced it
  Word x, x_hat, y, y_hat;
  int position = 0;
};

struct CheckResult {
  bool holds = true;
  std::optional<SensitivityWitness> witness;
};

namespace detail {

// Role-swappable view over a dense function: side()==0 checks the Y-flip
// definitions, side()==1 the X-flip mirror images.
struct SideView {
  const DenseFunction* f;
  bool swapped;

  std::uint64_t a_count() const { return swapped ? f->y_count : f->x_count; }
  std::uint64_t b_count() const { return swapped ? f->x_count : f->y_count; }
  const WordSpace& a_space() const { return swapped ? f->ys : f->xs; }
  const WordSpace& b_space() const { return swapped ? f->xs : f->ys; }
  std::int32_t at(std::uint64_t a, std::uint64_t b) const {
    return swapped ? f->at(b, a) : f->at(a, b);
  }
};

inline SensitivityWitness make_witness(const std::string& property, const SideView& v,
                                       std::uint64_t a1, std::uint64_t a2, std::uint64_t b,
                                       int pos0, std::uint64_t b_hat, bool has_b_hat) {
  SensitivityWitness w;
  w.property = property;
  Word wa1 = v.a_space().word(a1);
  Word wa2 = v.a_space().word(a2);
  Word wb = v.b_space().word(b);
  Word wbh = has_b_hat ? v.b_space().word(b_hat) : Word{};
  if (!v.swapped) {
    w.x = wa1;
    w.x_hat = wa2;
    w.y = wb;
    w.y_hat = wbh;
  } else {
    w.y = wa1;
    w.y_hat = wa2;
    w.x = wb;
    w.x_hat = wbh;
  }
  w.position = pos0 + 1;
  return w;
}

// Collisions f(a1,b)=f(a2,b) with a1_i != a2_i must be breakable (sensitive:
// some flip of b at i works) or must break under every flip (highly).
inline CheckResult check_conditional(const SideView& v, bool highly, const std::string& name) {
  const int n = v.f->n;
  const WordSpace& as = v.a_space();
  const WordSpace& bs = v.b_space();
  const int b_alpha = bs.alphabet;
  Word wa1, wa2;
  for (std::uint64_t a1 = 0; a1 < v.a_count(); ++a1) {
    as.word_into(a1, wa1);
    for (std::uint64_t a2 = a1 + 1; a2 < v.a_count(); ++a2) {
      as.word_into(a2, wa2);
      for (std::uint64_t b = 0; b < v.b_count(); ++b) {
        if (v.at(a1, b) != v.at(a2, b)) continue;
        for (int i = 0; i < n; ++i) {
          if (wa1[i] == wa2[i]) continue;
          int cur = bs.digit(b, i);
          bool some_break = false;
          bool all_break = true;
          std::uint64_t failing_flip = 0;
          for (int s = 0; s < b_alpha; ++s) {
            if (s == cur) continue;
            std::uint64_t bh = bs.with_digit(b, i, s);
            if (v.at(a1, bh) != v.at(a2, bh)) {
              some_break = true;
              if (!highly) break;
            } else {
              all_break = false;
              failing_flip = bh;
              if (highly) break;
            }
          }
          if (!highly && !some_break)
            return {false, make_witness(name, v, a1, a2, b, i, 0, false)};
          if (highly && !all_break && b_alpha >= 2)
            return {false, make_witness(name, v, a1, a2, b, i, failing_flip, true)};
        }
      }
    }
  }
  return {};
}

}  // namespace detail

inline std::uint64_t conditional_check_work(const DenseFunction& d, bool swapped) {
  std::uint64_t ac = swapped ? d.y_count : d.x_count;
  std::uint64_t bc = swapped ? d.x_count : d.y_count;
  return ac * ac * bc;
}

inline CheckResult is_sensitive_given_y(const DenseFunction& d,
                                        std::uint64_t budget = kDefaultBudget) {
  check_budget(conditional_check_work(d, false), budget, "sensitivity given Y");
  return detail::check_conditional({&d, false}, false, "sensitive_given_Y");
}

inline CheckResult is_sensitive_given_x(const DenseFunction& d,
                                        std::uint64_t budget = kDefaultBudget) {
  check_budget(conditional_check_work(d, true), budget, "sensitivity given X");
  return detail::check_conditional({&d, true}, false, "sensitive_given_X");
}

inline CheckResult is_highly_sensitive_given_y(const DenseFunction& d,
                                               std::uint64_t budget = kDefaultBudget) {
  check_budget(conditional_check_work(d, false), budget, "high sensitivity given Y");
  return detail::check_conditional({&d, false}, true, "highly_sensitive_given_Y");
}

inline CheckResult is_highly_sensitive_given_x(const DenseFunction& d,
                                               std::uint64_t budget = kDefaultBudget) {
  check_budget(conditional_check_work(d, true), budget, "high sensitivity given X");
  return detail::check_conditional({&d, true}, true, "highly_sensitive_given_X");
}

// f(x,y) != f(x',y') whenever x != x' and y != y'. Equivalent per-fiber test:
// every fiber has all first coordinates equal or all second coordinates
// equal.
inline CheckResult is_jointly_sensitive(const DenseFunction& d,
                                        std::uint64_t budget = kDefaultBudget) {
  check_budget(d.x_count * d.y_count, budget, "joint sensitivity");
  struct FiberInfo {
    std::uint64_t x0 = 0, y0 = 0;  // first element seen
    bool same_x = true, same_y = true;
    std::uint64_t wx = 0, wy = 0;  // an element with differing x / differing y
    bool seen = false;
  };
  std::vector<FiberInfo> fibers(d.z_values.size());
  for (std::uint64_t xi = 0; xi < d.x_count; ++xi) {
    for (std::uint64_t yi = 0; yi < d.y_count; ++yi) {
      FiberInfo& fb = fibers[static_cast<std::size_t>(d.at(xi, yi))];
      if (!fb.seen) {
        fb.seen = true;
        fb.x0 = xi;
        fb.y0 = yi;
        continue;
      }
      if (xi != fb.x0 && fb.same_x) {
        fb.same_x = false;
        fb.wx = xi * d.y_count + yi;
      }
      if (yi != fb.y0 && fb.same_y) {
        fb.same_y = false;
        fb.wy = xi * d.y_count + yi;
      }
      if (!fb.same_x && !fb.same_y) {
        // Two elements differing in both coordinates exist in this fiber;
        // reconstruct such a pair.
        std::uint64_t px = fb.wx / d.y_count, py = fb.wx % d.y_count;   // x differs from x0
        std::uint64_t qx = fb.wy / d.y_count, qy = fb.wy % d.y_count;   // y differs from y0
        SensitivityWitness w;
        w.property = "jointly_sensitive";
        if (py != fb.y0) {
          w.x = d.xs.word(fb.x0);
          w.y = d.ys.word(fb.y0);
          w.x_hat = d.xs.word(px);
          w.y_hat = d.ys.word(py);
        } else if (qx != fb.x0) {
          w.x = d.xs.word(fb.x0);
          w.y = d.ys.word(fb.y0);
          w.x_hat = d.xs.word(qx);
          w.y_hat = d.ys.word(qy);
        } else {
          // px shares y0's column value, qx == x0: pair (px,py) with (qx,qy).
          w.x = d.xs.word(px);
          w.y = d.ys.word(py);
          w.x_hat = d.xs.word(qx);
          w.y_hat = d.ys.word(qy);
        }
        return {false, w};
      }
    }
  }
  return {};
}

struct SensitivityReport {
  bool sensitive_given_y = false;
  bool sensitive_given_x = false;
  bool jointly_sensitive = false;
  bool totally_sensitive = false;
  bool highly_sensitive_given_y = false;
  bool highly_sensitive_given_x = false;
  std::vector<SensitivityWitness> witnesses;
};

inline SensitivityReport is_totally_sensitive(const DenseFunction& d,
                                              std::uint64_t budget = kDefaultBudget) {
  SensitivityReport r;
  auto add = [&r](const CheckResult& c) {
    if (!c.holds && c.witness) r.witnesses.push_back(*c.witness);
    return c.holds;
  };
  r.sensitive_given_y = add(is_sensitive_given_y(d, budget));
  r.sensitive_given_x = add(is_sensitive_given_x(d, budget));
  r.jointly_sensitive = add(is_jointly_sensitive(d, budget));
  r.highly_sensitive_given_y = add(is_highly_sensitive_given_y(d, budget));
  r.highly_sensitive_given_x = add(is_highly_sensitive_given_x(d, budget));
  r.totally_sensitive = r.jointly_sensitive && r.sensitive_given_x && r.sensitive_given_y;
  return r;
}

inline SensitivityReport is_totally_sensitive(const VectorFunction& fn,
                                              std::uint64_t budget = kDefaultBudget) {
  return is_totally_sensitive(materialize(fn, budget), budget);
}

inline CheckResult is_sensitive_given_y(const VectorFunction& fn,
                                        std::uint64_t budget = kDefaultBudget) {
  return is_sensitive_given_y(materialize(fn, budget), budget);
}
inline CheckResult is_sensitive_given_x(const VectorFunction& fn,
                                        std::uint64_t budget = kDefaultBudget) {
  return is_sensitive_given_x(materialize(fn, budget), budget);
}
inline CheckResult is_jointly_sensitive(const VectorFunction& fn,
                                        std::uint64_t budget = kDefaultBudget) {
  return is_jointly_sensitive(materialize(fn, budget), budget);
}
inline CheckResult is_highly_sensitive_given_y(const VectorFunction& fn,
                                               std::uint64_t budget = kDefaultBudget) {
  return is_highly_sensitive_given_y(materialize(fn, budget), budget);
}
inline CheckResult is_highly_sensitive_given_x(const VectorFunction& fn,
                                               std::uint64_t budget = kDefaultBudget) {
  return is_highly_sensitive_given_x(materialize(fn, budget), budget);
}

// --- witness re-verification -------------------------------------------

// A sensitivity witness is valid when the collision premise holds and no
// single flip of y at the stated position breaks it.
inline bool verify_sensitivity_witness(const VectorFunction& fn, const SensitivityWitness& w,
                                       bool given_y) {
  const Word& a1 = given_y ? w.x : w.y;
  const Word& a2 = given_y ? w.x_hat : w.y_hat;
  const Word& b = given_y ? w.y : w.x;
  int i = w.position - 1;
  auto value = [&](const Word& av, const Word& bv) {
    return given_y ? fn.eval(av, bv) : fn.eval(bv, av);
  };
  if (value(a1, b) != value(a2, b)) return false;
  if (a1[static_cast<std::size_t>(i)] == a2[static_cast<std::size_t>(i)]) return false;
  int alpha = given_y ? fn.y_size() : fn.x_size();
  Word bh = b;
  for (int s = 0; s < alpha; ++s) {
    if (s == b[static_cast<std::size_t>(i)]) continue;
    bh[static_cast<std::size_t>(i)] = s;
    if (value(a1, bh) != value(a2, bh)) return false;
  }
  return true;
}

inline bool verify_joint_witness(const VectorFunction& fn, const SensitivityWitness& w) {
  return w.x != w.x_hat && w.y != w.y_hat && fn.eval(w.x, w.y) == fn.eval(w.x_hat, w.y_hat);
}

// A high-sensitivity witness carries the specific flip that fails to break
// the collision.
inline bool verify_high_sensitivity_witness(const VectorFunction& fn,
                                            const SensitivityWitness& w, bool given_y) {
  const Word& a1 = given_y ? w.x : w.y;
  const Word& a2 = given_y ? w.x_hat : w.y_hat;
  const Word& b = given_y ? w.y : w.x;
  const Word& bh = given_y ? w.y_hat : w.x_hat;
  int i = w.position - 1;
  auto value = [&](const Word& av, const Word& bv) {
    return given_y ? fn.eval(av, bv) : fn.eval(bv, av);
  };
  if (a1[static_cast<std::size_t>(i)] == a2[static_cast<std::size_t>(i)]) return false;
  if (bh[static_cast<std::size_t>(i)] == b[static_cast<std::size_t>(i)]) return false;
  for (std::size_t j = 0; j < b.size(); ++j)
    if (j != static_cast<std::size_t>(i) && b[j] != bh[j]) return false;
  return value(a1, b) == value(a2, b) && value(a1, bh) == value(a2, bh);
}

// --- single-letter classes ----------------------------------------------

struct HkWitness {
  int a1 = -1, a2 = -1, b1 = -1, b2 = -1;
};

struct HkResult {
  bool is_hk = false;
  int violated_condition = 0;  // 1, 2, or 3; 0 when none
  HkWitness witness;
};

// Conditions: 1) rows pairwise distinct as functions of y, 2) columns
// pairwise distinct, 3) no collision with both coordinates differing.
inline HkResult is_hk(const SingleLetterFunction& f) {
  HkResult r;
  for (int a1 = 0; a1 < f.x_size(); ++a1)
    for (int a2 = a1 + 1; a2 < f.x_size(); ++a2) {
      bool same = true;
      for (int b = 0; b < f.y_size() && same; ++b) same = f(a1, b) == f(a2, b);
      if (same) {
        r.violated_condition = 1;
        r.witness = {a1, a2, -1, -1};
        return r;
      }
    }
  for (int b1 = 0; b1 < f.y_size(); ++b1)
    for (int b2 = b1 + 1; b2 < f.y_size(); ++b2) {
      bool same = true;
      for (int a = 0; a < f.x_size() && same; ++a) same = f(a, b1) == f(a, b2);
      if (same) {
        r.violated_condition = 2;
        r.witness = {-1, -1, b1, b2};
        return r;
      }
    }
  for (int a1 = 0; a1 < f.x_size(); ++a1)
    for (int a2 = 0; a2 < f.x_size(); ++a2) {
      if (a1 == a2) continue;
      for (int b1 = 0; b1 < f.y_size(); ++b1)
        for (int b2 = 0; b2 < f.y_size(); ++b2) {
          if (b1 == b2) continue;
          if (f(a1, b1) == f(a2, b2)) {
            r.violated_condition = 3;
            r.witness = {a1, a2, b1, b2};
            return r;
          }
        }
    }
  r.is_hk = true;
  return r;
}

struct SymbolwiseClassification {
  bool totally_sensitive = false;
  bool property1 = false;  // every row x -> f(x,.) injective in y
  bool property2 = false;  // every column y -> f(.,y) injective in x
  HkResult hk;
};

// Single-letter criterion: the lifts (n >= 2) are totally sensitive iff f is
// HK and at least one of the two injectivity properties holds.
inline SymbolwiseClassification symbolwise_totally_sensitive(const SingleLetterFunction& f) {
  SymbolwiseClassification c;
  c.hk = is_hk(f);
  c.property1 = true;
  for (int x = 0; x < f.x_size() && c.property1; ++x)
    for (int b1 = 0; b1 < f.y_size() && c.property1; ++b1)
      for (int b2 = b1 + 1; b2 < f.y_size() && c.property1; ++b2)
        if (f(x, b1) == f(x, b2)) c.property1 = false;
  c.property2 = true;
  for (int y = 0; y < f.y_size() && c.property2; ++y)
    for (int a1 = 0; a1 < f.x_size() && c.property2; ++a1)
      for (int a2 = a1 + 1; a2 < f.x_size() && c.property2; ++a2)
        if (f(a1, y) == f(a2, y)) c.property2 = false;
  c.totally_sensitive = c.hk.is_hk && (c.property1 || c.property2);
  return c;
}

struct Quadruple {
  Word x2, x_hat2, y2, y_hat2;
  ZWord f2_value;  // common value of f_2 on both pairs
};

// For an HK function failing both injectivity properties, a length-2
// counterexample to joint sensitivity. The first coordinate carries the
// column collision (a1,a2 at b0), the second the row collision (b1,b2 at
// a0).
inline Quadruple counterexample_quadruple(const SingleLetterFunction& f) {
  SymbolwiseClassification c = symbolwise_totally_sensitive(f);
  check_hypothesis(c.hk.is_hk,
                   "counterexample_quadruple: function is not an HK function");
  check_hypothesis(!c.property1 && !c.property2,
                   "counterexample_quadruple: function satisfies an injectivity property, "
                   "so its lifts are totally sensitive");
  int a0 = -1, b1 = -1, b2 = -1;
  for (int x = 0; x < f.x_size() && a0 < 0; ++x)
    for (int u = 0; u < f.y_size() && a0 < 0; ++u)
      for (int v = u + 1; v < f.y_size() && a0 < 0; ++v)
        if (f(x, u) == f(x, v)) {
          a0 = x;
          b1 = u;
          b2 = v;
        }
  int b0 = -1, a1 = -1, a2 = -1;
  for (int y = 0; y < f.y_size() && b0 < 0; ++y)
    for (int u = 0; u < f.x_size() && b0 < 0; ++u)
      for (int v = u + 1; v < f.x_size() && b0 < 0; ++v)
        if (f(u, y) == f(v, y)) {
          b0 = y;
          a1 = u;
          a2 = v;
        }
  Quadruple q;
  q.x2 = {a1, a0};
  q.x_hat2 = {a2, a0};
  q.y2 = {b0, b1};
  q.y_hat2 = {b0, b2};
  q.f2_value = {f(a1, b0), f(a0, b1)};
  VectorFunction f2 = lift_symbolwise(f, 2);
  require(q.x2 != q.x_hat2 && q.y2 != q.y_hat2 && f2.eval(q.x2, q.y2) == q.f2_value &&
              f2.eval(q.x_hat2, q.y_hat2) == q.f2_value,
          "counterexample_quadruple: internal verification failed");
  return q;
}

}  // namespace dcomp
