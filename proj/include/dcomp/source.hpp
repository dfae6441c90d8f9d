#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "dcomp/common.hpp"
#include "dcomp/function.hpp"
#include "dcomp/rng.hpp"
#include "dcomp/sensitivity.hpp"
#include "dcomp/words.hpp"

namespace dcomp {

inline constexpr double kPmfTolerance = 1e-12;

namespace detail {
inline void check_pmf(const std::vector<double>& p, const std::string& what) {
  double s = 0;
  for (double v : p) {
    require(v >= 0.0, what + ": negative probability");
    s += v;
  }
  require(std::abs(s - 1.0) <= 1e-9 * p.size() + kPmfTolerance, what + ": does not sum to 1");
}
}  // namespace detail

// A finite-alphabet joint source with exact block pmf evaluation.
class SourceModel {
 public:
  enum class Kind { iid, markov, mixture, two_symbolwise_iid, theorem9 };

  static SourceModel iid(int x_size, int y_size, std::vector<double> joint) {
    SourceModel m(Kind::iid, x_size, y_size);
    require(joint.size() == static_cast<std::size_t>(x_size) * y_size,
            "iid source: joint table must have x_size*y_size entries");
    detail::check_pmf(joint, "iid source");
    m.joint_ = std::move(joint);
    return m;
  }

  // States are joint symbols s = x*y_size + y; transition is row-major
  // W(s' | s) over S x S.
  static SourceModel markov(int x_size, int y_size, std::vector<double> transition,
                            std::vector<double> initial) {
    SourceModel m(Kind::markov, x_size, y_size);
    std::size_t s = static_cast<std::size_t>(x_size) * y_size;
    require(transition.size() == s * s, "markov source: transition must be SxS");
    require(initial.size() == s, "markov source: initial must have S entries");
    detail::check_pmf(initial, "markov initial distribution");
    for (std::size_t r = 0; r < s; ++r)
      detail::check_pmf(std::vector<double>(transition.begin() + static_cast<long>(r * s),
                                            transition.begin() + static_cast<long>((r + 1) * s)),
                        "markov transition row");
    m.trans_ = std::move(transition);
    m.init_ = std::move(initial);
    return m;
  }

  static SourceModel mixture(std::vector<SourceModel> components, std::vector<double> weights) {
    require(!components.empty() && components.size() == weights.size(),
            "mixture source: components and weights must match and be nonempty");
    SourceModel m(Kind::mixture, components[0].x_size(), components[0].y_size());
    double s = 0;
    for (double w : weights) {
      require(w > 0.0, "mixture source: weights must be positive");
      s += w;
    }
    require(std::abs(s - 1.0) <= 1e-9, "mixture source: weights must sum to 1");
    for (const SourceModel& c : components)
      require(c.x_size() == m.x_size_ && c.y_size() == m.y_size_,
              "mixture source: component alphabets must agree");
    m.components_ = std::move(components);
    m.weights_ = std::move(weights);
    return m;
  }

  // Joint table on super-symbols (u,v) with u = x1*x_size + x2 and
  // v = y1*y_size + y2; defined for even block lengths.
  static SourceModel two_symbolwise(int x_size, int y_size, std::vector<double> joint2) {
    SourceModel m(Kind::two_symbolwise_iid, x_size, y_size);
    std::size_t u = static_cast<std::size_t>(x_size) * x_size;
    std::size_t v = static_cast<std::size_t>(y_size) * y_size;
    require(joint2.size() == u * v, "two_symbolwise source: table must be |X|^2 x |Y|^2");
    detail::check_pmf(joint2, "two_symbolwise source");
    m.joint2_ = std::move(joint2);
    return m;
  }

  // First floor(n*rho) symbols i.i.d. with mass (1-eps)/M on the
  // anti-diagonal {(i, M-1-i)} and eps spread uniformly elsewhere; the tail
  // i.i.d. uniform on X x Y.
  static SourceModel theorem9(int x_size, int y_size, double rho, double eps) {
    SourceModel m(Kind::theorem9, x_size, y_size);
    require(rho >= 0.0 && rho <= 1.0, "theorem9 source: rho must lie in [0,1]");
    require(eps >= 0.0 && eps < 1.0, "theorem9 source: eps must lie in [0,1)");
    int M = std::min(x_size, y_size);
    int off = x_size * y_size - M;
    require(off > 0 || eps == 0.0, "theorem9 source: eps>0 needs off-diagonal pairs");
    m.rho_ = rho;
    m.eps_ = eps;
    m.joint_.assign(static_cast<std::size_t>(x_size) * y_size,
                    off > 0 ? eps / off : 0.0);
    for (int i = 0; i < M; ++i)
      m.joint_[static_cast<std::size_t>(i) * y_size + (M - 1 - i)] = (1.0 - eps) / M;
    return m;
  }

  Kind kind() const { return kind_; }
  int x_size() const { return x_size_; }
  int y_size() const { return y_size_; }
  double rho() const { return rho_; }
  double eps() const { return eps_; }
  const std::vector<double>& joint() const { return joint_; }
  const std::vector<double>& joint2() const { return joint2_; }
  const std::vector<double>& transition() const { return trans_; }
  const std::vector<double>& initial() const { return init_; }
  const std::vector<SourceModel>& components() const { return components_; }
  const std::vector<double>& weights() const { return weights_; }

  int sum_len(int n) const { return static_cast<int>(n * rho_ + 1e-9); }

  void validate_block(int n) const {
    require(n >= 1, "block length must be >= 1");
    if (kind_ == Kind::two_symbolwise_iid)
      require(n % 2 == 0, "two_symbolwise source: block length must be even");
  }

  double block_pmf(const Word& x, const Word& y) const {
    require(x.size() == y.size() && !x.empty(), "block_pmf: length mismatch");
    int n = static_cast<int>(x.size());
    validate_block(n);
    for (Symbol s : x) require(s >= 0 && s < x_size_, "block_pmf: x symbol out of alphabet");
    for (Symbol s : y) require(s >= 0 && s < y_size_, "block_pmf: y symbol out of alphabet");
    switch (kind_) {
      case Kind::iid: {
        double p = 1;
        for (int i = 0; i < n; ++i) p *= joint_[static_cast<std::size_t>(x[i]) * y_size_ + y[i]];
        return p;
      }
      case Kind::markov: {
        int s = x_size_ * y_size_;
        int cur = x[0] * y_size_ + y[0];
        double p = init_[static_cast<std::size_t>(cur)];
        for (int i = 1; i < n; ++i) {
          int nxt = x[i] * y_size_ + y[i];
          p *= trans_[static_cast<std::size_t>(cur) * s + nxt];
          cur = nxt;
        }
        return p;
      }
      case Kind::mixture: {
        double p = 0;
        for (std::size_t i = 0; i < components_.size(); ++i)
          p += weights_[i] * components_[i].block_pmf(x, y);
        return p;
      }
      case Kind::two_symbolwise_iid: {
        double p = 1;
        std::size_t vdim = static_cast<std::size_t>(y_size_) * y_size_;
        for (int i = 0; i < n; i += 2) {
          int u = x[i] * x_size_ + x[i + 1];
          int v = y[i] * y_size_ + y[i + 1];
          p *= joint2_[static_cast<std::size_t>(u) * vdim + v];
        }
        return p;
      }
      case Kind::theorem9: {
        int m = sum_len(n);
        double p = 1;
        for (int i = 0; i < m; ++i) p *= joint_[static_cast<std::size_t>(x[i]) * y_size_ + y[i]];
        double u = 1.0 / (static_cast<double>(x_size_) * y_size_);
        for (int i = m; i < n; ++i) p *= u;
        return p;
      }
    }
    return 0;
  }

  double x_marginal(const Word& x) const { return side_marginal(x, true); }
  double y_marginal(const Word& y) const { return side_marginal(y, false); }

  void sample(int n, CounterRng& rng, Word& x, Word& y) const {
    validate_block(n);
    x.resize(static_cast<std::size_t>(n));
    y.resize(static_cast<std::size_t>(n));
    switch (kind_) {
      case Kind::iid: {
        for (int i = 0; i < n; ++i) {
          int s = rng.categorical(joint_);
          x[static_cast<std::size_t>(i)] = s / y_size_;
          y[static_cast<std::size_t>(i)] = s % y_size_;
        }
        return;
      }
      case Kind::markov: {
        int s = x_size_ * y_size_;
        int cur = rng.categorical(init_);
        x[0] = cur / y_size_;
        y[0] = cur % y_size_;
        for (int i = 1; i < n; ++i) {
          std::vector<double> row(trans_.begin() + static_cast<long>(cur) * s,
                                  trans_.begin() + static_cast<long>(cur + 1) * s);
          cur = rng.categorical(row);
          x[static_cast<std::size_t>(i)] = cur / y_size_;
          y[static_cast<std::size_t>(i)] = cur % y_size_;
        }
        return;
      }
      case Kind::mixture: {
        // One component drawn per block: mixing is over sources.
        int c = rng.categorical(weights_);
        components_[static_cast<std::size_t>(c)].sample(n, rng, x, y);
        return;
      }
      case Kind::two_symbolwise_iid: {
        std::size_t vdim = static_cast<std::size_t>(y_size_) * y_size_;
        for (int i = 0; i < n; i += 2) {
          int s = rng.categorical(joint2_);
          int u = s / static_cast<int>(vdim);
          int v = s % static_cast<int>(vdim);
          x[static_cast<std::size_t>(i)] = u / x_size_;
          x[static_cast<std::size_t>(i + 1)] = u % x_size_;
          y[static_cast<std::size_t>(i)] = v / y_size_;
          y[static_cast<std::size_t>(i + 1)] = v % y_size_;
        }
        return;
      }
      case Kind::theorem9: {
        int m = sum_len(n);
        for (int i = 0; i < m; ++i) {
          int s = rng.categorical(joint_);
          x[static_cast<std::size_t>(i)] = s / y_size_;
          y[static_cast<std::size_t>(i)] = s % y_size_;
        }
        for (int i = m; i < n; ++i) {
          x[static_cast<std::size_t>(i)] = rng.below_int(x_size_);
          y[static_cast<std::size_t>(i)] = rng.below_int(y_size_);
        }
        return;
      }
    }
  }

  // The source with the roles of X and Y exchanged.
  SourceModel transposed() const {
    switch (kind_) {
      case Kind::iid: {
        std::vector<double> t(joint_.size());
        for (int a = 0; a < x_size_; ++a)
          for (int b = 0; b < y_size_; ++b)
            t[static_cast<std::size_t>(b) * x_size_ + a] =
                joint_[static_cast<std::size_t>(a) * y_size_ + b];
        return iid(y_size_, x_size_, std::move(t));
      }
      case Kind::markov: {
        int s = x_size_ * y_size_;
        auto flip = [this](int st) {
          return (st % y_size_) * x_size_ + st / y_size_;
        };
        std::vector<double> t(trans_.size()), in(init_.size());
        for (int a = 0; a < s; ++a) {
          in[static_cast<std::size_t>(flip(a))] = init_[static_cast<std::size_t>(a)];
          for (int b = 0; b < s; ++b)
            t[static_cast<std::size_t>(flip(a)) * s + flip(b)] =
                trans_[static_cast<std::size_t>(a) * s + b];
        }
        return markov(y_size_, x_size_, std::move(t), std::move(in));
      }
      case Kind::mixture: {
        std::vector<SourceModel> comps;
        comps.reserve(components_.size());
        for (const SourceModel& c : components_) comps.push_back(c.transposed());
        return mixture(std::move(comps), weights_);
      }
      case Kind::two_symbolwise_iid: {
        std::size_t udim = static_cast<std::size_t>(x_size_) * x_size_;
        std::size_t vdim = static_cast<std::size_t>(y_size_) * y_size_;
        std::vector<double> t(joint2_.size());
        for (std::size_t u = 0; u < udim; ++u)
          for (std::size_t v = 0; v < vdim; ++v) t[v * udim + u] = joint2_[u * vdim + v];
        return two_symbolwise(y_size_, x_size_, std::move(t));
      }
      case Kind::theorem9: {
        // Q is symmetric under (x,y) -> (y,x) only when |X| == |Y|.
        require(x_size_ == y_size_, "theorem9 source: transpose needs |X| == |Y|");
        return theorem9(y_size_, x_size_, rho_, eps_);
      }
    }
    throw std::logic_error("unreachable");
  }

 private:
  SourceModel(Kind k, int x_size, int y_size) : kind_(k), x_size_(x_size), y_size_(y_size) {
    require(x_size >= 1 && y_size >= 1, "source: alphabet sizes must be >= 1");
  }

  double side_marginal(const Word& w, bool x_side) const {
    int n = static_cast<int>(w.size());
    validate_block(n);
    switch (kind_) {
      case Kind::iid: {
        double p = 1;
        for (int i = 0; i < n; ++i) p *= iid_side(w[static_cast<std::size_t>(i)], x_side, joint_);
        return p;
      }
      case Kind::markov: {
        // Forward sum over the hidden side.
        int s = x_size_ * y_size_;
        int hidden = x_side ? y_size_ : x_size_;
        auto state = [&](int h, int o) { return x_side ? o * y_size_ + h : h * y_size_ + o; };
        std::vector<double> alpha(static_cast<std::size_t>(hidden));
        for (int h = 0; h < hidden; ++h)
          alpha[static_cast<std::size_t>(h)] = init_[static_cast<std::size_t>(state(h, w[0]))];
        std::vector<double> next(static_cast<std::size_t>(hidden));
        for (int i = 1; i < n; ++i) {
          for (int h2 = 0; h2 < hidden; ++h2) {
            double acc = 0;
            int st2 = state(h2, w[static_cast<std::size_t>(i)]);
            for (int h1 = 0; h1 < hidden; ++h1) {
              int st1 = state(h1, w[static_cast<std::size_t>(i - 1)]);
              acc += alpha[static_cast<std::size_t>(h1)] *
                     trans_[static_cast<std::size_t>(st1) * s + st2];
            }
            next[static_cast<std::size_t>(h2)] = acc;
          }
          alpha.swap(next);
        }
        double p = 0;
        for (double v : alpha) p += v;
        return p;
      }
      case Kind::mixture: {
        double p = 0;
        for (std::size_t i = 0; i < components_.size(); ++i)
          p += weights_[i] * components_[i].side_marginal(w, x_side);
        return p;
      }
      case Kind::two_symbolwise_iid: {
        int own = x_side ? x_size_ : y_size_;
        int other = x_side ? y_size_ : x_size_;
        std::size_t odim = static_cast<std::size_t>(other) * other;
        std::size_t vdim = static_cast<std::size_t>(y_size_) * y_size_;
        double p = 1;
        for (int i = 0; i < n; i += 2) {
          int mine = w[static_cast<std::size_t>(i)] * own + w[static_cast<std::size_t>(i + 1)];
          double m = 0;
          for (std::size_t o = 0; o < odim; ++o)
            m += x_side ? joint2_[static_cast<std::size_t>(mine) * vdim + o]
                        : joint2_[o * vdim + static_cast<std::size_t>(mine)];
          p *= m;
        }
        return p;
      }
      case Kind::theorem9: {
        int m = sum_len(n);
        double p = 1;
        for (int i = 0; i < m; ++i) p *= iid_side(w[static_cast<std::size_t>(i)], x_side, joint_);
        double u = 1.0 / (x_side ? x_size_ : y_size_);
        for (int i = m; i < n; ++i) p *= u;
        return p;
      }
    }
    return 0;
  }

  double iid_side(int sym, bool x_side, const std::vector<double>& joint) const {
    double p = 0;
    if (x_side) {
      for (int b = 0; b < y_size_; ++b) p += joint[static_cast<std::size_t>(sym) * y_size_ + b];
    } else {
      for (int a = 0; a < x_size_; ++a) p += joint[static_cast<std::size_t>(a) * y_size_ + sym];
    }
    return p;
  }

  Kind kind_;
  int x_size_, y_size_;
  std::vector<double> joint_;
  std::vector<double> trans_, init_;
  std::vector<SourceModel> components_;
  std::vector<double> weights_;
  std::vector<double> joint2_;
  double rho_ = 0, eps_ = 0;
};

inline const char* kind_name(SourceModel::Kind k) {
  switch (k) {
    case SourceModel::Kind::iid: return "iid";
    case SourceModel::Kind::markov: return "markov";
    case SourceModel::Kind::mixture: return "mixture";
    case SourceModel::Kind::two_symbolwise_iid: return "two_symbolwise_iid";
    case SourceModel::Kind::theorem9: return "theorem9";
  }
  return "?";
}

// --- two-symbol-wise counterexample machinery -----------------------------

// Super-alphabet view induced by an HK function that fails both injectivity
// properties: g(u,v) = f_2(u,v) on U = X^2, V = Y^2 violates the no-diagonal-
// collision condition at the quadruple, so any strictly positive P_UV yields
// a smooth two-symbol-wise source whose region beats the SW region.
struct TwoSymbolwiseTemplate {
  SingleLetterFunction g;
  int u_of_x2, u_of_x_hat2, v_of_y2, v_of_y_hat2;

  SourceModel with(std::vector<double> p_uv, int x_size, int y_size) const {
    return SourceModel::two_symbolwise(x_size, y_size, std::move(p_uv));
  }
};

inline TwoSymbolwiseTemplate two_symbolwise_from_function(const SingleLetterFunction& f,
                                                          const Quadruple& q) {
  VectorFunction f2 = lift_symbolwise(f, 2);
  check_hypothesis(q.x2 != q.x_hat2 && q.y2 != q.y_hat2 &&
                       f2.eval(q.x2, q.y2) == f2.eval(q.x_hat2, q.y_hat2),
                   "two_symbolwise_from_function: quadruple is not a joint-sensitivity "
                   "counterexample");
  int xs = f.x_size(), ys = f.y_size();
  std::vector<std::string> raw;
  raw.reserve(static_cast<std::size_t>(xs) * xs * ys * ys);
  Word xw(2), yw(2);
  ZWord out;
  for (int u = 0; u < xs * xs; ++u) {
    xw[0] = u / xs;
    xw[1] = u % xs;
    for (int v = 0; v < ys * ys; ++v) {
      yw[0] = v / ys;
      yw[1] = v % ys;
      f2.eval(xw, yw, out);
      raw.push_back(f2.format(out));
    }
  }
  TwoSymbolwiseTemplate t{SingleLetterFunction(xs * xs, ys * ys, raw),
                          q.x2[0] * xs + q.x2[1], q.x_hat2[0] * xs + q.x_hat2[1],
                          q.y2[0] * ys + q.y2[1], q.y_hat2[0] * ys + q.y_hat2[1]};
  // g inherits the collision with both super-coordinates differing.
  require(t.g(t.u_of_x2, t.v_of_y2) == t.g(t.u_of_x_hat2, t.v_of_y_hat2) &&
              t.u_of_x2 != t.u_of_x_hat2 && t.v_of_y2 != t.v_of_y_hat2,
          "two_symbolwise_from_function: induced function unexpectedly HK");
  return t;
}

// Uniform strictly positive completion of the counterexample source.
inline SourceModel uniform_two_symbolwise(int x_size, int y_size) {
  std::size_t cells = static_cast<std::size_t>(x_size) * x_size * y_size * y_size;
  return SourceModel::two_symbolwise(
      x_size, y_size, std::vector<double>(cells, 1.0 / static_cast<double>(cells)));
}

}  // namespace dcomp
