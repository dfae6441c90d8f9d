#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "dcomp/common.hpp"
#include "dcomp/spectral.hpp"

namespace dcomp {

inline constexpr double kRateTolerance = 1e-9;

// {(R1,R2): R1 >= r1_min, R2 >= r2_min, R1+R2 >= sum_min}. Raw constraints
// are preserved; comparisons canonicalize the sum bound.
struct RateRegion {
  double r1_min = 0;
  double r2_min = 0;
  double sum_min = 0;

  double canonical_sum() const { return std::max(sum_min, r1_min + r2_min); }
  double min_sum_rate() const { return canonical_sum(); }

  bool contains(double R1, double R2, double tol = kRateTolerance) const {
    return R1 >= r1_min - tol && R2 >= r2_min - tol && R1 + R2 >= sum_min - tol;
  }

  // Superset relation on canonical forms.
  bool includes(const RateRegion& o, double tol = kRateTolerance) const {
    return r1_min <= o.r1_min + tol && r2_min <= o.r2_min + tol &&
           canonical_sum() <= o.canonical_sum() + tol;
  }

  bool equals(const RateRegion& o, double tol = kRateTolerance) const {
    return includes(o, tol) && o.includes(*this, tol);
  }

  // Corner points of the canonical polyhedron (for plotting); one corner
  // when the sum constraint is inactive, two otherwise.
  std::vector<std::pair<double, double>> corner_points() const {
    double c = canonical_sum();
    if (c <= r1_min + r2_min + kRateTolerance) return {{r1_min, r2_min}};
    return {{r1_min, c - r1_min}, {c - r2_min, r2_min}};
  }
};

inline RateRegion sw_region_fl(const SpectralEntropies& e) {
  return {e.h_x_given_y, e.h_y_given_x, e.h_joint};
}

inline RateRegion sw_region_fl(const SourceModel& src) {
  return sw_region_fl(spectral_entropies(src));
}

inline double sw_rate_full_side(const SourceModel& src) {
  return spectral_entropies(src).h_x_given_y;
}

// Projection of the lambda-parameterized outer bound: individual rates stay
// at the SW constraints, only the sum bound improves, by at most r.
inline RateRegion outer_bound_r_sensitive(const SpectralEntropies& e, double r) {
  require(r >= 0, "outer_bound_r_sensitive: r must be >= 0");
  return {e.h_x_given_y, e.h_y_given_x, e.h_joint - r};
}

struct Theorem9Regions {
  RateRegion inner;
  RateRegion outer;
  double rho = 0;
  double r_bar = 0;
  double epsilon_cost = 0;  // h(eps) + eps log(|X||Y| - M)
};

// Inner (achievable) and outer (SW) regions of the gap construction at
// parameters (r, delta, epsilon).
inline Theorem9Regions theorem9_regions(int x_size, int y_size, double r, double delta,
                                        double epsilon) {
  require(x_size >= 1 && y_size >= 1, "theorem9_regions: invalid cardinalities");
  require(delta > 0, "theorem9_regions: delta must be positive");
  double lx = std::log2(static_cast<double>(x_size));
  double ly = std::log2(static_cast<double>(y_size));
  double r_bar = std::min(lx, ly);
  check_hypothesis(r >= 0 && r <= r_bar + kRateTolerance,
                   "theorem9_regions: r out of range [0, min(log|X|, log|Y|)]");
  double rho = r_bar > 0 ? r / r_bar : 0.0;
  int M = std::min(x_size, y_size);
  int off = x_size * y_size - M;
  double cost = binary_entropy(epsilon) +
                (off > 0 ? epsilon * std::log2(static_cast<double>(off)) : 0.0);
  if (rho > 0)
    check_hypothesis(cost <= delta / rho + kRateTolerance,
                     "theorem9_regions: epsilon too large for the requested delta "
                     "(needs h(eps) + eps log(|X||Y|-M) <= delta/rho)");
  Theorem9Regions t;
  t.rho = rho;
  t.r_bar = r_bar;
  t.epsilon_cost = cost;
  double i1 = delta + (1 - rho) * lx;
  double i2 = delta + (1 - rho) * ly;
  t.inner = {i1, i2, i1 + i2};
  t.outer = {(1 - rho) * lx, (1 - rho) * ly, r - delta + (1 - rho) * (lx + ly)};
  return t;
}

}  // namespace dcomp
