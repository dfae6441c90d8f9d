#pragma once

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "dcomp/common.hpp"
#include "dcomp/function.hpp"
#include "dcomp/matching.hpp"

namespace dcomp {

namespace detail {

// Matching number of one fiber given as (x index, y index) pairs.
inline std::uint64_t fiber_matching(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& edges) {
  std::unordered_map<std::uint64_t, int> xs, ys;
  for (const auto& e : edges) {
    xs.emplace(e.first, static_cast<int>(xs.size()));
    ys.emplace(e.second, static_cast<int>(ys.size()));
  }
  BipartiteMatcher m(static_cast<int>(xs.size()), static_cast<int>(ys.size()));
  for (const auto& e : edges) m.add_edge(xs[e.first], ys[e.second]);
  return static_cast<std::uint64_t>(m.max_matching());
}

inline std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> fibers_of(
    const DenseFunction& d) {
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> fibers(d.z_values.size());
  for (std::uint64_t xi = 0; xi < d.x_count; ++xi)
    for (std::uint64_t yi = 0; yi < d.y_count; ++yi)
      fibers[static_cast<std::size_t>(d.at(xi, yi))].push_back({xi, yi});
  return fibers;
}

}  // namespace detail

// Maximum number of pairs in the fiber of z with pairwise distinct first and
// second coordinates: a maximum bipartite matching. Returns 0 for z outside
// the image.
inline std::uint64_t eq_count(const VectorFunction& fn, const ZWord& z,
                              std::uint64_t budget = kDefaultBudget) {
  DenseFunction d = materialize(fn, budget);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  for (std::uint64_t xi = 0; xi < d.x_count; ++xi)
    for (std::uint64_t yi = 0; yi < d.y_count; ++yi)
      if (d.z_values[static_cast<std::size_t>(d.at(xi, yi))] == z) edges.push_back({xi, yi});
  return detail::fiber_matching(edges);
}

inline std::uint64_t max_eq(const DenseFunction& d) {
  std::uint64_t best = 0;
  for (const auto& fiber : detail::fibers_of(d)) {
    std::uint64_t m = detail::fiber_matching(fiber);
    if (m > best) best = m;
  }
  return best;
}

inline std::uint64_t max_eq(const VectorFunction& fn, std::uint64_t budget = kDefaultBudget) {
  return max_eq(materialize(fn, budget));
}

// (1/n) log2 max_z EQ(z|f_n), the finite-n surrogate of the growth rate.
inline double max_eq_rate(const VectorFunction& fn, std::uint64_t budget = kDefaultBudget) {
  std::uint64_t m = max_eq(fn, budget);
  return std::log2(static_cast<double>(m)) / fn.n();
}

}  // namespace dcomp
