#include <catch2/catch_amalgamated.hpp>

#include "dcomp/eq.hpp"
#include "dcomp/rng.hpp"
#include "dcomp/sensitivity.hpp"

using namespace dcomp;

namespace {

// Independent oracle: maximum subset of a fiber with pairwise-distinct
// coordinates, by exhaustive subset search. Tractable for fibers up to ~12.
std::uint64_t brute_force_eq(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& fiber) {
  std::uint64_t best = 0;
  std::size_t m = fiber.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    std::uint64_t count = __builtin_popcountll(mask);
    if (count <= best) continue;
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      for (std::size_t j = i + 1; j < m && ok; ++j) {
        if (!(mask >> j & 1)) continue;
        if (fiber[i].first == fiber[j].first || fiber[i].second == fiber[j].second) ok = false;
      }
    }
    if (ok) best = count;
  }
  return best;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> fiber_of(const DenseFunction& d,
                                                              std::int32_t zid) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> fiber;
  for (std::uint64_t xi = 0; xi < d.x_count; ++xi)
    for (std::uint64_t yi = 0; yi < d.y_count; ++yi)
      if (d.at(xi, yi) == zid) fiber.push_back({xi, yi});
  return fiber;
}

}  // namespace

TEST_CASE("identity fibers are singletons") {
  VectorFunction id = identity_function(2, 2, 2);
  CHECK(eq_count(id, ZWord{0 * 2 + 1, 1 * 2 + 0}) == 1);
  CHECK(max_eq(id) == 1);
  CHECK(max_eq_rate(id) == 0.0);
}

TEST_CASE("off-image labels count zero") {
  VectorFunction id = identity_function(2, 2, 1);
  CHECK(eq_count(id, ZWord{99}) == 0);
}

TEST_CASE("mod-2 sum fibers match by hand") {
  VectorFunction s1 = lift_symbolwise(SingleLetterFunction::mod_sum(2, 2, 2), 1);
  CHECK(eq_count(s1, ZWord{0}) == 2);  // (0,0) and (1,1)
  VectorFunction s2 = lift_symbolwise(SingleLetterFunction::mod_sum(2, 2, 2), 2);
  CHECK(max_eq(s2) == 4);
  CHECK(max_eq_rate(s2) == Catch::Approx(1.0));
}

TEST_CASE("totally sensitive functions have EQ at most one everywhere") {
  VectorFunction fn =
      lift_symbolwise(SingleLetterFunction::from_values(2, 3, {0, 1, 2, 0, 3, 4}), 2);
  REQUIRE(is_totally_sensitive(fn).totally_sensitive);
  DenseFunction d = materialize(fn);
  for (std::size_t z = 0; z < d.z_values.size(); ++z)
    CHECK(brute_force_eq(fiber_of(d, static_cast<std::int32_t>(z))) <= 1);
  CHECK(max_eq_rate(fn) == 0.0);
}

TEST_CASE("matching equals the subset oracle on random functions") {
  CounterRng rng(77, 3);
  int checked_fibers = 0;
  for (int trial = 0; trial < 250; ++trial) {
    int xs = 1 + rng.below_int(3), ys = 1 + rng.below_int(3);
    int n = 1 + rng.below_int(2);
    int labels = 1 + rng.below_int(4);
    WordSpace xw{xs, n}, yw{ys, n};
    std::vector<std::string> raw;
    for (std::uint64_t i = 0; i < xw.count() * yw.count(); ++i)
      raw.push_back(std::to_string(rng.below_int(labels)));
    VectorFunction fn = VectorFunction::explicit_table(n, xs, ys, raw);
    DenseFunction d = materialize(fn);
    for (std::size_t z = 0; z < d.z_values.size(); ++z) {
      auto fiber = fiber_of(d, static_cast<std::int32_t>(z));
      if (fiber.empty() || fiber.size() > 12) continue;
      ++checked_fibers;
      CHECK(eq_count(fn, d.z_values[z]) == brute_force_eq(fiber));
    }
  }
  CHECK(checked_fibers > 300);
}

TEST_CASE("EQ stays below min of the coordinate counts") {
  CounterRng rng(15, 4);
  for (int trial = 0; trial < 100; ++trial) {
    int xs = 1 + rng.below_int(3), ys = 1 + rng.below_int(3);
    int labels = 1 + rng.below_int(3);
    std::vector<std::string> raw;
    WordSpace xw{xs, 2}, yw{ys, 2};
    for (std::uint64_t i = 0; i < xw.count() * yw.count(); ++i)
      raw.push_back(std::to_string(rng.below_int(labels)));
    VectorFunction fn = VectorFunction::explicit_table(2, xs, ys, raw);
    CHECK(max_eq(fn) <= std::min(xw.count(), yw.count()));
  }
}

TEST_CASE("pure-sum construction reaches EQ = M^n") {
  for (int n : {1, 2, 3}) {
    VectorFunction fn = theorem9_function(2, 2, n, 1.0);
    CHECK(max_eq(fn) == checked_pow(2, n));
    CHECK(max_eq_rate(fn) == Catch::Approx(1.0));
  }
  VectorFunction f33 = theorem9_function(3, 3, 2, 1.0);
  CHECK(max_eq(f33) == 9);
}

TEST_CASE("mixed construction scales EQ with the sum part") {
  VectorFunction fn = theorem9_function(2, 2, 4, 0.5);
  CHECK(max_eq(fn) == 4);  // M^{n rho} = 2^2
  CHECK(max_eq_rate(fn) == Catch::Approx(0.5));
}
