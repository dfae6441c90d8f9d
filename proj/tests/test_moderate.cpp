#include <catch2/catch_amalgamated.hpp>

#include "dcomp/moderate.hpp"
#include "dcomp/rng.hpp"

using namespace dcomp;

namespace {
SourceModel dsbs(double crossover) {
  double c = crossover / 2, d = (1 - crossover) / 2;
  return SourceModel::iid(2, 2, {d, c, c, d});
}
}  // namespace

TEST_CASE("schedule cap: v_n(1/n) is the empty sum") {
  for (int n : {4, 8, 16, 32, 64}) {
    double v = v_n(1.0 / n, n, 2);
    CHECK(v == 0.0);
    CHECK(v <= 16.0 * 2 * n * n * n);
  }
}

TEST_CASE("the cubic cap also covers slightly wider windows") {
  // beta = 2/n keeps one binomial term; still far below 16 |X| n^3
  for (int n : {8, 16, 32, 64}) {
    double v = v_n(2.0 / n, n, 2);
    CHECK(v == Catch::Approx(static_cast<double>(n)));
    CHECK(v <= 16.0 * 2 * n * n * n);
  }
}

TEST_CASE("full-side function code decodes the function, not the pair") {
  SourceModel src = dsbs(0.1);
  VectorFunction fn = lift_symbolwise(SingleLetterFunction::mod_sum(2, 2, 2), 4);
  auto code = fullside_function_code(fn, src, 5, 3);
  double err = error_probability_exact(*code, src, fn);
  CHECK(err < 0.5);
  // more bits help
  auto wide = fullside_function_code(fn, src, 8, 3);
  CHECK(error_probability_exact(*wide, src, fn) <= err + 1e-12);
}

TEST_CASE("moderate-deviation schedule rows verify the surrogates") {
  SourceModel src = dsbs(0.1);
  SingleLetterFunction f = SingleLetterFunction::mod_sum(2, 2, 2);
  double t = 0.25, gamma = 1.0;
  auto rows = moderate_deviation_run(src, f, t, gamma, {4, 6, 8}, 11);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    CHECK(row.ok_vn);
    CHECK(row.ok_length);
    CHECK(row.vn <= row.vn_bound);
    CHECK(row.surrogate_excess_norm <= gamma + 0.1);
    CHECK(row.error_bound_rhs > 0.0);
  }
  // the raw normalized excess drifts down across the schedule
  CHECK(rows[1].raw_excess_norm <= rows[0].raw_excess_norm + 1e-9);
  CHECK(rows[2].raw_excess_norm <= rows[1].raw_excess_norm + 1e-9);
}

TEST_CASE("identity input reduces to the plain SW transformation") {
  SourceModel src = dsbs(0.2);
  SingleLetterFunction id = SingleLetterFunction::identity(2, 2);
  auto rows = moderate_deviation_run(src, id, 0.25, 1.0, {4, 6}, 5);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK(row.ok_vn);
    CHECK(row.ok_length);
    CHECK(row.surrogate_excess_norm <= 1.0 + 0.1);
  }
}

TEST_CASE("schedule gates") {
  SourceModel src = dsbs(0.1);
  SingleLetterFunction f = SingleLetterFunction::mod_sum(2, 2, 2);
  CHECK_THROWS_AS(moderate_deviation_run(src, f, 0.75, 1.0, {4}, 1), precondition_error);
  SourceModel zero = SourceModel::iid(2, 2, {0.5, 0.0, 0.0, 0.5});
  CHECK_THROWS_AS(moderate_deviation_run(zero, f, 0.25, 1.0, {4}, 1), precondition_error);
  SourceModel t9 = SourceModel::theorem9(2, 2, 0.5, 0.1);
  CHECK_THROWS_AS(moderate_deviation_run(t9, f, 0.25, 1.0, {4}, 1), precondition_error);
}
