#include <catch2/catch_amalgamated.hpp>

#include "dcomp/rng.hpp"
#include "dcomp/sensitivity.hpp"

using namespace dcomp;

namespace {

SingleLetterFunction table1() {
  return SingleLetterFunction::from_values(2, 3, {0, 1, 2, 0, 3, 3});
}
SingleLetterFunction table2() {
  return SingleLetterFunction::from_values(2, 3, {0, 1, 2, 0, 3, 4});
}
SingleLetterFunction table3() {
  return SingleLetterFunction::from_values(2, 3, {0, 1, 2, 3, 3, 3});
}

SingleLetterFunction random_table(CounterRng& rng, int max_side = 3, int max_labels = 5) {
  int xs = 1 + rng.below_int(max_side);
  int ys = 1 + rng.below_int(max_side);
  int labels = 1 + rng.below_int(max_labels);
  std::vector<int> vals(static_cast<std::size_t>(xs) * ys);
  for (int& v : vals) v = rng.below_int(labels);
  return SingleLetterFunction::from_values(xs, ys, vals);
}

// Joint-type block function on X^n x Y^n: output = the empirical joint type.
VectorFunction joint_type_function(int x_size, int y_size, int n) {
  WordSpace xs{x_size, n}, ys{y_size, n};
  std::vector<std::string> raw;
  raw.reserve(xs.count() * ys.count());
  for (std::uint64_t xi = 0; xi < xs.count(); ++xi) {
    Word x = xs.word(xi);
    for (std::uint64_t yi = 0; yi < ys.count(); ++yi) {
      Word y = ys.word(yi);
      std::vector<int> counts(static_cast<std::size_t>(x_size) * y_size, 0);
      for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(x[i]) * y_size + y[i]];
      std::string label;
      for (int c : counts) label += std::to_string(c) + ".";
      raw.push_back(label);
    }
  }
  return VectorFunction::explicit_table(n, x_size, y_size, raw);
}

}  // namespace

TEST_CASE("identity is sensitive both ways (vacuous premise)") {
  for (int n : {1, 2}) {
    VectorFunction id = identity_function(2, 2, n);
    CHECK(is_sensitive_given_y(id).holds);
    CHECK(is_sensitive_given_x(id).holds);
    CHECK(is_highly_sensitive_given_y(id).holds);
    CHECK(is_jointly_sensitive(id).holds);
    SensitivityReport r = is_totally_sensitive(id);
    CHECK(r.totally_sensitive);
  }
}

TEST_CASE("constant function fails sensitivity with the expected witness") {
  VectorFunction c = lift_symbolwise(SingleLetterFunction::from_values(2, 2, {0, 0, 0, 0}), 1);
  CheckResult r = is_sensitive_given_y(c);
  REQUIRE_FALSE(r.holds);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->x == Word{0});
  CHECK(r.witness->x_hat == Word{1});
  CHECK(r.witness->y == Word{0});
  CHECK(r.witness->position == 1);
  CHECK(verify_sensitivity_witness(c, *r.witness, true));
  CHECK_FALSE(is_highly_sensitive_given_y(c).holds);
}

TEST_CASE("sensitivity witnesses re-verify against the definition") {
  CounterRng rng(2024, 5);
  int found = 0;
  for (int t = 0; t < 300; ++t) {
    SingleLetterFunction f = random_table(rng);
    VectorFunction fn = lift_symbolwise(f, 2);
    CheckResult ry = is_sensitive_given_y(fn);
    if (!ry.holds) {
      ++found;
      CHECK(verify_sensitivity_witness(fn, *ry.witness, true));
    }
    CheckResult rx = is_sensitive_given_x(fn);
    if (!rx.holds) CHECK(verify_sensitivity_witness(fn, *rx.witness, false));
    CheckResult j = is_jointly_sensitive(fn);
    if (!j.holds) CHECK(verify_joint_witness(fn, *j.witness));
    CheckResult hy = is_highly_sensitive_given_y(fn);
    if (!hy.holds && hy.witness) CHECK(verify_high_sensitivity_witness(fn, *hy.witness, true));
  }
  CHECK(found > 10);
}

TEST_CASE("lift of the strictly-injective-rows table is totally sensitive") {
  VectorFunction fn = lift_symbolwise(table2(), 2);
  CHECK(is_sensitive_given_y(fn).holds);
  SensitivityReport r = is_totally_sensitive(fn);
  CHECK(r.totally_sensitive);
}

TEST_CASE("joint-type function is sensitive both ways but not jointly") {
  VectorFunction ty = joint_type_function(2, 2, 2);
  CHECK(is_sensitive_given_y(ty).holds);
  CHECK(is_sensitive_given_x(ty).holds);
  CheckResult j = is_jointly_sensitive(ty);
  CHECK_FALSE(j.holds);
  REQUIRE(j.witness.has_value());
  CHECK(verify_joint_witness(ty, *j.witness));
  CHECK_FALSE(is_totally_sensitive(ty).totally_sensitive);
}

TEST_CASE("table-one lift is not jointly sensitive; witness verifies") {
  VectorFunction fn = lift_symbolwise(table1(), 2);
  CheckResult j = is_jointly_sensitive(fn);
  REQUIRE_FALSE(j.holds);
  CHECK(verify_joint_witness(fn, *j.witness));
  SensitivityReport r = is_totally_sensitive(fn);
  CHECK_FALSE(r.totally_sensitive);
  CHECK_FALSE(r.jointly_sensitive);
}

TEST_CASE("table-three lift is totally sensitive") {
  SensitivityReport r = is_totally_sensitive(lift_symbolwise(table3(), 2));
  CHECK(r.totally_sensitive);
}

TEST_CASE("highly sensitive implies sensitive on random lifts") {
  CounterRng rng(99, 1);
  int hits = 0;
  for (int t = 0; t < 400; ++t) {
    SingleLetterFunction f = random_table(rng, 3, 6);
    if (f.y_size() < 2) continue;
    VectorFunction fn = lift_symbolwise(f, 2);
    if (is_highly_sensitive_given_y(fn).holds) {
      ++hits;
      CHECK(is_sensitive_given_y(fn).holds);
    }
  }
  CHECK(hits > 5);
}

TEST_CASE("HK conditions on the worked tables") {
  CHECK(is_hk(table1()).is_hk);
  CHECK(is_hk(table2()).is_hk);
  CHECK(is_hk(table3()).is_hk);
  CHECK(is_hk(SingleLetterFunction::identity(3, 2)).is_hk);
  HkResult m = is_hk(SingleLetterFunction::mod_sum(2, 2, 2));
  CHECK_FALSE(m.is_hk);
  CHECK(m.violated_condition == 3);
  // the witness is a diagonal collision
  SingleLetterFunction f = SingleLetterFunction::mod_sum(2, 2, 2);
  CHECK(f(m.witness.a1, m.witness.b1) == f(m.witness.a2, m.witness.b2));
  CHECK(m.witness.a1 != m.witness.a2);
  CHECK(m.witness.b1 != m.witness.b2);
}

TEST_CASE("HK condition 1 and 2 failures are identified") {
  // duplicate rows
  HkResult r1 = is_hk(SingleLetterFunction::from_values(2, 2, {0, 1, 0, 1}));
  CHECK_FALSE(r1.is_hk);
  CHECK(r1.violated_condition == 1);
  // duplicate columns
  HkResult r2 = is_hk(SingleLetterFunction::from_values(2, 2, {0, 0, 1, 1}));
  CHECK_FALSE(r2.is_hk);
  CHECK(r2.violated_condition == 2);
}

TEST_CASE("single-letter criterion matches the worked tables") {
  SymbolwiseClassification c1 = symbolwise_totally_sensitive(table1());
  CHECK(c1.hk.is_hk);
  CHECK_FALSE(c1.property1);
  CHECK_FALSE(c1.property2);
  CHECK_FALSE(c1.totally_sensitive);

  SymbolwiseClassification c2 = symbolwise_totally_sensitive(table2());
  CHECK(c2.totally_sensitive);
  CHECK(c2.property1);

  SymbolwiseClassification c3 = symbolwise_totally_sensitive(table3());
  CHECK(c3.totally_sensitive);
  CHECK(c3.property2);
}

TEST_CASE("single-letter criterion equals the direct n=2 check on random tables") {
  CounterRng rng(321, 8);
  for (int t = 0; t < 500; ++t) {
    SingleLetterFunction f = random_table(rng);
    bool direct = is_totally_sensitive(lift_symbolwise(f, 2)).totally_sensitive;
    bool single = symbolwise_totally_sensitive(f).totally_sensitive;
    CHECK(direct == single);
  }
}

TEST_CASE("counterexample quadruple reproduces the worked collision") {
  Quadruple q = counterexample_quadruple(table1());
  CHECK(q.x2 == Word{0, 1});
  CHECK(q.x_hat2 == Word{1, 1});
  CHECK(q.y2 == Word{0, 1});
  CHECK(q.y_hat2 == Word{0, 2});
  CHECK(q.f2_value == ZWord{0, 3});
  VectorFunction f2 = lift_symbolwise(table1(), 2);
  CHECK(f2.eval(q.x2, q.y2) == f2.eval(q.x_hat2, q.y_hat2));
}

TEST_CASE("quadruple construction refuses tables outside its hypothesis") {
  CHECK_THROWS_AS(counterexample_quadruple(table2()), precondition_error);
  CHECK_THROWS_AS(counterexample_quadruple(SingleLetterFunction::mod_sum(2, 2, 2)),
                  precondition_error);
}

TEST_CASE("budget errors fire instead of silently sampling") {
  VectorFunction big = identity_function(3, 3, 4);
  CHECK_THROWS_AS(is_sensitive_given_y(big, 1000), budget_error);
}
