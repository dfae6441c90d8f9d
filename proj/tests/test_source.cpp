#include <catch2/catch_amalgamated.hpp>

#include "dcomp/jsonio.hpp"
#include "dcomp/rng.hpp"
#include "dcomp/sensitivity.hpp"
#include "dcomp/source.hpp"

using namespace dcomp;

namespace {

double total_mass(const SourceModel& src, int n) {
  WordSpace xs{src.x_size(), n}, ys{src.y_size(), n};
  double total = 0;
  for (std::uint64_t xi = 0; xi < xs.count(); ++xi)
    for (std::uint64_t yi = 0; yi < ys.count(); ++yi)
      total += src.block_pmf(xs.word(xi), ys.word(yi));
  return total;
}

SourceModel dsbs(double crossover) {
  double c = crossover / 2, d = (1 - crossover) / 2;
  return SourceModel::iid(2, 2, {d, c, c, d});
}

}  // namespace

TEST_CASE("iid uniform block pmf") {
  SourceModel u = SourceModel::iid(2, 2, {0.25, 0.25, 0.25, 0.25});
  CHECK(u.block_pmf({0, 1, 1}, {1, 0, 1}) == Catch::Approx(1.0 / 64));
}

TEST_CASE("anti-diagonal construction pmf matches the displayed masses") {
  SourceModel t9 = SourceModel::theorem9(2, 2, 1.0, 0.1);
  CHECK(t9.block_pmf({0}, {1}) == Catch::Approx(0.45));
  CHECK(t9.block_pmf({0}, {0}) == Catch::Approx(0.05));
  // tail is uniform when rho < 1
  SourceModel half = SourceModel::theorem9(2, 2, 0.5, 0.1);
  CHECK(half.block_pmf({0, 0}, {1, 1}) == Catch::Approx(0.45 * 0.25));
}

TEST_CASE("mixture pmf is the weighted mean of component pmfs") {
  SourceModel a = SourceModel::iid(2, 2, {0.25, 0.25, 0.25, 0.25});
  SourceModel b = SourceModel::iid(2, 2, {0.7, 0.1, 0.1, 0.1});
  SourceModel m = SourceModel::mixture({a, b}, {0.5, 0.5});
  Word x{0, 1}, y{0, 0};
  CHECK(m.block_pmf(x, y) ==
        Catch::Approx(0.5 * a.block_pmf(x, y) + 0.5 * b.block_pmf(x, y)));
}

TEST_CASE("block pmf sums to one for every model kind") {
  SourceModel iid = SourceModel::iid(2, 3, {0.1, 0.2, 0.05, 0.15, 0.3, 0.2});
  SourceModel mk = SourceModel::markov(
      2, 2,
      {0.4, 0.2, 0.2, 0.2,
       0.1, 0.5, 0.2, 0.2,
       0.25, 0.25, 0.25, 0.25,
       0.3, 0.3, 0.2, 0.2},
      {0.25, 0.25, 0.25, 0.25});
  SourceModel mx = SourceModel::mixture({iid, iid.transposed().transposed()}, {0.4, 0.6});
  std::vector<double> p2(16, 1.0 / 32);
  p2[0] = 17.0 / 32;
  SourceModel ts = SourceModel::two_symbolwise(2, 2, p2);
  SourceModel t9 = SourceModel::theorem9(2, 2, 0.5, 0.2);

  for (int n : {1, 2, 3, 4}) {
    CHECK(total_mass(iid, n) == Catch::Approx(1.0).epsilon(1e-9));
    CHECK(total_mass(mk, n) == Catch::Approx(1.0).epsilon(1e-9));
    CHECK(total_mass(mx, n) == Catch::Approx(1.0).epsilon(1e-9));
    CHECK(total_mass(t9, n) == Catch::Approx(1.0).epsilon(1e-9));
    if (n % 2 == 0) CHECK(total_mass(ts, n) == Catch::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("marginals agree with brute-force sums") {
  SourceModel mk = SourceModel::markov(
      2, 2,
      {0.4, 0.2, 0.2, 0.2,
       0.1, 0.5, 0.2, 0.2,
       0.25, 0.25, 0.25, 0.25,
       0.3, 0.3, 0.2, 0.2},
      {0.4, 0.2, 0.2, 0.2});
  int n = 3;
  WordSpace xs{2, n}, ys{2, n};
  for (std::uint64_t yi = 0; yi < ys.count(); ++yi) {
    Word y = ys.word(yi);
    double direct = 0;
    for (std::uint64_t xi = 0; xi < xs.count(); ++xi) direct += mk.block_pmf(xs.word(xi), y);
    CHECK(mk.y_marginal(y) == Catch::Approx(direct).margin(1e-12));
  }
  for (std::uint64_t xi = 0; xi < xs.count(); ++xi) {
    Word x = xs.word(xi);
    double direct = 0;
    for (std::uint64_t yi = 0; yi < ys.count(); ++yi) direct += mk.block_pmf(x, ys.word(yi));
    CHECK(mk.x_marginal(x) == Catch::Approx(direct).margin(1e-12));
  }
}

TEST_CASE("length and alphabet violations are rejected") {
  SourceModel u = SourceModel::iid(2, 2, {0.25, 0.25, 0.25, 0.25});
  CHECK_THROWS_AS(u.block_pmf({0, 1}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(u.block_pmf({0, 2}, {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(SourceModel::iid(2, 2, {0.5, 0.5, 0.5, 0.5}), std::invalid_argument);
  SourceModel ts = uniform_two_symbolwise(2, 2);
  CHECK_THROWS_AS(ts.block_pmf({0, 0, 0}, {0, 0, 0}), std::invalid_argument);
}

TEST_CASE("sampling matches the pmf empirically") {
  SourceModel t9 = SourceModel::theorem9(2, 2, 1.0, 0.1);
  CounterRng rng(5, 11);
  Word x, y;
  int anti = 0, trials = 20000;
  for (int t = 0; t < trials; ++t) {
    t9.sample(1, rng, x, y);
    if (x[0] + y[0] == 1) ++anti;
  }
  CHECK(std::abs(anti / static_cast<double>(trials) - 0.9) < 0.02);
}

TEST_CASE("two-symbol-wise template carries the collision onto super-symbols") {
  SingleLetterFunction f = SingleLetterFunction::from_values(2, 3, {0, 1, 2, 0, 3, 3});
  Quadruple q = counterexample_quadruple(f);
  TwoSymbolwiseTemplate t = two_symbolwise_from_function(f, q);
  CHECK(t.g.x_size() == 4);
  CHECK(t.g.y_size() == 9);
  CHECK(t.g(t.u_of_x2, t.v_of_y2) == t.g(t.u_of_x_hat2, t.v_of_y_hat2));
  CHECK(t.u_of_x2 != t.u_of_x_hat2);
  CHECK(t.v_of_y2 != t.v_of_y_hat2);
  HkResult hk = is_hk(t.g);
  CHECK_FALSE(hk.is_hk);
  CHECK(hk.violated_condition == 3);
}

TEST_CASE("two-symbol-wise template refuses a non-counterexample quadruple") {
  SingleLetterFunction f2 = SingleLetterFunction::from_values(2, 3, {0, 1, 2, 0, 3, 4});
  Quadruple fake;
  fake.x2 = {0, 0};
  fake.x_hat2 = {1, 1};
  fake.y2 = {0, 0};
  fake.y_hat2 = {1, 1};
  CHECK_THROWS_AS(two_symbolwise_from_function(f2, fake), precondition_error);
}

TEST_CASE("sources load from json with numeric or string probabilities") {
  json j = json::parse(R"({"kind":"iid","x_size":2,"y_size":2,
                           "p":[["0.25",0.25],[0.25,"0.25"]]})");
  SourceModel s = source_from_json(j);
  CHECK(s.block_pmf({0}, {1}) == Catch::Approx(0.25));
  json t = json::parse(R"({"kind":"theorem9","x_size":2,"y_size":2,
                           "rho":1.0,"epsilon":0.1})");
  CHECK(source_from_json(t).block_pmf({0}, {1}) == Catch::Approx(0.45));
  json m = json::parse(R"({"kind":"mixture","x_size":2,"y_size":2,
    "weights":[0.5,0.5],
    "components":[
      {"kind":"iid","x_size":2,"y_size":2,"p":[[0.25,0.25],[0.25,0.25]]},
      {"kind":"iid","x_size":2,"y_size":2,"p":[[0.7,0.1],[0.1,0.1]]}]})");
  CHECK(source_from_json(m).block_pmf({0}, {0}) == Catch::Approx(0.5 * 0.25 + 0.5 * 0.7));
}
