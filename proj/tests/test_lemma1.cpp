#include <catch2/catch_amalgamated.hpp>

#include "dcomp/lemma1.hpp"
#include "dcomp/rng.hpp"

using namespace dcomp;

namespace {

SourceModel random_positive_iid(CounterRng& rng, int xs, int ys) {
  std::vector<double> p(static_cast<std::size_t>(xs) * ys);
  double s = 0;
  for (double& v : p) {
    v = 0.05 + rng.next_double();
    s += v;
  }
  for (double& v : p) v /= s;
  return SourceModel::iid(xs, ys, p);
}

SingleLetterFunction random_totally_sensitive(CounterRng& rng, int xs, int ys) {
  for (;;) {
    int labels = 2 + rng.below_int(xs * ys);
    std::vector<int> vals(static_cast<std::size_t>(xs) * ys);
    for (int& v : vals) v = rng.below_int(labels);
    SingleLetterFunction f = SingleLetterFunction::from_values(xs, ys, vals);
    if (symbolwise_totally_sensitive(f).totally_sensitive) return f;
  }
}

std::shared_ptr<TableCode> random_code(const VectorFunction& fn, const SourceModel& src,
                                       CounterRng& rng, std::uint64_t seed) {
  if (rng.next_double() < 0.5) {
    int l1 = 1 + rng.below_int(4), l2 = 1 + rng.below_int(4);
    return random_binning_code(fn, src, l1, l2, seed);
  }
  return random_prefix_code(fn, src, seed, 3 * fn.n() + 4);
}

}  // namespace

TEST_CASE("zero-error code keeps only the counting term") {
  SourceModel src = SourceModel::iid(2, 2, {0.4, 0.3, 0.2, 0.1});
  VectorFunction id = identity_function(2, 2, 2);
  auto code = full_rate_sw_code(2, 2, 2);
  TypicalSetConfig cfg{0.3, 0.25};
  Lemma1Result r = lemma1_check(*code, src, id, cfg);
  CHECK(r.pe == 0.0);
  double v = v_n(cfg.beta, 2, 2);
  CHECK(r.core1.rhs == Catch::Approx((v + 1) * std::exp2(-2 * cfg.delta)));
  CHECK(r.core1.holds());
  CHECK(r.core2.holds());
  CHECK(r.core3.holds());
  REQUIRE(r.core3modified.has_value());
  CHECK(r.core3modified->holds());
}

TEST_CASE("hypothesis gates refuse by name") {
  SourceModel nonsmooth = SourceModel::iid(2, 2, {0.5, 0.0, 0.0, 0.5});
  SourceModel smooth = SourceModel::iid(2, 2, {0.4, 0.3, 0.2, 0.1});
  VectorFunction id = identity_function(2, 2, 2);
  VectorFunction type_like =
      lift_symbolwise(SingleLetterFunction::mod_sum(2, 2, 2), 2);
  auto code = full_rate_sw_code(2, 2, 2);
  TypicalSetConfig cfg{0.3, 0.25};
  CHECK_THROWS_AS(lemma1_check(*code, nonsmooth, id, cfg), precondition_error);
  // mod-sum is sensitive both ways but not jointly sensitive: the plain sum
  // bound needs joint sensitivity, the r-form accepts it
  CHECK_THROWS_AS(lemma1_check(*code, smooth, type_like, cfg), precondition_error);
  double r = max_eq_rate(type_like);
  Lemma1Result res = lemma1_check(*code, smooth, type_like, cfg, r);
  CHECK(res.core1.holds());
  CHECK(res.core3modified->holds());
  // r far below the true EQ growth is refused
  CHECK_THROWS_AS(lemma1_check(*code, smooth, type_like, TypicalSetConfig{0.05, 0.25}, 0.0),
                  precondition_error);
}

TEST_CASE("all bounds hold over seeded random instances") {
  CounterRng rng(20240811, 0);
  int instances = 0;
  while (instances < 60) {
    int xs = 2 + rng.below_int(2), ys = 2 + rng.below_int(2);
    int n = 2 + rng.below_int(2);
    if (checked_pow(xs, n) * checked_pow(ys, n) > 1000) continue;
    SourceModel src = random_positive_iid(rng, xs, ys);
    SingleLetterFunction f = random_totally_sensitive(rng, xs, ys);
    VectorFunction fn = lift_symbolwise(f, n);
    auto code = random_code(fn, src, rng, 1000 + instances);
    TypicalSetConfig cfg{0.1 + 0.4 * rng.next_double(), 0.1 + 0.35 * rng.next_double()};
    Lemma1Result r = lemma1_check(*code, src, fn, cfg, max_eq_rate(fn));
    CHECK(r.core1.slack() >= 0.0);
    CHECK(r.core2.slack() >= 0.0);
    CHECK(r.core3.slack() >= 0.0);
    CHECK(r.core3modified->slack() >= 0.0);
    ++instances;
  }
}

TEST_CASE("a smaller injected q only loosens the right-hand sides") {
  SourceModel src = SourceModel::iid(2, 2, {0.4, 0.3, 0.2, 0.1});
  VectorFunction fn =
      lift_symbolwise(SingleLetterFunction::from_values(2, 2, {0, 1, 2, 3}), 2);
  auto code = random_binning_code(fn, src, 2, 2, 5);
  TypicalSetConfig cfg{0.25, 0.3};
  Lemma1Result tight = lemma1_check(*code, src, fn, cfg);
  Lemma1Result loose = lemma1_check(*code, src, fn, cfg, std::nullopt, tight.q_given_y / 4);
  CHECK(loose.core1.rhs >= tight.core1.rhs - 1e-12);
  CHECK(loose.core1.holds());
  CHECK(loose.core3.holds());
}

TEST_CASE("jointly sensitive fibers decompose into a row and a column") {
  // the decodable set restricted to one codeword pair sits inside a cross
  CounterRng rng(8, 8);
  SourceModel src = random_positive_iid(rng, 2, 2);
  SingleLetterFunction f = random_totally_sensitive(rng, 2, 2);
  for (int n : {2, 3}) {
    VectorFunction fn = lift_symbolwise(f, n);
    auto code = random_binning_code(fn, src, 2, 2, 99);
    WordSpace xs{2, n}, ys{2, n};
    std::map<std::pair<Bits, Bits>, std::vector<std::pair<std::uint64_t, std::uint64_t>>> dab;
    for (std::uint64_t xi = 0; xi < xs.count(); ++xi) {
      Word x = xs.word(xi);
      Bits c1 = code->encode1(x);
      for (std::uint64_t yi = 0; yi < ys.count(); ++yi) {
        Word y = ys.word(yi);
        auto out = code->decode(c1, code->encode2(y));
        if (out && *out == fn.eval(x, y)) dab[{c1, code->encode2(y)}].push_back({xi, yi});
      }
    }
    for (const auto& [key, cell] : dab) {
      // pick any pivot: every member shares its row or its column
      const auto& pivot = cell.front();
      for (const auto& m : cell) {
        bool shares = m.first == pivot.first || m.second == pivot.second;
        CHECK(shares);
      }
    }
  }
}

TEST_CASE("pairing transcript on a constructed instance verifies") {
  CounterRng rng(4242, 0);
  SourceModel src = random_positive_iid(rng, 2, 2);
  // AND collapses whole columns, so decodable fibers hold several sequences
  VectorFunction fn =
      lift_symbolwise(SingleLetterFunction::from_values(2, 2, {0, 0, 0, 1}), 3);
  REQUIRE(is_sensitive_given_y(fn).holds);
  auto code = random_binning_code(fn, src, 1, 3, 31);
  Word y{0, 1, 0};
  bool saw_pairs = false;
  WordSpace xs{2, 3};
  for (std::uint64_t xi = 0; xi < xs.count(); ++xi) {
    PairingResult pr =
        pairing_construction(*code, src, fn, code->encode1(xs.word(xi)), y, 0.3);
    CHECK(pr.transcript.ok);
    CHECK(pr.transcript.pairs.size() >= pr.transcript.guaranteed_pairs);
    CHECK(pr.aggregate.ok);
    CHECK(pr.aggregate.lhs <= pr.aggregate.rhs + 1e-12);
    CHECK(pr.aggregate.max_multiplicity <= pr.aggregate.multiplicity_cap);
    saw_pairs = saw_pairs || !pr.transcript.pairs.empty();
    for (const PairingPair& pp : pr.transcript.pairs) {
      CHECK(hamming_distance(pp.x_prime, pp.x_second) >= 0.3 * 3 - 1e-9);
      for (const PairingFlip& fl : pp.flips) {
        CHECK(fl.in_dc);
        CHECK(fl.smooth_ok);
        CHECK(fl.combined_ok);
        CHECK(hamming_distance(fl.y_hat, y) == 1);
      }
    }
  }
  CHECK(saw_pairs);
}

TEST_CASE("tiny fibers give an empty transcript and a trivially true bound") {
  SourceModel src = SourceModel::iid(2, 2, {0.4, 0.3, 0.2, 0.1});
  VectorFunction id = identity_function(2, 2, 2);
  auto code = full_rate_sw_code(2, 2, 2);  // every fiber is a singleton
  PairingResult pr = pairing_construction(*code, src, id, code->encode1({0, 0}), {0, 0}, 0.3);
  CHECK(pr.transcript.d_size <= 1);
  CHECK(pr.transcript.pairs.empty());
  CHECK(pr.transcript.guaranteed_pairs == 0);
  CHECK(pr.aggregate.lhs == 0.0);
  CHECK(pr.aggregate.ok);
}

TEST_CASE("weak-mode pairing passes under the weaker hypotheses") {
  CounterRng rng(7777, 1);
  // smooth + sensitive instance also passes in weak mode
  SourceModel src = random_positive_iid(rng, 2, 2);
  VectorFunction fn = lift_symbolwise(SingleLetterFunction::mod_sum(2, 2, 2), 3);
  auto code = random_binning_code(fn, src, 1, 3, 13);
  PairingResult strong =
      pairing_construction(*code, src, fn, code->encode1({0, 0, 0}), {0, 1, 0}, 0.3);
  PairingResult weak =
      weak_mode_pairing(*code, src, fn, code->encode1({0, 0, 0}), {0, 1, 0}, 0.3);
  CHECK(strong.aggregate.ok);
  CHECK(weak.aggregate.ok);
  CHECK(weak.transcript.ok);
}

TEST_CASE("weak-mode pairing handles zero-probability fibers via the trivial branch") {
  // disjoint-support table: weakly smooth (overlap count 0) and the premise
  // product is zero whenever a pair forms
  SourceModel src = SourceModel::iid(2, 2, {0.5, 0.0, 0.0, 0.5});
  VectorFunction fn =
      lift_symbolwise(SingleLetterFunction::from_values(2, 2, {0, 0, 0, 1}), 3);
  REQUIRE(is_highly_sensitive_given_y(fn).holds);
  auto code = random_binning_code(fn, src, 1, 3, 17);
  bool any_trivial = false;
  WordSpace xs{2, 3}, ys{2, 3};
  for (std::uint64_t xi = 0; xi < xs.count() && !any_trivial; ++xi) {
    for (std::uint64_t yi = 0; yi < ys.count() && !any_trivial; ++yi) {
      PairingResult pr = weak_mode_pairing(*code, src, fn,
                                           code->encode1(xs.word(xi)), ys.word(yi), 0.3);
      CHECK(pr.transcript.ok);
      CHECK(pr.aggregate.ok);
      for (const PairingPair& pp : pr.transcript.pairs) any_trivial |= pp.trivial_zero;
    }
  }
  CHECK(any_trivial);
}

TEST_CASE("weak-mode refuses when high sensitivity fails") {
  SourceModel src = SourceModel::iid(2, 2, {0.5, 0.0, 0.0, 0.5});
  VectorFunction constant =
      lift_symbolwise(SingleLetterFunction::from_values(2, 2, {0, 0, 0, 0}), 2);
  auto code = full_rate_sw_code(2, 2, 2);
  CHECK_THROWS_AS(weak_mode_pairing(*code, src, constant, code->encode1({0, 0}), {0, 0}, 0.3),
                  precondition_error);
}
