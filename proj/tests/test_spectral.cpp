#include <catch2/catch_amalgamated.hpp>

#include "dcomp/region.hpp"
#include "dcomp/rng.hpp"
#include "dcomp/spectral.hpp"

using namespace dcomp;

namespace {
SourceModel dsbs(double crossover) {
  double c = crossover / 2, d = (1 - crossover) / 2;
  return SourceModel::iid(2, 2, {d, c, c, d});
}
}  // namespace

TEST_CASE("binary entropy and its inverse") {
  CHECK(binary_entropy(0.5) == Catch::Approx(1.0));
  CHECK(binary_entropy(0.11) == Catch::Approx(0.499916).margin(1e-5));
  CHECK(inv_binary_entropy(0.0) == Catch::Approx(0.0).margin(1e-9));
  double e = inv_binary_entropy(0.1);
  CHECK(binary_entropy(e) == Catch::Approx(0.1).margin(1e-10));
}

TEST_CASE("independent uniform bits") {
  SourceModel u = SourceModel::iid(2, 2, {0.25, 0.25, 0.25, 0.25});
  SpectralEntropies e = spectral_entropies(u);
  CHECK(e.h_joint == Catch::Approx(2.0));
  CHECK(e.h_x_given_y == Catch::Approx(1.0));
  CHECK(e.h_y_given_x == Catch::Approx(1.0));
  CHECK(e.method == "shannon-iid");
}

TEST_CASE("doubly symmetric binary source conditional entropy") {
  SpectralEntropies e = spectral_entropies(dsbs(0.11));
  CHECK(e.h_x_given_y == Catch::Approx(binary_entropy(0.11)).margin(1e-12));
  CHECK(e.h_joint == Catch::Approx(1.0 + binary_entropy(0.11)).margin(1e-12));
}

TEST_CASE("anti-diagonal construction matches the displayed entropies") {
  double eps = 0.1;
  SourceModel t9 = SourceModel::theorem9(2, 2, 1.0, eps);
  SpectralEntropies e = spectral_entropies(t9);
  // H(X,Y) = (1-eps) log M + h(eps) + eps log(|X||Y| - M)
  double expected = (1 - eps) * 1.0 + binary_entropy(eps) + eps * 1.0;
  CHECK(e.h_joint == Catch::Approx(expected).margin(1e-12));

  SourceModel half = SourceModel::theorem9(2, 2, 0.5, eps);
  SpectralEntropies h = spectral_entropies(half);
  CHECK(h.h_x_given_y ==
        Catch::Approx(0.5 * spectral_entropies(t9).h_x_given_y + 0.5 * 1.0).margin(1e-12));
}

TEST_CASE("full-side rate of the construction collapses to the tail at eps=0") {
  SourceModel t9 = SourceModel::theorem9(2, 2, 0.5, 0.0);
  CHECK(sw_rate_full_side(t9) == Catch::Approx(0.5 * std::log2(2.0)).margin(1e-12));
}

TEST_CASE("iid marginal-independent markov chain reproduces shannon quantities") {
  // transition rows all equal the joint law: the chain is i.i.d. in disguise
  std::vector<double> joint{0.4, 0.1, 0.2, 0.3};
  std::vector<double> trans;
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t) trans.push_back(joint[static_cast<std::size_t>(t)]);
  SourceModel mk = SourceModel::markov(2, 2, trans, joint);
  SpectralEntropies em = spectral_entropies(mk);
  SpectralEntropies ei = spectral_entropies(SourceModel::iid(2, 2, joint));
  CHECK(em.h_joint == Catch::Approx(ei.h_joint).margin(1e-6));
  CHECK(em.h_x_given_y == Catch::Approx(ei.h_x_given_y).margin(1e-4));
  CHECK(em.h_y_given_x == Catch::Approx(ei.h_y_given_x).margin(1e-4));
  CHECK(em.method == "markov-rate");
  CHECK(em.bracket < 1e-4);
}

TEST_CASE("periodic or reducible chains are refused") {
  // two absorbing blocks: not irreducible
  std::vector<double> trans{1, 0, 0, 0,
                            0, 1, 0, 0,
                            0, 0, 1, 0,
                            0, 0, 0, 1};
  SourceModel mk = SourceModel::markov(2, 2, trans, {0.25, 0.25, 0.25, 0.25});
  CHECK_THROWS_AS(spectral_entropies(mk), precondition_error);
}

TEST_CASE("mixture takes componentwise maxima") {
  SourceModel u = SourceModel::iid(2, 2, {0.25, 0.25, 0.25, 0.25});      // (2,1,1)
  SourceModel d = dsbs(0.11);                                            // (1.5, .5, .5)
  SourceModel m = SourceModel::mixture({u, d}, {0.5, 0.5});
  SpectralEntropies e = spectral_entropies(m);
  CHECK(e.h_joint == Catch::Approx(2.0));
  CHECK(e.h_x_given_y == Catch::Approx(1.0));
  CHECK(e.method == "mixture-max");
}

TEST_CASE("two-symbol-wise halves the super-symbol quantities") {
  SourceModel ts = uniform_two_symbolwise(2, 2);
  SpectralEntropies e = spectral_entropies(ts);
  CHECK(e.h_joint == Catch::Approx(2.0));
  CHECK(e.h_x_given_y == Catch::Approx(1.0));
}

TEST_CASE("empirical spectrum concentrates at the shannon values for iid") {
  SourceModel d = dsbs(0.2);
  SpectralEntropies e = spectral_entropies(d);
  CounterRng rng(42, 0);
  EmpiricalSpectrum sp = empirical_spectrum(d, 14, 20000, rng);
  CHECK(sp.quantile_joint(0.5) == Catch::Approx(e.h_joint).margin(0.1));
  CHECK(sp.quantile_x_given_y(0.5) == Catch::Approx(e.h_x_given_y).margin(0.1));
}

TEST_CASE("mixture spectrum upper quantile certifies the max rule") {
  // uniform on all pairs (rate 2) mixed with uniform on the diagonal
  // (rate 1): the 0.999-quantile sits at 2 + 1/n.
  SourceModel full = SourceModel::iid(2, 2, {0.25, 0.25, 0.25, 0.25});
  SourceModel diag = SourceModel::iid(2, 2, {0.5, 0.0, 0.0, 0.5});
  SourceModel mix = SourceModel::mixture({full, diag}, {0.5, 0.5});
  SpectralEntropies e = spectral_entropies(mix);
  CHECK(e.h_joint == Catch::Approx(2.0));
  int n = 12;
  CounterRng rng(7, 1);
  EmpiricalSpectrum sp = empirical_spectrum(mix, n, 100000, rng);
  CHECK(sp.quantile_joint(0.999) == Catch::Approx(e.h_joint).margin(0.15));
  // the sum-rate constraint of the region matches the same quantile
  RateRegion r = sw_region_fl(mix);
  CHECK(r.sum_min == Catch::Approx(2.0));
}
