#include <catch2/catch_amalgamated.hpp>

#include "dcomp/bits.hpp"
#include "dcomp/gf.hpp"
#include "dcomp/matching.hpp"
#include "dcomp/rng.hpp"

using namespace dcomp;

TEST_CASE("elias gamma encodes per the textbook table") {
  CHECK(elias_gamma(1) == "1");
  CHECK(elias_gamma(2) == "010");
  CHECK(elias_gamma(3) == "011");
  CHECK(elias_gamma(5) == "00101");
  CHECK(elias_gamma(5).size() == 5);
}

TEST_CASE("gamma length stays within the integer-header budget") {
  for (std::uint64_t l = 1; l <= 4096; ++l) {
    Bits b = elias_gamma(l);
    CHECK(static_cast<int>(b.size()) == elias_gamma_length(l));
    CHECK(b.size() <= 2 * (static_cast<std::size_t>(floor_log2_u64(l)) + 1));
  }
}

TEST_CASE("gamma round-trips and stays prefix-free") {
  std::vector<Bits> words;
  for (std::uint64_t l = 1; l <= 1000000; l = l < 600 ? l + 1 : l * 7 + 3) {
    GammaDecoded d = elias_gamma_decode(elias_gamma(l));
    REQUIRE(d.ok);
    CHECK(d.value == l);
    CHECK(d.consumed == elias_gamma(l).size());
    if (l <= 600) words.push_back(elias_gamma(l));
  }
  CHECK(is_prefix_free(words));
  CHECK(kraft_sum(words) <= 1.0 + 1e-12);
}

TEST_CASE("gamma decoding concatenated stream") {
  Bits s = elias_gamma(13) + elias_gamma(1) + elias_gamma(77);
  GammaDecoded a = elias_gamma_decode(s, 0);
  REQUIRE(a.ok);
  CHECK(a.value == 13);
  GammaDecoded b = elias_gamma_decode(s, a.consumed);
  REQUIRE(b.ok);
  CHECK(b.value == 1);
  GammaDecoded c = elias_gamma_decode(s, a.consumed + b.consumed);
  REQUIRE(c.ok);
  CHECK(c.value == 77);
}

TEST_CASE("prefix-freeness detects violations") {
  CHECK(is_prefix_free({"0", "10", "110", "111"}));
  CHECK_FALSE(is_prefix_free({"0", "01"}));
  CHECK(kraft_sum({"0", "10", "110", "111"}) == Catch::Approx(1.0));
}

TEST_CASE("prime scan") {
  CHECK(smallest_prime_at_least(3) == 3);
  CHECK(smallest_prime_at_least(4) == 5);
  CHECK(smallest_prime_at_least(5) == 5);
  CHECK(smallest_prime_at_least(6) == 7);
  CHECK(smallest_prime_at_least(14) == 17);
}

TEST_CASE("counter rng is reproducible and stream-independent") {
  CounterRng a(42, 1), b(42, 1), c(42, 2);
  std::uint64_t a1 = a.next_u64();
  CHECK(a1 == b.next_u64());
  CHECK(a1 != c.next_u64());
  CounterRng d(42, 1);
  int below = d.below_int(10);
  CHECK(below >= 0);
  CHECK(below < 10);
  double x = d.next_double();
  CHECK(x >= 0.0);
  CHECK(x < 1.0);
}

TEST_CASE("hopcroft-karp on hand graphs") {
  BipartiteMatcher m(3, 3);
  m.add_edge(0, 0);
  m.add_edge(0, 1);
  m.add_edge(1, 0);
  m.add_edge(2, 2);
  CHECK(m.max_matching() == 3);

  BipartiteMatcher star(3, 1);
  star.add_edge(0, 0);
  star.add_edge(1, 0);
  star.add_edge(2, 0);
  CHECK(star.max_matching() == 1);
}

TEST_CASE("matching agrees with brute force on random small graphs") {
  CounterRng rng(7, 99);
  for (int trial = 0; trial < 200; ++trial) {
    int nl = 1 + rng.below_int(4), nr = 1 + rng.below_int(4);
    std::vector<std::pair<int, int>> edges;
    BipartiteMatcher m(nl, nr);
    for (int l = 0; l < nl; ++l)
      for (int r = 0; r < nr; ++r)
        if (rng.next_double() < 0.5) {
          edges.push_back({l, r});
          m.add_edge(l, r);
        }
    // brute force over subsets of edges
    int best = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << edges.size()); ++mask) {
      int used_l = 0, used_r = 0, count = 0;
      bool ok = true;
      for (std::size_t e = 0; e < edges.size() && ok; ++e) {
        if (!(mask >> e & 1)) continue;
        int lbit = 1 << edges[e].first, rbit = 1 << edges[e].second;
        if ((used_l & lbit) || (used_r & rbit)) ok = false;
        used_l |= lbit;
        used_r |= rbit;
        ++count;
      }
      if (ok) best = std::max(best, count);
    }
    CHECK(m.max_matching() == best);
  }
}
