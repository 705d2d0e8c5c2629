#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "electmap/core.hpp"
#include "electmap/rng.hpp"
#include "support/test_util.hpp"

using namespace electmap;
using electmap::testing::random_election;
using electmap::testing::random_vote;
using electmap::testing::swap_distance_pairs;

namespace {

// Candidates a,b,c,d = 0,1,2,3; votes a>b>c>d, a>c>b>d, d>b>c>a.
Election three_voter_example() {
  return Election::from_votes(4, {{0, 1, 2, 3}, {0, 2, 1, 3}, {3, 1, 2, 0}});
}

}  // namespace

TEST_CASE("rational arithmetic basics") {
  Rational a(2, 3), b(1, 6);
  CHECK(a + b == Rational(5, 6));
  CHECK(a - b == Rational(1, 2));
  CHECK(a * b == Rational(1, 9));
  CHECK(a / b == Rational(4));
  CHECK(Rational(-4, -6) == Rational(2, 3));
  CHECK(Rational(4, -6) == Rational(-2, 3));
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(-7, 2).abs() == Rational(7, 2));
  CHECK(Rational(5, 10).str() == "1/2");
  CHECK(Rational::parse("-3/9") == Rational(-1, 3));
  CHECK(Rational::parse("42") == Rational(42));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("position matrix of the three-voter example") {
  PositionMatrix p = position_matrix(three_voter_example());
  CHECK(p.n == 3);
  // Column of candidate a.
  CHECK(p.counts[0][0] == 2);
  CHECK(p.counts[1][0] == 0);
  CHECK(p.counts[2][0] == 0);
  CHECK(p.counts[3][0] == 1);
  p.validate();
}

TEST_CASE("position matrix of a unanimous election is n times identity") {
  int m = 5, n = 7;
  Vote v(m);
  for (int i = 0; i < m; ++i) v[i] = i;
  Election e = Election::from_votes(m, std::vector<Vote>(n, v));
  PositionMatrix p = position_matrix(e);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      CHECK(p.counts[i][j] == (i == j ? n : 0));
    }
  }
}

TEST_CASE("position matrix rows and columns sum to n") {
  RandomSource rng(7);
  Election e = random_election(5, 7, rng);
  PositionMatrix p = position_matrix(e);
  p.validate();  // row/column sums checked inside
  CHECK(p.n == 7);
}

TEST_CASE("frequency matrix of the three-voter example") {
  FrequencyMatrix f = frequency_matrix(three_voter_example());
  CHECK(f.values[0][0] == Rational(2, 3));
  CHECK(f.values[1][0] == Rational(0));
  CHECK(f.values[2][0] == Rational(0));
  CHECK(f.values[3][0] == Rational(1, 3));
  f.validate();
}

TEST_CASE("frequency matrix of a unanimous election is the identity") {
  Vote v{0, 1, 2};
  Election e = Election::from_votes(3, {v, v, v, v});
  FrequencyMatrix f = frequency_matrix(e);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(f.values[i][j] == Rational(i == j ? 1 : 0));
    }
  }
}

TEST_CASE("frequency equals position over n entrywise, exactly") {
  RandomSource rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Election e = random_election(6, 1 + rng.below_int(9), rng);
    PositionMatrix p = position_matrix(e);
    FrequencyMatrix f = frequency_matrix(e);
    f.validate();
    for (int i = 0; i < p.m; ++i) {
      for (int j = 0; j < p.m; ++j) {
        CHECK(f.values[i][j] == Rational(p.counts[i][j], p.n));
      }
    }
  }
}

TEST_CASE("swap distance base cases") {
  Vote v{0, 1, 2, 3, 4};
  CHECK(swap_distance(v, v) == 0);
  Vote r(v.rbegin(), v.rend());
  CHECK(swap_distance(v, r) == 10);  // m(m-1)/2 at m=5
  CHECK_THROWS(swap_distance(v, Vote{0, 1, 2}));
}

TEST_CASE("swap distance equals the pair-enumeration oracle") {
  RandomSource rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    Vote u = random_vote(6, rng);
    Vote v = random_vote(6, rng);
    CHECK(swap_distance(u, v) == swap_distance_pairs(u, v));
  }
}

TEST_CASE("spearman distance base cases") {
  Vote v{0, 1, 2, 3};
  CHECK(spearman_distance(v, v) == 0);
  Vote r(v.rbegin(), v.rend());
  CHECK(spearman_distance(v, r) == 8);
  Vote t{1, 0, 2, 3};  // adjacent transposition
  CHECK(spearman_distance(v, t) == 2);
  CHECK_THROWS(spearman_distance(v, Vote{0, 1}));
}

TEST_CASE("swap distance is a metric on random triples") {
  RandomSource rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    int m = 2 + rng.below_int(6);  // m <= 7
    Vote a = random_vote(m, rng);
    Vote b = random_vote(m, rng);
    Vote c = random_vote(m, rng);
    CHECK(swap_distance(a, a) == 0);
    if (a != b) CHECK(swap_distance(a, b) > 0);
    CHECK(swap_distance(a, b) == swap_distance(b, a));
    CHECK(swap_distance(a, c) <= swap_distance(a, b) + swap_distance(b, c));
  }
}

TEST_CASE("Diaconis-Graham inequalities") {
  RandomSource rng(19);
  for (int trial = 0; trial < 300; ++trial) {
    int m = 2 + rng.below_int(7);
    Vote u = random_vote(m, rng);
    Vote v = random_vote(m, rng);
    long long swap = swap_distance(u, v);
    long long spear = spearman_distance(u, v);
    CHECK(swap <= spear);
    CHECK(spear <= 2 * swap);
  }
}

TEST_CASE("election validation rejects malformed input") {
  CHECK_THROWS(Election::from_votes(3, {{0, 1, 1}}));
  CHECK_THROWS(Election::from_votes(3, {}));
  CHECK_THROWS(Election::from_votes(3, {{0, 1, 2}}, {"a", "b"}));
  CHECK_THROWS(Election::from_votes(0, {{}}));
}

TEST_CASE("random source reproducibility and child independence") {
  RandomSource a(123), b(123);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  RandomSource parent(5);
  parent.next_u64();
  RandomSource c1 = parent.child(0);
  RandomSource c2 = parent.child(0);
  CHECK(c1.next_u64() == c2.next_u64());
  CHECK(parent.child(0).seed() != parent.child(1).seed());
}

TEST_CASE("bounded draws are unbiased enough and in range") {
  RandomSource rng(29);
  std::vector<long long> hits(6, 0);
  int draws = 60000;
  for (int i = 0; i < draws; ++i) ++hits[rng.below(6)];
  double stat = electmap::testing::chi_square_uniform(hits, draws / 6.0);
  CHECK(stat < 40.0);  // chi2(5) far tail
}

TEST_CASE("gamma sampler has roughly the right mean") {
  RandomSource rng(31);
  double total = 0;
  int draws = 40000;
  for (int i = 0; i < draws; ++i) total += rng.gamma(0.8, 1.0);
  double mean = total / draws;
  CHECK(mean > 0.75);
  CHECK(mean < 0.85);  // expectation 0.8
}
