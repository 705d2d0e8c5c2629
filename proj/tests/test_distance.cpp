#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "electmap/compass.hpp"
#include "electmap/distance.hpp"
#include "electmap/rng.hpp"
#include "support/oracles.hpp"
#include "support/test_util.hpp"

using namespace electmap;
using electmap::testing::emd_transport_oracle;
using electmap::testing::optimal_matchings_bruteforce;
using electmap::testing::positionwise_bruteforce;
using electmap::testing::random_election;

namespace {

// Elections E and F over four candidates with three voters each; F's columns
// are a shuffled, flattened variant of E's.
Election example_e() {
  return Election::from_votes(4, {{0, 1, 2, 3}, {0, 2, 1, 3}, {3, 1, 2, 0}});
}

Election example_f() {
  // x,y,z,w = 0,1,2,3: x>y>z>w, y>x>w>z, w>z>x>y.
  return Election::from_votes(4, {{0, 1, 2, 3}, {1, 0, 3, 2}, {3, 2, 0, 1}});
}

std::vector<Rational> rationals(std::initializer_list<Rational> xs) {
  return std::vector<Rational>(xs);
}

}  // namespace

TEST_CASE("emd worked column example") {
  auto x = rationals({Rational(2, 3), Rational(0), Rational(0), Rational(1, 3)});
  auto y = rationals({Rational(1, 3), Rational(1, 3), Rational(0), Rational(1, 3)});
  CHECK(emd(x, y) == Rational(1, 3));
}

TEST_CASE("emd of identical vectors is zero") {
  auto x = rationals({Rational(1, 2), Rational(1, 4), Rational(1, 4)});
  CHECK(emd(x, x) == Rational(0));
}

TEST_CASE("emd moves unit mass across three positions") {
  auto x = rationals({Rational(1), Rational(0), Rational(0), Rational(0)});
  auto y = rationals({Rational(0), Rational(0), Rational(0), Rational(1)});
  CHECK(emd(x, y) == Rational(3));
}

TEST_CASE("emd rejects bad input") {
  auto x = rationals({Rational(1), Rational(0)});
  auto y = rationals({Rational(1)});
  CHECK_THROWS(emd(x, y));
  auto z = rationals({Rational(1, 2), Rational(0)});
  CHECK_THROWS(emd(x, z));
}

TEST_CASE("prefix-sum emd equals the transport simulation oracle") {
  RandomSource rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    int t = 2 + rng.below_int(7);
    std::vector<double> x(t), y(t);
    double sx = 0, sy = 0;
    for (int i = 0; i < t; ++i) {
      x[i] = rng.real01();
      y[i] = rng.real01();
      sx += x[i];
      sy += y[i];
    }
    for (int i = 0; i < t; ++i) y[i] *= sx / sy;
    double got = emd(x, y, 1e-6);
    double expected = emd_transport_oracle(x, y);
    CHECK(got == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("positionwise worked example is 4/3 with the known matching") {
  FrequencyMatrix a = frequency_matrix(example_e());
  FrequencyMatrix b = frequency_matrix(example_f());
  PositionwiseResult r = positionwise(a, b);
  CHECK(r.distance == Rational(4, 3));
  auto optima = optimal_matchings_bruteforce(a, b);
  // a->y, b->x, c->z, d->w must be among the optimal bijections.
  std::vector<int> known{1, 0, 2, 3};
  CHECK(std::find(optima.begin(), optima.end(), known) != optima.end());
  CHECK(std::find(optima.begin(), optima.end(), r.matching) != optima.end());
}

TEST_CASE("positionwise of a matrix with itself is zero") {
  RandomSource rng(43);
  FrequencyMatrix f = frequency_matrix(random_election(5, 9, rng));
  PositionwiseResult r = positionwise(f, f);
  CHECK(r.distance == Rational(0));
}

TEST_CASE("positionwise equals factorial brute force on small inputs") {
  RandomSource rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    int m = 2 + rng.below_int(5);  // m <= 6
    FrequencyMatrix a = frequency_matrix(random_election(m, 1 + rng.below_int(6), rng));
    FrequencyMatrix b = frequency_matrix(random_election(m, 1 + rng.below_int(6), rng));
    CHECK(positionwise(a, b).distance == positionwise_bruteforce(a, b));
  }
}

TEST_CASE("positionwise returns the lexicographically smallest optimum") {
  RandomSource rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    int m = 2 + rng.below_int(4);  // m <= 5
    FrequencyMatrix a = frequency_matrix(random_election(m, 1 + rng.below_int(3), rng));
    FrequencyMatrix b = frequency_matrix(random_election(m, 1 + rng.below_int(3), rng));
    auto optima = optimal_matchings_bruteforce(a, b);
    PositionwiseResult r = positionwise(a, b);
    CHECK(r.matching == optima.front());
  }
}

TEST_CASE("huge denominators fall back to rational matching, same results") {
  // Denominators above the integer-profile cap exercise the slow path.
  auto big = [](long long num) { return Rational(num, 3000009); };
  FrequencyMatrix a{3,
                    {{big(1000003), big(1000003), big(1000003)},
                     {big(2000006), big(500000), big(500003)},
                     {big(0), big(1500006), big(1500003)}}};
  FrequencyMatrix b{3,
                    {{big(3000009), big(0), big(0)},
                     {big(0), big(2000006), big(1000003)},
                     {big(0), big(1000003), big(2000006)}}};
  a.validate();
  b.validate();
  PositionwiseResult r = positionwise(a, b);
  CHECK(r.distance == positionwise_bruteforce(a, b));
  auto optima = optimal_matchings_bruteforce(a, b);
  CHECK(r.matching == optima.front());
}

TEST_CASE("positionwise rejects mixed dimensions") {
  FrequencyMatrix a = FrequencyMatrix::identity(3);
  FrequencyMatrix b = FrequencyMatrix::identity(4);
  CHECK_THROWS(positionwise(a, b));
}

TEST_CASE("normalized distance between identity and uniformity is one") {
  for (int m : {4, 8, 12}) {
    FrequencyMatrix id = compass_matrix(CompassKind::Identity, m);
    FrequencyMatrix un = compass_matrix(CompassKind::Uniformity, m);
    CHECK(normalized_positionwise(id, un) == Rational(1));
    CHECK(normalized_positionwise(id, id) == Rational(0));
  }
}

TEST_CASE("normalized distance never exceeds one on random m=8 pairs") {
  RandomSource rng(59);
  for (int trial = 0; trial < 200; ++trial) {
    FrequencyMatrix a = frequency_matrix(random_election(8, 1 + rng.below_int(10), rng));
    FrequencyMatrix b = frequency_matrix(random_election(8, 1 + rng.below_int(10), rng));
    CHECK(normalized_positionwise(a, b) <= Rational(1));
  }
}

TEST_CASE("neutrality and anonymity of positionwise") {
  RandomSource rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    int m = 3 + rng.below_int(4);
    Election e = random_election(m, 5, rng);
    Election f = random_election(m, 5, rng);
    Rational base = positionwise(frequency_matrix(e), frequency_matrix(f)).distance;

    // Permute candidate names in e.
    Vote relabel = electmap::testing::random_vote(m, rng);
    Election e2 = e;
    for (Vote& v : e2.votes) {
      for (int& c : v) c = relabel[c];
    }
    CHECK(positionwise(frequency_matrix(e2), frequency_matrix(f)).distance == base);

    // Duplicate every vote in f.
    Election f2 = f;
    f2.votes.insert(f2.votes.end(), f.votes.begin(), f.votes.end());
    CHECK(positionwise(frequency_matrix(e), frequency_matrix(f2)).distance == base);
  }
}

TEST_CASE("positionwise is a pseudometric on random triples") {
  RandomSource rng(67);
  for (int trial = 0; trial < 25; ++trial) {
    int m = 2 + rng.below_int(9);  // m <= 10
    FrequencyMatrix a = frequency_matrix(random_election(m, 4, rng));
    FrequencyMatrix b = frequency_matrix(random_election(m, 4, rng));
    FrequencyMatrix c = frequency_matrix(random_election(m, 4, rng));
    Rational ab = positionwise(a, b).distance;
    Rational ba = positionwise(b, a).distance;
    Rational ac = positionwise(a, c).distance;
    Rational cb = positionwise(c, b).distance;
    CHECK(ab == ba);
    CHECK(ab <= ac + cb);
  }
}

TEST_CASE("distance matrix on compass items matches closed forms at m=8") {
  int m = 8;
  std::vector<FrequencyMatrix> items{
      compass_matrix(CompassKind::Identity, m),
      compass_matrix(CompassKind::Uniformity, m),
      compass_matrix(CompassKind::Stratification, m),
      compass_matrix(CompassKind::Antagonism, m)};
  std::vector<std::string> labels{"ID", "UN", "ST", "AN"};
  DistanceMatrix d = distance_matrix(items, false, labels, 2);
  d.validate();
  CHECK(d.at(0, 1) == doctest::Approx((m * m - 1) / 3.0));          // ID-UN
  CHECK(d.at(0, 3) == doctest::Approx(m * m / 4.0));                // ID-AN
  CHECK(d.at(1, 2) == doctest::Approx(m * m / 4.0));                // UN-ST
  CHECK(d.at(0, 2) == doctest::Approx(2.0 / 3.0 * (m * m / 4.0 - 1)));  // ID-ST
  CHECK(d.at(1, 3) == doctest::Approx(2.0 / 3.0 * (m * m / 4.0 - 1)));  // UN-AN
  CHECK(d.at(2, 3) == doctest::Approx(13.0 / 48.0 * m * m - 1.0 / 3.0));  // ST-AN
}

TEST_CASE("distance matrix basics") {
  std::vector<FrequencyMatrix> one{FrequencyMatrix::identity(3)};
  DistanceMatrix d = distance_matrix(one, true, {"only"});
  CHECK(d.size() == 1);
  CHECK(d.at(0, 0) == 0.0);

  std::vector<FrequencyMatrix> bad{FrequencyMatrix::identity(3),
                                   FrequencyMatrix::identity(4)};
  CHECK_THROWS(distance_matrix(bad, true, {"a", "b"}));
}

TEST_CASE("distance matrix triangle inequality on a small smoke dataset") {
  RandomSource rng(71);
  std::vector<FrequencyMatrix> items;
  std::vector<std::string> labels;
  for (int i = 0; i < 10; ++i) {
    items.push_back(frequency_matrix(random_election(6, 5, rng)));
    labels.push_back("e" + std::to_string(i));
  }
  DistanceMatrix d = distance_matrix(items, true, labels, 3);
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      for (int k = 0; k < 10; ++k) {
        CHECK(d.at(i, j) <= d.at(i, k) + d.at(k, j) + 1e-9);
      }
    }
  }
}

TEST_CASE("distance matrix is identical regardless of worker count") {
  RandomSource rng(73);
  std::vector<FrequencyMatrix> items;
  std::vector<std::string> labels;
  for (int i = 0; i < 8; ++i) {
    items.push_back(frequency_matrix(random_election(5, 6, rng)));
    labels.push_back("e" + std::to_string(i));
  }
  DistanceMatrix d1 = distance_matrix(items, true, labels, 1);
  DistanceMatrix d4 = distance_matrix(items, true, labels, 4);
  CHECK(d1.values == d4.values);
}
