#pragma once

#include <vector>

#include "electmap/core.hpp"
#include "electmap/rng.hpp"

namespace electmap::testing {

inline Vote random_vote(int m, RandomSource& rng) {
  Vote v(m);
  for (int i = 0; i < m; ++i) v[i] = i;
  rng.shuffle(v);
  return v;
}

inline Election random_election(int m, int n, RandomSource& rng) {
  std::vector<Vote> votes;
  votes.reserve(n);
  for (int i = 0; i < n; ++i) votes.push_back(random_vote(m, rng));
  return Election::from_votes(m, std::move(votes));
}

// O(m^2) oracle: counts candidate pairs ranked oppositely by u and v.
inline long long swap_distance_pairs(const Vote& u, const Vote& v) {
  std::vector<int> pu = positions_of(u);
  std::vector<int> pv = positions_of(v);
  int m = static_cast<int>(u.size());
  long long count = 0;
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      bool u_ab = pu[a] < pu[b];
      bool v_ab = pv[a] < pv[b];
      if (u_ab != v_ab) ++count;
    }
  }
  return count;
}

// Upper critical values chosen far in the tail so seeded runs never flake.
// chi2 statistic for observed counts vs uniform expectation.
inline double chi_square_uniform(const std::vector<long long>& observed,
                                 double expected) {
  double stat = 0.0;
  for (long long o : observed) {
    double d = static_cast<double>(o) - expected;
    stat += d * d / expected;
  }
  return stat;
}

}  // namespace electmap::testing
