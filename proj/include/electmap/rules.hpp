#pragma once

#include <optional>
#include <vector>

#include "electmap/core.hpp"
#include "electmap/rational.hpp"

namespace electmap {

// frac[a][b] = fraction of voters preferring a to b; diagonal zero.
struct PairwiseMatrix {
  int m = 0;
  std::vector<std::vector<Rational>> frac;
};

PairwiseMatrix pairwise_matrix(const Election& e);

// score(c) = sum over voters of (m - pos); totals n*m*(m-1)/2.
std::vector<long long> borda_scores(const Election& e);

// One point per strict pairwise win, half a point per tie; max m-1.
std::vector<Rational> copeland_scores(const Election& e);

// The unique candidate beating every other strictly, when one exists.
std::optional<int> condorcet_winner(const Election& e);

struct Committee {
  std::vector<int> members;  // ascending
  Rational score;            // dissatisfaction
};

// Harmonically weighted sorted member positions, summed over voters.
Rational hb_score(const Election& e, const std::vector<int>& members);

// Sum over voters of best member position minus one.
long long cc_score(const Election& e, const std::vector<int>& members);

// Greedy addition, ties by lowest candidate index.
Committee sequential_cc(const Election& e, int k);

// Greedy removal, ties by highest removed candidate index.
Committee removal_cc(const Election& e, int k);

// Exhaustive optimum; ties by lexicographically smallest member set.
// Throws when (m choose k) exceeds the budget.
Committee exact_cc(const Election& e, int k, long long budget = 1'000'000);

enum class CcHeuristic { Sequential, Removal };

struct ApproxRatio {
  bool optimal_zero = false;  // optimum is 0; the ratio is omitted
  double ratio = 1.0;
};

ApproxRatio approximation_ratio(const Election& e, int k, CcHeuristic algorithm,
                                long long budget = 1'000'000);

}  // namespace electmap
