#pragma once

#include <string>
#include <vector>

#include "electmap/rational.hpp"

namespace electmap {

// A vote is a ranking: ranking[i] is the candidate (0-based index) placed at
// position i+1.
using Vote = std::vector<int>;

// True when `v` is a permutation of {0, ..., m-1}.
bool is_permutation_vote(const Vote& v, int m);

// Inverse lookup: result[c] = 0-based position of candidate c in the vote.
std::vector<int> positions_of(const Vote& v);

struct Election {
  int num_candidates = 0;
  std::vector<Vote> votes;
  std::vector<std::string> labels;  // optional candidate names, empty or size m

  int m() const { return num_candidates; }
  int n() const { return static_cast<int>(votes.size()); }

  // Throws std::invalid_argument on any violated invariant.
  void validate() const;

  static Election from_votes(int num_candidates, std::vector<Vote> votes,
                             std::vector<std::string> labels = {});
};

// counts[i][j] = number of voters ranking candidate j at position i+1.
struct PositionMatrix {
  int m = 0;
  long long n = 0;
  std::vector<std::vector<long long>> counts;

  void validate() const;  // rows and columns must each sum to n
};

// Bistochastic matrix of exact rationals; values[i][j] is the fraction of
// voters ranking candidate j at position i+1.
struct FrequencyMatrix {
  int m = 0;
  std::vector<std::vector<Rational>> values;

  std::vector<Rational> column(int j) const;
  void validate() const;  // rows and columns must each sum to exactly 1

  static FrequencyMatrix identity(int m);
};

PositionMatrix position_matrix(const Election& e);
FrequencyMatrix frequency_matrix(const Election& e);
FrequencyMatrix frequency_from_position(const PositionMatrix& p);

// Kendall tau: number of candidate pairs ordered oppositely by u and v.
long long swap_distance(const Vote& u, const Vote& v);

// Sum over candidates of the absolute position difference.
long long spearman_distance(const Vote& u, const Vote& v);

}  // namespace electmap
