#pragma once

#include <string>
#include <vector>

#include "electmap/core.hpp"
#include "electmap/rational.hpp"

namespace electmap {

// Earth mover's distance between equal-mass non-negative vectors, computed as
// the l1 distance of the prefix-sum vectors.
Rational emd(const std::vector<Rational>& x, const std::vector<Rational>& y);
double emd(const std::vector<double>& x, const std::vector<double>& y,
           double mass_tol = 1e-9);

struct PositionwiseResult {
  Rational distance;
  // matching[c] = column of the second matrix paired with column c of the
  // first; lexicographically smallest among the optimal bijections.
  std::vector<int> matching;
};

// Minimum over candidate bijections of the summed column-wise EMDs.
PositionwiseResult positionwise(const FrequencyMatrix& a,
                                const FrequencyMatrix& b);

// positionwise divided by (m^2 - 1) / 3.
Rational normalized_positionwise(const FrequencyMatrix& a,
                                 const FrequencyMatrix& b);

Rational positionwise_normalizer(int m);

struct DistanceMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> values;

  int size() const { return static_cast<int>(labels.size()); }
  double at(int i, int j) const { return values[i][j]; }
  int index_of(const std::string& label) const;  // -1 when absent
  void validate() const;  // square, symmetric, non-negative, zero diagonal
};

// All pairwise positionwise distances; pairs are sharded over `workers`
// threads (0 = pick automatically) with a deterministic result.
DistanceMatrix distance_matrix(const std::vector<FrequencyMatrix>& dataset,
                               bool normalize,
                               const std::vector<std::string>& labels,
                               int workers = 0);

}  // namespace electmap
