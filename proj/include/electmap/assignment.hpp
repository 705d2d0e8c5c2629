#pragma once

#include <cstdint>
#include <vector>

namespace electmap {

// Minimum-cost perfect matching on a square cost matrix.
//
// solve returns one optimal assignment together with dual potentials that are
// feasible on every cell (cost[i][j] >= u[i] + v[j], with equality on matched
// cells). lexmin_optimal_assignment then selects, among all optimal
// assignments, the one whose vector (sigma(0), sigma(1), ...) is
// lexicographically smallest.
struct IntAssignment {
  std::vector<int> row_to_col;
  long long total = 0;
  std::vector<long long> u, v;
};

IntAssignment solve_assignment(const std::vector<std::vector<long long>>& cost);

std::vector<int> lexmin_optimal_assignment(
    const std::vector<std::vector<long long>>& cost, const IntAssignment& base);

// Double-precision variant used when costs cannot be scaled to integers.
struct DoubleAssignment {
  std::vector<int> row_to_col;
  double total = 0;
  std::vector<double> u, v;
};

DoubleAssignment solve_assignment(const std::vector<std::vector<double>>& cost);

std::vector<int> lexmin_optimal_assignment(
    const std::vector<std::vector<double>>& cost, const DoubleAssignment& base,
    double tol);

}  // namespace electmap
