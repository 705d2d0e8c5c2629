#pragma once

#include <string>
#include <vector>

#include "electmap/core.hpp"

namespace electmap {

enum class CompassKind { Identity, Uniformity, Stratification, Antagonism };

std::string compass_name(CompassKind kind);  // "ID", "UN", "ST", "AN"

// Exact compass matrices; Stratification requires even m.
FrequencyMatrix compass_matrix(CompassKind kind, int m);

// Identity with reversed columns.
FrequencyMatrix reversed_identity(int m);

// Interior convex combinations alpha*x + (1-alpha)*y for
// alpha = k/(steps+1), k = 1..steps. The caller is responsible for aligning
// columns so that the identity bijection witnesses positionwise(x, y).
std::vector<FrequencyMatrix> convex_path(const FrequencyMatrix& x,
                                         const FrequencyMatrix& y, int steps);

// Decomposes a position matrix into votes: repeatedly extracts a perfect
// matching on the nonzero entries, subtracts it with the largest feasible
// multiplicity, and stops at zero. The result reproduces the input matrix
// exactly and uses at most m^2 - 2m + 2 distinct votes.
Election election_from_position_matrix(const PositionMatrix& p);

// Rounds n*X to a valid position matrix P with |n*x_ij - p_ij| < 1 entrywise
// and the minimum possible total deviation, then decomposes P.
Election election_from_frequency_matrix(const FrequencyMatrix& x, long long n);

// The rounding step alone; exposed for tests.
PositionMatrix round_frequency_matrix(const FrequencyMatrix& x, long long n);

}  // namespace electmap
