#pragma once

#include <array>
#include <string>
#include <vector>

#include "electmap/distance.hpp"
#include "electmap/rng.hpp"

namespace electmap {

struct EmbedConfig {
  int max_iter = 5000;
  double tol = 1e-6;   // stop when the gradient infinity norm drops below
  int restarts = 4;    // independent random initializations, best kept
};

struct Embedding {
  std::vector<std::string> labels;
  std::vector<std::array<double, 2>> coords;
  double stress = 0.0;
  int iterations = 0;
};

// Weighted stress sum_{i<j} w_ij (|p_i - p_j| - d_ij)^2 with w_ij = 1/d_ij^2;
// zero targets are floored at 1e-6 times the largest distance.
double embedding_stress(const DistanceMatrix& d,
                        const std::vector<std::array<double, 2>>& coords);

std::vector<std::array<double, 2>> embedding_stress_gradient(
    const DistanceMatrix& d, const std::vector<std::array<double, 2>>& coords);

// Gradient descent on the stress with Barzilai-Borwein step sizes from random
// initializations in [0,1]^2; the best of `restarts` runs by stress wins.
Embedding kamada_kawai(const DistanceMatrix& d, const EmbedConfig& config,
                       const RandomSource& rng);

// Classic force simulation with linearly cooling temperature; attraction is
// scaled by the target distance of each pair.
Embedding fruchterman_reingold(const DistanceMatrix& d,
                               const EmbedConfig& config,
                               const RandomSource& rng);

}  // namespace electmap
