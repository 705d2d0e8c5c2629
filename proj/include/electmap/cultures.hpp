#pragma once

#include <optional>
#include <string>
#include <vector>

#include "electmap/core.hpp"
#include "electmap/rng.hpp"

namespace electmap {

struct CultureSpec {
  enum class Kind {
    IC,
    Urn,
    Mallows,
    SPConitzer,
    SPWalsh,
    Spoc,
    SingleCrossing,
    GroupSeparable,
    Euclidean,
  };
  enum class Tree { Balanced, Caterpillar };
  enum class Shape { Cube, Sphere };

  Kind kind = Kind::IC;
  int m = 0;
  int n = 0;
  double alpha = 0.0;          // urn contagion
  bool alpha_from_gamma = false;  // draw alpha ~ Gamma(0.8, 1) per election
  double norm_phi = 0.5;       // normalized Mallows dispersion
  bool norm_phi_uniform = false;  // draw norm_phi ~ U[0,1] per election
  Tree tree = Tree::Balanced;
  Shape shape = Shape::Cube;
  int dim = 1;

  void validate() const;

  // Canonical text form, e.g. "mallows:normphi=0.5", "urn:alpha=0.1",
  // "cube:dim=3", "gs:balanced", "ic". m and n are not part of the text.
  std::string text() const;
  static CultureSpec parse(const std::string& text);

  // Short family name used in dataset labels, e.g. "mallows", "cube3d".
  std::string family() const;
};

// Draws a full election according to the spec. Parameters flagged as
// random (gamma urn alpha, uniform norm-phi) are drawn from `rng` first.
Election sample(const CultureSpec& spec, RandomSource& rng);

Vote random_permutation(int m, RandomSource& rng);

struct UrnState {
  std::vector<Vote> prior;
};

// With probability k*alpha/(1 + k*alpha), k votes drawn so far, returns a
// uniformly chosen prior vote; otherwise a fresh uniform permutation.
Vote sample_urn_vote(int m, double alpha, UrnState& state, RandomSource& rng);

// Expected swap distance to the center under dispersion phi (exact closed
// form, evaluated stably for phi in [0, 1]).
double mallows_expected_swap(int m, double phi);

// Dispersion such that the expected normalized swap distance to the center
// equals norm_phi / 2; found by bisection to 1e-10 on the normalized value.
double phi_from_norm_phi(int m, double norm_phi);

// Repeated-insertion sampling; the resulting distribution is proportional to
// phi^swap_distance(vote, center).
Vote sample_mallows_vote(int m, double phi, const Vote& center,
                         RandomSource& rng);

Vote sample_sp_conitzer_vote(const Vote& axis, RandomSource& rng);
Vote sample_sp_walsh_vote(const Vote& axis, RandomSource& rng);
Vote sample_spoc_vote(const Vote& circular_axis, RandomSource& rng);

// The generated domain has exactly m(m-1)/2 + 1 orders; consecutive orders
// differ by one adjacent swap. Votes are drawn uniformly from the domain.
std::vector<Vote> single_crossing_domain(int m, RandomSource& rng);
Election sample_single_crossing_election(int m, int n, RandomSource& rng);

struct GsNode {
  int left = -1;
  int right = -1;
  int candidate = -1;  // >= 0 marks a leaf
};

struct GroupSeparableTree {
  std::vector<GsNode> nodes;
  int root = -1;
  int num_leaves = 0;
};

GroupSeparableTree build_balanced_tree(int m);
GroupSeparableTree build_caterpillar_tree(int m);

// Reverses each internal node's children with probability 1/2 and reads the
// frontier.
Vote sample_group_separable_vote(const GroupSeparableTree& tree,
                                 RandomSource& rng);

// Frontier with no reversals (left-to-right leaf labels).
Vote tree_frontier(const GroupSeparableTree& tree);

// Ranks candidates by increasing Euclidean distance to the voter point, ties
// broken by candidate index.
Vote rank_by_distance(const std::vector<std::vector<double>>& candidate_points,
                      const std::vector<double>& voter_point);

Election sample_euclidean_election(int m, int n, int dim,
                                   CultureSpec::Shape shape, RandomSource& rng);

}  // namespace electmap
