#pragma once

#include <string>
#include <vector>

#include "electmap/distance.hpp"
#include "electmap/embed.hpp"

namespace electmap {

// Original and embedded pairwise distances over the same labeled items, with
// the pair used to normalize both spaces (typically the ID and UN items).
struct EmbeddingSummary {
  std::vector<std::string> labels;
  DistanceMatrix original;
  DistanceMatrix embedded;
  int norm_a = -1;
  int norm_b = -1;
  bool norm_fallback_max = false;  // normalizer defaulted to the farthest pair
};

// Pairs the distance matrix with the Euclidean distances of the embedding;
// items are aligned by label. When the id/un labels are absent, the farthest
// original pair is used as the normalizer and flagged.
EmbeddingSummary make_summary(const DistanceMatrix& original,
                              const Embedding& embedding,
                              const std::string& id_label = "ID",
                              const std::string& un_label = "UN");

double pcc_vectors(const std::vector<double>& x, const std::vector<double>& y);

// Pearson correlation over the (k choose 2) pair-distance vectors.
double pcc(const EmbeddingSummary& q);

struct Distortion {
  double amr = 1.0;
  int pairs_used = 0;
  int pairs_skipped = 0;  // zero-distance pairs where the ratio is undefined
};

// Average over other items of max/min of the normalized distances. Pairs
// closer than min_rel_original times the normalizer (in the original space)
// are excluded, matching the far-pairs-only variant when set to e.g. 0.1.
Distortion distortion(const EmbeddingSummary& q, int item,
                      double min_rel_original = 0.0);

// Fraction of concordantly ordered pairs of distances from `item`;
// sgn(0) = 0 and equal signs (including both zero) count as concordant.
double monotonicity(const EmbeddingSummary& q, int item);

struct EvalReport {
  std::vector<std::string> labels;
  std::vector<double> amr;
  std::vector<double> mu;
  double pcc = 0.0;
  double amr_mean = 0.0, amr_stddev = 0.0;
  double mu_mean = 0.0, mu_stddev = 0.0;
};

EvalReport evaluate_embedding(const EmbeddingSummary& q);

}  // namespace electmap
