#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "electmap/compass.hpp"
#include "electmap/core.hpp"
#include "electmap/cultures.hpp"
#include "electmap/distance.hpp"
#include "electmap/embed.hpp"
#include "electmap/eval.hpp"
#include "electmap/rng.hpp"

namespace electmap {

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

// Election text format:
//   line 1:              m
//   lines 2 .. m+1:      candidate names
//   line m+2:            n
//   remaining lines:     "count: i1,i2,...,im" with 1-based candidate ids
// Runs of consecutive identical votes share one line, so writing and parsing
// round-trips the vote sequence exactly.
std::string write_election(const Election& e);
Election parse_election(const std::string& text);
Election load_election(const std::filesystem::path& path);
void save_election(const Election& e, const std::filesystem::path& path);

// A possibly partial ballot: ranked groups of candidates, singletons are
// strict positions, larger groups are ties at that rank.
struct IncompleteVote {
  std::vector<std::vector<int>> groups;

  bool has_ties() const;
  int ranked_count() const;
};

struct IncompleteElection {
  int num_candidates = 0;
  std::vector<IncompleteVote> votes;
  std::vector<std::string> labels;
};

// Same format as the election file; vote lines may stop early and may contain
// tie groups in braces: "3: 2,{1,4},5".
IncompleteElection parse_incomplete_election(const std::string& text);

// Replaces each tie group by a uniformly random strict order of its members.
IncompleteVote break_ties(const IncompleteVote& v, RandomSource& rng);

// Extends each strict prefix one position at a time by copying the next
// candidate of a uniformly chosen original vote with that prefix; falls back
// to a uniform unranked candidate when no such vote exists.
std::vector<Vote> complete_votes(const std::vector<std::vector<int>>& prefixes,
                                 int m, RandomSource& rng);

// Keeps the k candidates with the highest Borda scores (ties broken uniformly
// at random) and restricts every vote, preserving relative order. The kept
// candidates are renumbered in ascending old-index order.
Election select_top_candidates(const Election& e, int k, RandomSource& rng);

// n_target votes drawn i.i.d. with replacement.
Election resample_votes(const Election& e, int n_target, RandomSource& rng);

struct IngestOptions {
  bool tie_break = true;
  bool complete = true;
  int top_k = 0;     // 0 = keep all candidates
  int resample = 0;  // 0 = keep all votes
};

// Ties first, then prefix completion, then candidate selection and
// resampling.
Election ingest_election(const IncompleteElection& input,
                         const IngestOptions& options, RandomSource& rng);

// Frequency matrix CSV: first line m, then m comma-separated rows of "p/q"
// rationals.
std::string write_frequency_matrix(const FrequencyMatrix& f);
FrequencyMatrix parse_frequency_matrix(const std::string& text);

// Distance matrix CSV: header row of labels, then the full symmetric matrix.
std::string write_distance_csv(const DistanceMatrix& d);
DistanceMatrix parse_distance_csv(const std::string& text);

// Embedding CSV: "label,x,y" per row.
std::string write_embedding_csv(const Embedding& e);
Embedding parse_embedding_csv(const std::string& text);

std::string write_eval_report_csv(const EvalReport& report);

struct DatasetRecipe {
  int m = 10;
  int n = 100;
  std::uint64_t seed = 0;
  bool compass = false;
  std::vector<std::pair<CompassKind, CompassKind>> paths;
  int path_steps = 20;
  std::vector<std::pair<std::string, int>> cultures;  // culture text, count
};

// Plain text: "key=value" lines for m/n/seed/compass/paths/path_steps and one
// "culture,count" line per culture entry; '#' starts a comment.
DatasetRecipe parse_recipe(const std::string& text);

struct DatasetItem {
  std::string label;
  std::string culture;  // culture text, or "compass" / "path"
  std::string param;    // resolved alpha or norm-phi when drawn randomly
  FrequencyMatrix freq;
  std::optional<Election> election;
};

struct Dataset {
  int m = 0;
  long long n = 0;
  std::vector<DatasetItem> items;

  std::vector<FrequencyMatrix> matrices() const;
  std::vector<std::string> labels() const;
};

// Samples the recipe deterministically (child seed per item); compass and
// path items carry matrices only.
Dataset build_dataset(const DatasetRecipe& recipe);

// Directory layout: manifest.csv plus one .soc (election) or .freq.csv
// (matrix) file per item.
void save_dataset(const Dataset& dataset, const std::filesystem::path& dir);
Dataset load_dataset(const std::filesystem::path& dir);

struct NormPhiFit {
  double norm_phi = 0.0;
  double avg_distance = 0.0;
  double std_dev = 0.0;
};

// Grid search over norm-phi minimizing the mean normalized positionwise
// distance between Mallows samples and the target matrices.
NormPhiFit fit_norm_phi(const std::vector<FrequencyMatrix>& target, int m,
                        int n, double grid_step, int samples_per_point,
                        RandomSource& rng);

struct MapStyle {
  int width = 900;
  int height = 700;
  double point_radius = 5.0;
  std::string title;
};

struct ColorSpec {
  bool numeric = false;
  std::map<std::string, double> values;         // label -> value
  std::map<std::string, std::string> category;  // label -> category name
};

// Category names derived from dataset labels by stripping a trailing _NNN.
ColorSpec colors_from_labels(const std::vector<std::string>& labels);

// Standalone SVG; one circle per item, squares for the compass items, legend
// included. Byte-deterministic for fixed input.
std::string render_map_svg(const Embedding& embedding, const ColorSpec& colors,
                           const MapStyle& style);

}  // namespace electmap
