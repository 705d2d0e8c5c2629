// Command-line front end: generate elections, build datasets, compute
// distance matrices, embed them, evaluate embeddings, score elections, and
// render maps.

#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "electmap/io.hpp"
#include "electmap/rules.hpp"

namespace fs = std::filesystem;
using namespace electmap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct GenerateArgs {
  std::string spec;
  int m = 10;
  int n = 100;
  std::uint64_t seed = 0;
  std::string output;
};

struct DatasetArgs {
  std::string recipe;
  std::string output;
};

struct DistanceArgs {
  std::string input;
  bool normalize = false;
  int workers = 0;
  std::string output;
};

struct EmbedArgs {
  std::string dist;
  std::string algo = "kk";
  std::uint64_t seed = 0;
  int max_iter = 5000;
  int restarts = 4;
  double tol = 1e-6;
  std::string output;
};

struct EvaluateArgs {
  std::string dist;
  std::string coords;
  std::string id_label = "ID";
  std::string un_label = "UN";
  std::string output;
};

struct ScoreArgs {
  std::string input;
  std::string features = "borda,copeland,condorcet,cc";
  int k = 0;  // 0 = ceil(m/10)
  long long budget = 1'000'000;
  std::string output;
};

struct MapArgs {
  std::string coords;
  std::string color_by;
  std::string title;
  std::string output;
};

struct IngestArgs {
  std::string input;
  bool tie_break = false;
  bool complete = false;
  int top_k = 0;
  int resample = 0;
  std::uint64_t seed = 0;
  std::string output;
};

int run_generate(const GenerateArgs& args) {
  CultureSpec spec = CultureSpec::parse(args.spec);
  spec.m = args.m;
  spec.n = args.n;
  RandomSource rng(args.seed);
  Election e = sample(spec, rng);
  save_election(e, args.output);
  std::cout << "wrote " << args.output << " (" << e.m() << " candidates, "
            << e.n() << " votes)\n";
  return kExitOk;
}

int run_dataset(const DatasetArgs& args) {
  DatasetRecipe recipe = parse_recipe(read_text_file(args.recipe));
  Dataset dataset = build_dataset(recipe);
  save_dataset(dataset, args.output);
  std::cout << "wrote " << dataset.items.size() << " items to " << args.output
            << "\n";
  return kExitOk;
}

int run_distance(const DistanceArgs& args) {
  Dataset dataset = load_dataset(args.input);
  DistanceMatrix d = distance_matrix(dataset.matrices(), args.normalize,
                                     dataset.labels(), args.workers);
  write_text_file(args.output, write_distance_csv(d));
  std::cout << "wrote " << args.output << " (" << d.size() << " items)\n";
  return kExitOk;
}

int run_embed(const EmbedArgs& args) {
  DistanceMatrix d = parse_distance_csv(read_text_file(args.dist));
  EmbedConfig config;
  config.max_iter = args.max_iter;
  config.restarts = args.restarts;
  config.tol = args.tol;
  RandomSource rng(args.seed);
  Embedding e;
  if (args.algo == "kk") {
    e = kamada_kawai(d, config, rng);
  } else if (args.algo == "fr") {
    e = fruchterman_reingold(d, config, rng);
  } else {
    std::cerr << "unknown algorithm: " << args.algo << " (use kk or fr)\n";
    return kExitUsage;
  }
  write_text_file(args.output, write_embedding_csv(e));
  std::cout << "wrote " << args.output << " (stress " << e.stress << ", "
            << e.iterations << " iterations)\n";
  return kExitOk;
}

int run_evaluate(const EvaluateArgs& args) {
  DistanceMatrix d = parse_distance_csv(read_text_file(args.dist));
  Embedding e = parse_embedding_csv(read_text_file(args.coords));
  EmbeddingSummary q = make_summary(d, e, args.id_label, args.un_label);
  if (q.norm_fallback_max) {
    std::cerr << "note: labels '" << args.id_label << "'/'" << args.un_label
              << "' not found; normalizing by the farthest pair\n";
  }
  EvalReport report = evaluate_embedding(q);
  write_text_file(args.output, write_eval_report_csv(report));
  std::cout << "pcc " << report.pcc << ", mean amr " << report.amr_mean
            << ", mean mu " << report.mu_mean << "\n";
  return kExitOk;
}

int run_score(const ScoreArgs& args) {
  Dataset dataset = load_dataset(args.input);
  std::set<std::string> features;
  {
    std::istringstream in(args.features);
    std::string token;
    while (std::getline(in, token, ',')) features.insert(token);
  }
  for (const std::string& f : features) {
    if (f != "borda" && f != "copeland" && f != "condorcet" && f != "cc") {
      std::cerr << "unknown feature: " << f << "\n";
      return kExitUsage;
    }
  }
  int committee_size = args.k;
  if (committee_size <= 0) {
    committee_size = (dataset.m + 9) / 10;  // ceil(m/10)
  }
  std::ostringstream out;
  out << "label,borda_winner_score,copeland_winner_score,has_condorcet,"
         "cc_seq_ratio,cc_rem_ratio\n";
  for (const DatasetItem& item : dataset.items) {
    Election e = item.election.has_value()
                     ? *item.election
                     : election_from_frequency_matrix(item.freq, dataset.n);
    out << item.label;
    if (features.count("borda") > 0) {
      std::vector<long long> scores = borda_scores(e);
      out << "," << *std::max_element(scores.begin(), scores.end());
    } else {
      out << ",";
    }
    if (features.count("copeland") > 0) {
      std::vector<Rational> scores = copeland_scores(e);
      out << "," << std::max_element(scores.begin(), scores.end())->to_double();
    } else {
      out << ",";
    }
    if (features.count("condorcet") > 0) {
      out << "," << (condorcet_winner(e).has_value() ? "yes" : "no");
    } else {
      out << ",";
    }
    if (features.count("cc") > 0) {
      try {
        ApproxRatio seq = approximation_ratio(e, committee_size,
                                              CcHeuristic::Sequential,
                                              args.budget);
        ApproxRatio rem = approximation_ratio(e, committee_size,
                                              CcHeuristic::Removal,
                                              args.budget);
        if (seq.optimal_zero) {
          out << ",optimal-zero,optimal-zero";
        } else {
          out << "," << seq.ratio << "," << rem.ratio;
        }
      } catch (const std::invalid_argument&) {
        out << ",na,na";  // search space over budget
      }
    } else {
      out << ",,";
    }
    out << "\n";
  }
  write_text_file(args.output, out.str());
  std::cout << "wrote " << args.output << "\n";
  return kExitOk;
}

int run_map(const MapArgs& args) {
  Embedding e = parse_embedding_csv(read_text_file(args.coords));
  ColorSpec colors;
  if (args.color_by.empty()) {
    colors = colors_from_labels(e.labels);
  } else {
    // CSV of label,value; numeric when every value parses as a number.
    std::istringstream in(read_text_file(args.color_by));
    std::string line;
    bool all_numeric = true;
    std::vector<std::pair<std::string, std::string>> rows;
    while (std::getline(in, line)) {
      if (line.empty() || line.rfind("label,", 0) == 0) continue;
      std::size_t comma = line.find(',');
      if (comma == std::string::npos) continue;
      std::string label = line.substr(0, comma);
      std::string value = line.substr(comma + 1);
      if (std::size_t extra = value.find(','); extra != std::string::npos) {
        value = value.substr(0, extra);
      }
      rows.emplace_back(label, value);
      try {
        std::size_t used = 0;
        std::stod(value, &used);
        if (used != value.size()) all_numeric = false;
      } catch (const std::exception&) {
        all_numeric = false;
      }
    }
    colors.numeric = all_numeric && !rows.empty();
    for (const auto& [label, value] : rows) {
      if (colors.numeric) {
        colors.values[label] = std::stod(value);
      } else {
        colors.category[label] = value;
      }
    }
  }
  MapStyle style;
  style.title = args.title;
  write_text_file(args.output, render_map_svg(e, colors, style));
  std::cout << "wrote " << args.output << "\n";
  return kExitOk;
}

int run_ingest(const IngestArgs& args) {
  std::vector<fs::path> inputs;
  fs::path in_path(args.input);
  if (fs::is_directory(in_path)) {
    for (const auto& entry : fs::directory_iterator(in_path)) {
      if (entry.is_regular_file()) inputs.push_back(entry.path());
    }
    std::sort(inputs.begin(), inputs.end());
  } else {
    inputs.push_back(in_path);
  }
  if (inputs.empty()) {
    std::cerr << "no input files under " << args.input << "\n";
    return kExitData;
  }
  fs::create_directories(args.output);
  IngestOptions options;
  options.tie_break = args.tie_break;
  options.complete = args.complete;
  options.top_k = args.top_k;
  options.resample = args.resample;
  RandomSource root(args.seed);
  std::uint64_t stream = 0;
  for (const fs::path& file : inputs) {
    IncompleteElection input;
    try {
      input = parse_incomplete_election(read_text_file(file));
    } catch (const std::exception& ex) {
      std::cerr << file.string() << ": " << ex.what() << "\n";
      return kExitData;
    }
    RandomSource rng = root.child(stream++);
    Election e = ingest_election(input, options, rng);
    fs::path out = fs::path(args.output) / (file.stem().string() + ".soc");
    save_election(e, out);
    std::cout << "wrote " << out.string() << " (" << e.m() << " candidates, "
              << e.n() << " votes)\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maps of ordinal elections: sampling, distances, embeddings"};
  app.require_subcommand(1);

  GenerateArgs generate_args;
  CLI::App* generate = app.add_subcommand("generate",
                                          "sample one election from a culture");
  generate->add_option("--spec", generate_args.spec,
                       "culture, e.g. ic, mallows:normphi=0.5, urn:alpha=0.1,"
                       " cube:dim=3, gs:balanced")
      ->required();
  generate->add_option("-m", generate_args.m, "number of candidates");
  generate->add_option("-n", generate_args.n, "number of votes");
  generate->add_option("--seed", generate_args.seed, "random seed");
  generate->add_option("-o,--output", generate_args.output, "output file")
      ->required();

  DatasetArgs dataset_args;
  CLI::App* dataset = app.add_subcommand("dataset",
                                         "build a dataset from a recipe file");
  dataset->add_option("--recipe", dataset_args.recipe, "recipe file")
      ->required()
      ->check(CLI::ExistingFile);
  dataset->add_option("-o,--output", dataset_args.output, "output directory")
      ->required();

  DistanceArgs distance_args;
  CLI::App* distance = app.add_subcommand(
      "distance", "pairwise positionwise distances of a dataset");
  distance->add_option("--in", distance_args.input, "dataset directory")
      ->required();
  distance->add_flag("--normalize", distance_args.normalize,
                     "divide by (m^2-1)/3");
  distance->add_option("--workers", distance_args.workers,
                       "worker threads (0 = auto)");
  distance->add_option("-o,--output", distance_args.output, "output csv")
      ->required();

  EmbedArgs embed_args;
  CLI::App* embed = app.add_subcommand("embed",
                                       "2d embedding of a distance matrix");
  embed->add_option("--dist", embed_args.dist, "distance csv")
      ->required()
      ->check(CLI::ExistingFile);
  embed->add_option("--algo", embed_args.algo, "kk or fr");
  embed->add_option("--seed", embed_args.seed, "random seed");
  embed->add_option("--max-iter", embed_args.max_iter, "iteration cap");
  embed->add_option("--restarts", embed_args.restarts, "random restarts");
  embed->add_option("--tol", embed_args.tol, "gradient stopping tolerance");
  embed->add_option("-o,--output", embed_args.output, "output csv")
      ->required();

  EvaluateArgs evaluate_args;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "embedding accuracy: pcc, distortion, monotonicity");
  evaluate->add_option("--dist", evaluate_args.dist, "distance csv")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--coords", evaluate_args.coords, "embedding csv")
      ->required()
      ->check(CLI::ExistingFile);
  evaluate->add_option("--id-label", evaluate_args.id_label,
                       "label of the identity item");
  evaluate->add_option("--un-label", evaluate_args.un_label,
                       "label of the uniformity item");
  evaluate->add_option("-o,--output", evaluate_args.output, "report csv")
      ->required();

  ScoreArgs score_args;
  CLI::App* score = app.add_subcommand("score",
                                       "election features for map coloring");
  score->add_option("--in", score_args.input, "dataset directory")->required();
  score->add_option("--features", score_args.features,
                    "comma list of borda,copeland,condorcet,cc");
  score->add_option("--k", score_args.k, "committee size (default ceil(m/10))");
  score->add_option("--budget", score_args.budget,
                    "exact-search budget for cc ratios");
  score->add_option("-o,--output", score_args.output, "output csv")->required();

  MapArgs map_args;
  CLI::App* map = app.add_subcommand("map", "render an embedding as svg");
  map->add_option("--coords", map_args.coords, "embedding csv")
      ->required()
      ->check(CLI::ExistingFile);
  map->add_option("--color-by", map_args.color_by,
                  "csv of label,value for coloring (default: label prefix)");
  map->add_option("--title", map_args.title, "map title");
  map->add_option("-o,--output", map_args.output, "output svg")->required();

  IngestArgs ingest_args;
  CLI::App* ingest = app.add_subcommand(
      "ingest", "preprocess real-world ballots into complete elections");
  ingest->add_option("--in", ingest_args.input, "input file or directory")
      ->required();
  ingest->add_flag("--tie-break", ingest_args.tie_break,
                   "break tie groups uniformly at random");
  ingest->add_flag("--complete", ingest_args.complete,
                   "complete prefix votes from reference ballots");
  ingest->add_option("--top-k", ingest_args.top_k,
                     "keep only the k highest-borda candidates");
  ingest->add_option("--resample", ingest_args.resample,
                     "resample to this many votes with replacement");
  ingest->add_option("--seed", ingest_args.seed, "random seed");
  ingest->add_option("-o,--output", ingest_args.output, "output directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (generate->parsed()) return run_generate(generate_args);
    if (dataset->parsed()) return run_dataset(dataset_args);
    if (distance->parsed()) return run_distance(distance_args);
    if (embed->parsed()) return run_embed(embed_args);
    if (evaluate->parsed()) return run_evaluate(evaluate_args);
    if (score->parsed()) return run_score(score_args);
    if (map->parsed()) return run_map(map_args);
    if (ingest->parsed()) return run_ingest(ingest_args);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
