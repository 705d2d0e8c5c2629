#include "electmap/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "electmap/rules.hpp"

namespace electmap {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : line) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(int line, const std::string& message) {
  throw std::runtime_error("line " + std::to_string(line) + ": " + message);
}

long long parse_ll(const std::string& text, int line, const std::string& what) {
  try {
    std::size_t used = 0;
    long long value = std::stoll(trim(text), &used);
    if (used != trim(text).size()) parse_fail(line, "malformed " + what);
    return value;
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception&) {
    parse_fail(line, "malformed " + what);
  }
}

double parse_double(const std::string& text, int line, const std::string& what) {
  try {
    std::size_t used = 0;
    double value = std::stod(trim(text), &used);
    if (used != trim(text).size()) parse_fail(line, "malformed " + what);
    return value;
  } catch (const std::runtime_error&) {
    throw;
  } catch (const std::exception&) {
    parse_fail(line, "malformed " + what);
  }
}

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::string format_fixed(double v, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", digits, v);
  return buffer;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string write_election(const Election& e) {
  e.validate();
  std::ostringstream out;
  out << e.m() << "\n";
  for (int c = 0; c < e.m(); ++c) {
    if (!e.labels.empty()) {
      out << e.labels[c] << "\n";
    } else {
      out << "c" << (c + 1) << "\n";
    }
  }
  out << e.n() << "\n";
  std::size_t i = 0;
  while (i < e.votes.size()) {
    std::size_t j = i;
    while (j < e.votes.size() && e.votes[j] == e.votes[i]) ++j;
    out << (j - i) << ": ";
    for (int p = 0; p < e.m(); ++p) {
      if (p > 0) out << ",";
      out << e.votes[i][p] + 1;
    }
    out << "\n";
    i = j;
  }
  return out.str();
}

namespace {

struct VoteLine {
  long long count = 0;
  std::vector<std::vector<int>> groups;  // singletons unless braces were used
  bool has_tie = false;
};

// Parses "count: 1,{2,4},3"; candidates are 1-based in files.
VoteLine parse_vote_line(const std::string& line, int line_no, int m) {
  VoteLine out;
  std::size_t colon = line.find(':');
  if (colon == std::string::npos) parse_fail(line_no, "expected 'count:'");
  out.count = parse_ll(line.substr(0, colon), line_no, "vote count");
  if (out.count <= 0) parse_fail(line_no, "vote count must be positive");
  std::string body = line.substr(colon + 1);
  std::vector<char> seen(m, 0);
  std::size_t pos = 0;
  auto read_id = [&](std::size_t& cursor) {
    std::size_t start = cursor;
    while (cursor < body.size() && (std::isdigit(body[cursor]) != 0)) ++cursor;
    if (cursor == start) parse_fail(line_no, "expected a candidate number");
    long long id = std::stoll(body.substr(start, cursor - start));
    if (id < 1 || id > m) {
      parse_fail(line_no, "candidate " + std::to_string(id) + " out of range");
    }
    int c = static_cast<int>(id - 1);
    if (seen[c]) {
      parse_fail(line_no, "duplicate candidate " + std::to_string(id));
    }
    seen[c] = 1;
    return c;
  };
  auto skip_ws = [&](std::size_t& cursor) {
    while (cursor < body.size() &&
           (body[cursor] == ' ' || body[cursor] == '\t')) {
      ++cursor;
    }
  };
  skip_ws(pos);
  bool expect_item = true;
  while (pos < body.size()) {
    if (!expect_item) {
      if (body[pos] != ',') parse_fail(line_no, "expected ','");
      ++pos;
      skip_ws(pos);
      expect_item = true;
      continue;
    }
    if (body[pos] == '{') {
      ++pos;
      std::vector<int> group;
      for (;;) {
        skip_ws(pos);
        group.push_back(read_id(pos));
        skip_ws(pos);
        if (pos < body.size() && body[pos] == ',') {
          ++pos;
          continue;
        }
        break;
      }
      if (pos >= body.size() || body[pos] != '}') {
        parse_fail(line_no, "unterminated tie group");
      }
      ++pos;
      if (group.size() > 1) out.has_tie = true;
      out.groups.push_back(std::move(group));
    } else {
      out.groups.push_back({read_id(pos)});
    }
    skip_ws(pos);
    expect_item = false;
  }
  if (expect_item && !out.groups.empty()) {
    parse_fail(line_no, "trailing comma");
  }
  if (out.groups.empty()) parse_fail(line_no, "empty vote");
  return out;
}

struct ParsedHeader {
  int m = 0;
  long long n = 0;
  std::vector<std::string> labels;
  std::vector<std::string> lines;
  std::size_t first_vote_line = 0;  // 0-based index into `lines`
};

ParsedHeader parse_header(const std::string& text) {
  ParsedHeader h;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) h.lines.push_back(line);
  if (h.lines.empty()) parse_fail(1, "empty file");
  h.m = static_cast<int>(parse_ll(h.lines[0], 1, "candidate count"));
  if (h.m < 1) parse_fail(1, "candidate count must be positive");
  if (static_cast<int>(h.lines.size()) < h.m + 2) {
    parse_fail(static_cast<int>(h.lines.size()), "truncated header");
  }
  for (int c = 0; c < h.m; ++c) h.labels.push_back(trim(h.lines[1 + c]));
  h.n = parse_ll(h.lines[1 + h.m], h.m + 2, "voter count");
  if (h.n < 1) parse_fail(h.m + 2, "voter count must be positive");
  h.first_vote_line = static_cast<std::size_t>(h.m) + 2;
  return h;
}

}  // namespace

Election parse_election(const std::string& text) {
  ParsedHeader h = parse_header(text);
  Election e;
  e.num_candidates = h.m;
  e.labels = h.labels;
  long long total = 0;
  for (std::size_t i = h.first_vote_line; i < h.lines.size(); ++i) {
    int line_no = static_cast<int>(i) + 1;
    if (trim(h.lines[i]).empty()) continue;
    VoteLine vl = parse_vote_line(h.lines[i], line_no, h.m);
    if (vl.has_tie) parse_fail(line_no, "ties are not allowed here");
    if (static_cast<int>(vl.groups.size()) != h.m) {
      parse_fail(line_no, "vote does not rank every candidate");
    }
    Vote v;
    v.reserve(h.m);
    for (const auto& g : vl.groups) v.push_back(g[0]);
    total += vl.count;
    e.votes.insert(e.votes.end(), static_cast<std::size_t>(vl.count), v);
  }
  if (total != h.n) {
    throw std::runtime_error("vote counts sum to " + std::to_string(total) +
                             " but the header declares " + std::to_string(h.n));
  }
  e.validate();
  return e;
}

Election load_election(const std::filesystem::path& path) {
  try {
    return parse_election(read_text_file(path));
  } catch (const std::exception& ex) {
    throw std::runtime_error(path.string() + ": " + ex.what());
  }
}

void save_election(const Election& e, const std::filesystem::path& path) {
  write_text_file(path, write_election(e));
}

bool IncompleteVote::has_ties() const {
  for (const auto& g : groups) {
    if (g.size() > 1) return true;
  }
  return false;
}

int IncompleteVote::ranked_count() const {
  int total = 0;
  for (const auto& g : groups) total += static_cast<int>(g.size());
  return total;
}

IncompleteElection parse_incomplete_election(const std::string& text) {
  ParsedHeader h = parse_header(text);
  IncompleteElection e;
  e.num_candidates = h.m;
  e.labels = h.labels;
  long long total = 0;
  for (std::size_t i = h.first_vote_line; i < h.lines.size(); ++i) {
    int line_no = static_cast<int>(i) + 1;
    if (trim(h.lines[i]).empty()) continue;
    VoteLine vl = parse_vote_line(h.lines[i], line_no, h.m);
    IncompleteVote v{vl.groups};
    total += vl.count;
    e.votes.insert(e.votes.end(), static_cast<std::size_t>(vl.count), v);
  }
  if (total != h.n) {
    throw std::runtime_error("vote counts sum to " + std::to_string(total) +
                             " but the header declares " + std::to_string(h.n));
  }
  return e;
}

IncompleteVote break_ties(const IncompleteVote& v, RandomSource& rng) {
  IncompleteVote out;
  for (const auto& group : v.groups) {
    std::vector<int> members = group;
    rng.shuffle(members);
    for (int c : members) out.groups.push_back({c});
  }
  return out;
}

std::vector<Vote> complete_votes(const std::vector<std::vector<int>>& prefixes,
                                 int m, RandomSource& rng) {
  for (const auto& p : prefixes) {
    if (static_cast<int>(p.size()) > m) {
      throw std::invalid_argument("prefix longer than the candidate count");
    }
  }
  std::vector<Vote> out;
  out.reserve(prefixes.size());
  for (const auto& prefix : prefixes) {
    std::vector<int> v = prefix;
    std::vector<char> used(m, 0);
    for (int c : v) used[c] = 1;
    while (static_cast<int>(v.size()) < m) {
      // Original votes that strictly extend the current prefix.
      std::vector<int> references;
      for (std::size_t i = 0; i < prefixes.size(); ++i) {
        const auto& candidate = prefixes[i];
        if (candidate.size() <= v.size()) continue;
        if (std::equal(v.begin(), v.end(), candidate.begin())) {
          references.push_back(static_cast<int>(i));
        }
      }
      int next;
      if (!references.empty()) {
        const auto& chosen = prefixes[references[rng.below(references.size())]];
        next = chosen[v.size()];
      } else {
        std::vector<int> missing;
        for (int c = 0; c < m; ++c) {
          if (!used[c]) missing.push_back(c);
        }
        next = missing[rng.below(missing.size())];
      }
      v.push_back(next);
      used[next] = 1;
    }
    out.push_back(std::move(v));
  }
  return out;
}

Election select_top_candidates(const Election& e, int k, RandomSource& rng) {
  e.validate();
  if (k < 1 || k > e.m()) {
    throw std::invalid_argument("top-k out of range");
  }
  if (k == e.m()) return e;
  std::vector<long long> scores = borda_scores(e);
  std::vector<int> order(e.m());
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);  // random tie-breaking among equal scores
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return scores[a] > scores[b];
  });
  std::vector<char> keep(e.m(), 0);
  for (int i = 0; i < k; ++i) keep[order[i]] = 1;
  std::vector<int> new_index(e.m(), -1);
  int next = 0;
  for (int c = 0; c < e.m(); ++c) {
    if (keep[c]) new_index[c] = next++;
  }
  Election out;
  out.num_candidates = k;
  if (!e.labels.empty()) {
    out.labels.resize(k);
    for (int c = 0; c < e.m(); ++c) {
      if (keep[c]) out.labels[new_index[c]] = e.labels[c];
    }
  }
  out.votes.reserve(e.votes.size());
  for (const Vote& v : e.votes) {
    Vote restricted;
    restricted.reserve(k);
    for (int c : v) {
      if (keep[c]) restricted.push_back(new_index[c]);
    }
    out.votes.push_back(std::move(restricted));
  }
  out.validate();
  return out;
}

Election resample_votes(const Election& e, int n_target, RandomSource& rng) {
  e.validate();
  if (n_target < 1) throw std::invalid_argument("resample needs n >= 1");
  Election out;
  out.num_candidates = e.num_candidates;
  out.labels = e.labels;
  out.votes.reserve(n_target);
  for (int i = 0; i < n_target; ++i) {
    out.votes.push_back(e.votes[rng.below(e.votes.size())]);
  }
  return out;
}

Election ingest_election(const IncompleteElection& input,
                         const IngestOptions& options, RandomSource& rng) {
  int m = input.num_candidates;
  std::vector<std::vector<int>> prefixes;
  prefixes.reserve(input.votes.size());
  for (const IncompleteVote& v : input.votes) {
    IncompleteVote strict = v;
    if (v.has_ties()) {
      if (!options.tie_break) {
        throw std::runtime_error("input contains ties; enable tie breaking");
      }
      strict = break_ties(v, rng);
    }
    std::vector<int> prefix;
    prefix.reserve(strict.groups.size());
    for (const auto& g : strict.groups) {
      for (int c : g) prefix.push_back(c);
    }
    prefixes.push_back(std::move(prefix));
  }
  bool any_incomplete = false;
  for (const auto& p : prefixes) {
    if (static_cast<int>(p.size()) < m) any_incomplete = true;
  }
  std::vector<Vote> votes;
  if (any_incomplete) {
    if (!options.complete) {
      throw std::runtime_error("input contains incomplete votes; enable completion");
    }
    votes = complete_votes(prefixes, m, rng);
  } else {
    votes = prefixes;
  }
  Election e = Election::from_votes(m, std::move(votes), input.labels);
  if (options.top_k > 0 && options.top_k < e.m()) {
    e = select_top_candidates(e, options.top_k, rng);
  }
  if (options.resample > 0) {
    e = resample_votes(e, options.resample, rng);
  }
  return e;
}

std::string write_frequency_matrix(const FrequencyMatrix& f) {
  f.validate();
  std::ostringstream out;
  out << f.m << "\n";
  for (int i = 0; i < f.m; ++i) {
    for (int j = 0; j < f.m; ++j) {
      if (j > 0) out << ",";
      out << f.values[i][j].str();
    }
    out << "\n";
  }
  return out.str();
}

FrequencyMatrix parse_frequency_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) parse_fail(1, "empty matrix file");
  int m = static_cast<int>(parse_ll(line, 1, "matrix size"));
  if (m < 1) parse_fail(1, "matrix size must be positive");
  FrequencyMatrix f{m, std::vector<std::vector<Rational>>(
                           m, std::vector<Rational>(m))};
  for (int i = 0; i < m; ++i) {
    if (!std::getline(in, line)) parse_fail(i + 2, "missing matrix row");
    std::vector<std::string> parts = split(trim(line), ',');
    if (static_cast<int>(parts.size()) != m) {
      parse_fail(i + 2, "expected " + std::to_string(m) + " entries");
    }
    for (int j = 0; j < m; ++j) f.values[i][j] = Rational::parse(parts[j]);
  }
  f.validate();
  return f;
}

std::string write_distance_csv(const DistanceMatrix& d) {
  std::ostringstream out;
  for (int i = 0; i < d.size(); ++i) {
    if (i > 0) out << ",";
    out << d.labels[i];
  }
  out << "\n";
  for (int i = 0; i < d.size(); ++i) {
    for (int j = 0; j < d.size(); ++j) {
      if (j > 0) out << ",";
      out << format_double(d.values[i][j]);
    }
    out << "\n";
  }
  return out.str();
}

DistanceMatrix parse_distance_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) parse_fail(1, "empty distance file");
  DistanceMatrix d;
  for (const std::string& label : split(trim(line), ',')) {
    d.labels.push_back(label);
  }
  int k = d.size();
  d.values.assign(k, std::vector<double>(k, 0.0));
  for (int i = 0; i < k; ++i) {
    if (!std::getline(in, line)) parse_fail(i + 2, "missing matrix row");
    std::vector<std::string> parts = split(trim(line), ',');
    if (static_cast<int>(parts.size()) != k) {
      parse_fail(i + 2, "expected " + std::to_string(k) + " entries");
    }
    for (int j = 0; j < k; ++j) {
      d.values[i][j] = parse_double(parts[j], i + 2, "distance");
    }
  }
  d.validate();
  return d;
}

std::string write_embedding_csv(const Embedding& e) {
  std::ostringstream out;
  out << "label,x,y\n";
  for (std::size_t i = 0; i < e.labels.size(); ++i) {
    out << e.labels[i] << "," << format_double(e.coords[i][0]) << ","
        << format_double(e.coords[i][1]) << "\n";
  }
  return out.str();
}

Embedding parse_embedding_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Embedding e;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = trim(line);
    if (body.empty() || body == "label,x,y") continue;
    std::vector<std::string> parts = split(body, ',');
    if (parts.size() != 3) parse_fail(line_no, "expected label,x,y");
    e.labels.push_back(parts[0]);
    e.coords.push_back({parse_double(parts[1], line_no, "x"),
                        parse_double(parts[2], line_no, "y")});
  }
  if (e.labels.empty()) parse_fail(1, "empty embedding file");
  return e;
}

std::string write_eval_report_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "label,amr,mu\n";
  for (std::size_t i = 0; i < report.labels.size(); ++i) {
    out << report.labels[i] << "," << format_double(report.amr[i]) << ","
        << format_double(report.mu[i]) << "\n";
  }
  out << "mean," << format_double(report.amr_mean) << ","
      << format_double(report.mu_mean) << "\n";
  out << "stddev," << format_double(report.amr_stddev) << ","
      << format_double(report.mu_stddev) << "\n";
  out << "pcc," << format_double(report.pcc) << ",\n";
  return out.str();
}

namespace {

CompassKind parse_compass_token(const std::string& token, int line_no) {
  if (token == "id") return CompassKind::Identity;
  if (token == "un") return CompassKind::Uniformity;
  if (token == "st") return CompassKind::Stratification;
  if (token == "an") return CompassKind::Antagonism;
  parse_fail(line_no, "unknown compass item: " + token);
}

}  // namespace

DatasetRecipe parse_recipe(const std::string& text) {
  DatasetRecipe recipe;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = trim(line);
    if (std::size_t hash = body.find('#'); hash != std::string::npos) {
      body = trim(body.substr(0, hash));
    }
    if (body.empty()) continue;
    std::size_t eq = body.find('=');
    std::string maybe_key = eq == std::string::npos ? "" : trim(body.substr(0, eq));
    static const std::set<std::string> kKeys{"m",       "n",          "seed",
                                             "compass", "path_steps", "paths"};
    if (kKeys.count(maybe_key) > 0) {
      std::string key = maybe_key;
      std::string value = trim(body.substr(eq + 1));
      if (key == "m") {
        recipe.m = static_cast<int>(parse_ll(value, line_no, "m"));
      } else if (key == "n") {
        recipe.n = static_cast<int>(parse_ll(value, line_no, "n"));
      } else if (key == "seed") {
        recipe.seed = static_cast<std::uint64_t>(parse_ll(value, line_no, "seed"));
      } else if (key == "compass") {
        recipe.compass = value == "true" || value == "1";
      } else if (key == "path_steps") {
        recipe.path_steps =
            static_cast<int>(parse_ll(value, line_no, "path_steps"));
      } else if (key == "paths") {
        if (value == "none" || value.empty()) continue;
        std::vector<std::string> entries =
            value == "all"
                ? std::vector<std::string>{"id-un", "id-st", "id-an",
                                           "un-st", "un-an", "an-st"}
                : split(value, ',');
        for (const std::string& entry : entries) {
          std::vector<std::string> ends = split(trim(entry), '-');
          if (ends.size() != 2) parse_fail(line_no, "path needs two endpoints");
          recipe.paths.emplace_back(parse_compass_token(trim(ends[0]), line_no),
                                    parse_compass_token(trim(ends[1]), line_no));
        }
      }
    } else {
      std::size_t comma = body.rfind(',');
      if (comma == std::string::npos) {
        parse_fail(line_no, "culture entry needs 'spec,count'");
      }
      std::string spec = trim(body.substr(0, comma));
      int count = static_cast<int>(
          parse_ll(body.substr(comma + 1), line_no, "culture count"));
      if (count < 1) parse_fail(line_no, "culture count must be positive");
      CultureSpec::parse(spec);  // fail early on unknown cultures
      recipe.cultures.emplace_back(spec, count);
    }
  }
  return recipe;
}

std::vector<FrequencyMatrix> Dataset::matrices() const {
  std::vector<FrequencyMatrix> out;
  out.reserve(items.size());
  for (const DatasetItem& item : items) out.push_back(item.freq);
  return out;
}

std::vector<std::string> Dataset::labels() const {
  std::vector<std::string> out;
  out.reserve(items.size());
  for (const DatasetItem& item : items) out.push_back(item.label);
  return out;
}

Dataset build_dataset(const DatasetRecipe& recipe) {
  if (recipe.m < 2) throw std::invalid_argument("dataset needs m >= 2");
  if (recipe.n < 1) throw std::invalid_argument("dataset needs n >= 1");
  Dataset dataset;
  dataset.m = recipe.m;
  dataset.n = recipe.n;
  RandomSource root(recipe.seed);
  std::uint64_t stream = 0;

  for (const auto& [spec_text, count] : recipe.cultures) {
    CultureSpec base = CultureSpec::parse(spec_text);
    base.m = recipe.m;
    base.n = recipe.n;
    for (int i = 0; i < count; ++i) {
      RandomSource rng = root.child(stream++);
      CultureSpec spec = base;
      std::string param;
      if (spec.alpha_from_gamma) {
        spec.alpha = rng.gamma(0.8, 1.0);
        spec.alpha_from_gamma = false;
        param = format_double(spec.alpha);
      }
      if (spec.norm_phi_uniform) {
        spec.norm_phi = rng.real01();
        spec.norm_phi_uniform = false;
        param = format_double(spec.norm_phi);
      }
      Election e = sample(spec, rng);
      char suffix[16];
      std::snprintf(suffix, sizeof(suffix), "_%03d", i);
      DatasetItem item;
      item.label = base.family() + suffix;
      item.culture = spec_text;
      item.param = param;
      item.freq = frequency_matrix(e);
      item.election = std::move(e);
      dataset.items.push_back(std::move(item));
    }
  }

  if (recipe.compass) {
    for (CompassKind kind :
         {CompassKind::Identity, CompassKind::Uniformity,
          CompassKind::Stratification, CompassKind::Antagonism}) {
      DatasetItem item;
      item.label = compass_name(kind);
      item.culture = "compass";
      item.freq = compass_matrix(kind, recipe.m);
      dataset.items.push_back(std::move(item));
    }
  }

  for (const auto& [first, second] : recipe.paths) {
    FrequencyMatrix x = compass_matrix(first, recipe.m);
    FrequencyMatrix y = compass_matrix(second, recipe.m);
    // convex_path(y, x, s)[k-1] puts weight (s+1-k)/(s+1) on x, so the items
    // run from near `first` to near `second`.
    std::vector<FrequencyMatrix> path = convex_path(y, x, recipe.path_steps);
    std::string base_name = "path_";
    base_name += compass_name(first);
    base_name += "_";
    base_name += compass_name(second);
    for (std::size_t k = 0; k < path.size(); ++k) {
      char suffix[16];
      std::snprintf(suffix, sizeof(suffix), "_%02zu", k + 1);
      DatasetItem item;
      item.label = base_name + suffix;
      item.culture = "path";
      item.freq = std::move(path[k]);
      dataset.items.push_back(std::move(item));
    }
  }
  if (dataset.items.empty()) {
    throw std::invalid_argument("recipe produces an empty dataset");
  }
  return dataset;
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ostringstream manifest;
  manifest << "index,label,type,file,culture,param\n";
  manifest << "# m=" << dataset.m << " n=" << dataset.n << "\n";
  for (std::size_t i = 0; i < dataset.items.size(); ++i) {
    const DatasetItem& item = dataset.items[i];
    char prefix[16];
    std::snprintf(prefix, sizeof(prefix), "%04zu_", i);
    std::string file;
    if (item.election.has_value()) {
      file = std::string(prefix) + item.label + ".soc";
      write_text_file(dir / file, write_election(*item.election));
    } else {
      file = std::string(prefix) + item.label + ".freq.csv";
      write_text_file(dir / file, write_frequency_matrix(item.freq));
    }
    manifest << i << "," << item.label << ","
             << (item.election.has_value() ? "election" : "matrix") << ","
             << file << "," << item.culture << "," << item.param << "\n";
  }
  write_text_file(dir / "manifest.csv", manifest.str());
}

Dataset load_dataset(const std::filesystem::path& dir) {
  std::string manifest = read_text_file(dir / "manifest.csv");
  std::istringstream in(manifest);
  std::string line;
  Dataset dataset;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = trim(line);
    if (body.empty() || body == "index,label,type,file,culture,param") continue;
    if (body[0] == '#') {
      // Optional metadata comment: "# m=10 n=100".
      std::istringstream meta(body.substr(1));
      std::string token;
      while (meta >> token) {
        if (token.rfind("m=", 0) == 0) dataset.m = std::stoi(token.substr(2));
        if (token.rfind("n=", 0) == 0) dataset.n = std::stoll(token.substr(2));
      }
      continue;
    }
    std::vector<std::string> parts = split(body, ',');
    if (parts.size() < 6) parse_fail(line_no, "malformed manifest row");
    DatasetItem item;
    item.label = parts[1];
    item.culture = parts[4];
    item.param = parts[5];
    std::string file = parts[3];
    if (parts[2] == "election") {
      Election e = load_election(dir / file);
      item.freq = frequency_matrix(e);
      item.election = std::move(e);
    } else {
      item.freq = parse_frequency_matrix(read_text_file(dir / file));
    }
    if (dataset.m == 0) dataset.m = item.freq.m;
    dataset.items.push_back(std::move(item));
  }
  if (dataset.items.empty()) {
    throw std::runtime_error("dataset at " + dir.string() + " is empty");
  }
  return dataset;
}

NormPhiFit fit_norm_phi(const std::vector<FrequencyMatrix>& target, int m,
                        int n, double grid_step, int samples_per_point,
                        RandomSource& rng) {
  if (target.empty()) throw std::invalid_argument("empty fitting target");
  if (grid_step <= 0 || grid_step > 1) {
    throw std::invalid_argument("grid step must lie in (0, 1]");
  }
  if (samples_per_point < 1) {
    throw std::invalid_argument("need at least one sample per grid point");
  }
  for (const FrequencyMatrix& f : target) {
    if (f.m != m) throw std::invalid_argument("target matrices must share m");
  }
  NormPhiFit best;
  bool first = true;
  std::uint64_t stream = 0;
  for (int g = 0;; ++g) {
    double norm_phi = g * grid_step;
    if (norm_phi > 1.0 + 1e-12) break;
    norm_phi = std::min(norm_phi, 1.0);
    CultureSpec spec;
    spec.kind = CultureSpec::Kind::Mallows;
    spec.m = m;
    spec.n = n;
    spec.norm_phi = norm_phi;
    std::vector<double> distances;
    distances.reserve(static_cast<std::size_t>(samples_per_point) * target.size());
    for (int s = 0; s < samples_per_point; ++s) {
      RandomSource sample_rng = rng.child(stream++);
      FrequencyMatrix f = frequency_matrix(sample(spec, sample_rng));
      for (const FrequencyMatrix& t : target) {
        distances.push_back(normalized_positionwise(f, t).to_double());
      }
    }
    double mean = 0;
    for (double d : distances) mean += d;
    mean /= distances.size();
    if (first || mean < best.avg_distance) {
      double var = 0;
      for (double d : distances) var += (d - mean) * (d - mean);
      best = NormPhiFit{norm_phi, mean, std::sqrt(var / distances.size())};
      first = false;
    }
    if (norm_phi >= 1.0) break;
  }
  return best;
}

namespace {

const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#8c6d31",
    "#843c39", "#7b4173", "#5254a3", "#637939", "#bd9e39", "#ad494a",
};

struct RampStop {
  double t;
  int r, g, b;
};

// Compact viridis-like ramp.
const RampStop kRamp[] = {{0.0, 68, 1, 84},
                          {0.25, 59, 82, 139},
                          {0.5, 33, 145, 140},
                          {0.75, 94, 201, 98},
                          {1.0, 253, 231, 37}};

std::string ramp_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  for (int i = 1; i < 5; ++i) {
    if (t <= kRamp[i].t) {
      double f = (t - kRamp[i - 1].t) / (kRamp[i].t - kRamp[i - 1].t);
      int r = static_cast<int>(std::lround(kRamp[i - 1].r + f * (kRamp[i].r - kRamp[i - 1].r)));
      int g = static_cast<int>(std::lround(kRamp[i - 1].g + f * (kRamp[i].g - kRamp[i - 1].g)));
      int b = static_cast<int>(std::lround(kRamp[i - 1].b + f * (kRamp[i].b - kRamp[i - 1].b)));
      char buffer[8];
      std::snprintf(buffer, sizeof(buffer), "#%02x%02x%02x", r, g, b);
      return buffer;
    }
  }
  return "#fde725";
}

bool is_compass_label(const std::string& label) {
  return label == "ID" || label == "UN" || label == "ST" || label == "AN";
}

}  // namespace

ColorSpec colors_from_labels(const std::vector<std::string>& labels) {
  ColorSpec spec;
  for (const std::string& label : labels) {
    std::string category = label;
    std::size_t underscore = category.find_last_of('_');
    if (underscore != std::string::npos &&
        underscore + 1 < category.size() &&
        std::all_of(category.begin() + underscore + 1, category.end(),
                    [](char c) { return std::isdigit(c) != 0; })) {
      category = category.substr(0, underscore);
    }
    spec.category[label] = category;
  }
  return spec;
}

std::string render_map_svg(const Embedding& embedding, const ColorSpec& colors,
                           const MapStyle& style) {
  int width = style.width, height = style.height;
  double margin = 50.0;
  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  bool first = true;
  for (const auto& c : embedding.coords) {
    if (!std::isfinite(c[0]) || !std::isfinite(c[1])) {
      throw std::invalid_argument("embedding has non-finite coordinates");
    }
    if (first) {
      min_x = max_x = c[0];
      min_y = max_y = c[1];
      first = false;
    } else {
      min_x = std::min(min_x, c[0]);
      max_x = std::max(max_x, c[0]);
      min_y = std::min(min_y, c[1]);
      max_y = std::max(max_y, c[1]);
    }
  }
  double span_x = std::max(max_x - min_x, 1e-12);
  double span_y = std::max(max_y - min_y, 1e-12);
  double scale = std::min((width - 2 * margin) / span_x,
                          (height - 2 * margin) / span_y);
  auto to_px = [&](double x, double y) {
    double px = margin + (x - min_x) * scale +
                ((width - 2 * margin) - span_x * scale) / 2;
    double py = height - margin - (y - min_y) * scale -
                ((height - 2 * margin) - span_y * scale) / 2;
    return std::pair<double, double>(px, py);
  };

  double value_min = 0, value_max = 1;
  if (colors.numeric && !colors.values.empty()) {
    first = true;
    for (const auto& [label, value] : colors.values) {
      if (first) {
        value_min = value_max = value;
        first = false;
      } else {
        value_min = std::min(value_min, value);
        value_max = std::max(value_max, value);
      }
    }
    if (value_max == value_min) value_max = value_min + 1;
  }

  std::vector<std::string> category_order;
  std::map<std::string, std::string> category_color;
  if (!colors.numeric) {
    std::set<std::string> seen;
    for (const std::string& label : embedding.labels) {
      auto it = colors.category.find(label);
      std::string cat = it != colors.category.end() ? it->second : "other";
      if (seen.insert(cat).second) category_order.push_back(cat);
    }
    std::sort(category_order.begin(), category_order.end());
    for (std::size_t i = 0; i < category_order.size(); ++i) {
      category_color[category_order[i]] =
          kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
    }
  }

  auto color_of = [&](const std::string& label) -> std::string {
    if (colors.numeric) {
      auto it = colors.values.find(label);
      if (it == colors.values.end()) return "#999999";
      return ramp_color((it->second - value_min) / (value_max - value_min));
    }
    auto it = colors.category.find(label);
    if (it == colors.category.end()) return "#999999";
    return category_color[it->second];
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      << "viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\"/>\n";
  if (!style.title.empty()) {
    svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << style.title
        << "</text>\n";
  }
  for (std::size_t i = 0; i < embedding.labels.size(); ++i) {
    const std::string& label = embedding.labels[i];
    auto [px, py] = to_px(embedding.coords[i][0], embedding.coords[i][1]);
    std::string fill = color_of(label);
    if (is_compass_label(label)) {
      double s = style.point_radius * 2.2;
      svg << "<rect x=\"" << format_fixed(px - s / 2, 2) << "\" y=\""
          << format_fixed(py - s / 2, 2) << "\" width=\"" << format_fixed(s, 2)
          << "\" height=\"" << format_fixed(s, 2)
          << "\" fill=\"#222222\" stroke=\"black\"/>\n";
      svg << "<text x=\"" << format_fixed(px + s, 2) << "\" y=\""
          << format_fixed(py + 4, 2)
          << "\" font-family=\"sans-serif\" font-size=\"13\">" << label
          << "</text>\n";
    } else {
      svg << "<circle cx=\"" << format_fixed(px, 2) << "\" cy=\""
          << format_fixed(py, 2) << "\" r=\""
          << format_fixed(style.point_radius, 2) << "\" fill=\"" << fill
          << "\" fill-opacity=\"0.8\"/>\n";
    }
  }
  // Legend.
  double lx = 12, ly = 40;
  if (colors.numeric) {
    for (int i = 0; i < 5; ++i) {
      svg << "<rect x=\"" << format_fixed(lx + i * 18.0, 2) << "\" y=\""
          << format_fixed(ly, 2) << "\" width=\"18\" height=\"12\" fill=\""
          << ramp_color(i / 4.0) << "\"/>\n";
    }
    svg << "<text x=\"" << format_fixed(lx, 2) << "\" y=\""
        << format_fixed(ly + 26, 2)
        << "\" font-family=\"sans-serif\" font-size=\"11\">"
        << format_fixed(value_min, 3) << " .. " << format_fixed(value_max, 3)
        << "</text>\n";
  } else {
    for (std::size_t i = 0; i < category_order.size(); ++i) {
      double y = ly + 16.0 * static_cast<double>(i);
      svg << "<rect x=\"" << format_fixed(lx, 2) << "\" y=\""
          << format_fixed(y, 2) << "\" width=\"12\" height=\"12\" fill=\""
          << category_color[category_order[i]] << "\"/>\n";
      svg << "<text x=\"" << format_fixed(lx + 16, 2) << "\" y=\""
          << format_fixed(y + 10, 2)
          << "\" font-family=\"sans-serif\" font-size=\"11\">"
          << category_order[i] << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace electmap
