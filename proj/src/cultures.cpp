#include "electmap/cultures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace electmap {

void CultureSpec::validate() const {
  if (m < 1) throw std::invalid_argument("culture needs m >= 1");
  if (n < 1) throw std::invalid_argument("culture needs n >= 1");
  switch (kind) {
    case Kind::Urn:
      if (!alpha_from_gamma && alpha < 0) {
        throw std::invalid_argument("urn alpha must be non-negative");
      }
      break;
    case Kind::Mallows:
      if (!norm_phi_uniform && (norm_phi < 0 || norm_phi > 1)) {
        throw std::invalid_argument("norm-phi must lie in [0,1]");
      }
      break;
    case Kind::GroupSeparable:
    case Kind::SingleCrossing:
      if (m < 2) throw std::invalid_argument("model needs m >= 2");
      break;
    case Kind::Spoc:
      if (m < 3) throw std::invalid_argument("spoc needs m >= 3");
      break;
    case Kind::Euclidean:
      if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
      break;
    default:
      break;
  }
}

std::string CultureSpec::text() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::IC: return "ic";
    case Kind::Urn:
      out << "urn:alpha=";
      if (alpha_from_gamma) {
        out << "gamma";
      } else {
        out << alpha;
      }
      return out.str();
    case Kind::Mallows:
      out << "mallows:normphi=";
      if (norm_phi_uniform) {
        out << "uniform";
      } else {
        out << norm_phi;
      }
      return out.str();
    case Kind::SPConitzer: return "conitzer";
    case Kind::SPWalsh: return "walsh";
    case Kind::Spoc: return "spoc";
    case Kind::SingleCrossing: return "single_crossing";
    case Kind::GroupSeparable:
      return tree == Tree::Balanced ? "gs:balanced" : "gs:caterpillar";
    case Kind::Euclidean:
      out << (shape == Shape::Cube ? "cube" : "sphere") << ":dim=" << dim;
      return out.str();
  }
  throw std::logic_error("unknown culture kind");
}

std::string CultureSpec::family() const {
  switch (kind) {
    case Kind::IC: return "ic";
    case Kind::Urn: return "urn";
    case Kind::Mallows: return "mallows";
    case Kind::SPConitzer: return "conitzer";
    case Kind::SPWalsh: return "walsh";
    case Kind::Spoc: return "spoc";
    case Kind::SingleCrossing: return "single_crossing";
    case Kind::GroupSeparable:
      return tree == Tree::Balanced ? "gs_balanced" : "gs_caterpillar";
    case Kind::Euclidean:
      return (shape == Shape::Cube ? "cube" : "sphere") +
             std::to_string(dim) + "d";
  }
  throw std::logic_error("unknown culture kind");
}

CultureSpec CultureSpec::parse(const std::string& text) {
  CultureSpec spec;
  std::string head = text, params;
  if (std::size_t colon = text.find(':'); colon != std::string::npos) {
    head = text.substr(0, colon);
    params = text.substr(colon + 1);
  }
  auto need_param = [&](const std::string& key) {
    std::string prefix = key + "=";
    if (params.rfind(prefix, 0) != 0) {
      throw std::invalid_argument("culture '" + head + "' expects " + prefix +
                                  "...");
    }
    return params.substr(prefix.size());
  };
  if (head == "ic") {
    spec.kind = Kind::IC;
  } else if (head == "urn") {
    spec.kind = Kind::Urn;
    std::string value = need_param("alpha");
    if (value == "gamma") {
      spec.alpha_from_gamma = true;
    } else {
      spec.alpha = std::stod(value);
    }
  } else if (head == "mallows") {
    spec.kind = Kind::Mallows;
    std::string value = need_param("normphi");
    if (value == "uniform") {
      spec.norm_phi_uniform = true;
    } else {
      spec.norm_phi = std::stod(value);
    }
  } else if (head == "conitzer") {
    spec.kind = Kind::SPConitzer;
  } else if (head == "walsh") {
    spec.kind = Kind::SPWalsh;
  } else if (head == "spoc") {
    spec.kind = Kind::Spoc;
  } else if (head == "single_crossing") {
    spec.kind = Kind::SingleCrossing;
  } else if (head == "gs") {
    spec.kind = Kind::GroupSeparable;
    if (params == "balanced") {
      spec.tree = Tree::Balanced;
    } else if (params == "caterpillar") {
      spec.tree = Tree::Caterpillar;
    } else {
      throw std::invalid_argument("gs expects 'balanced' or 'caterpillar'");
    }
  } else if (head == "cube" || head == "sphere") {
    spec.kind = Kind::Euclidean;
    spec.shape = head == "cube" ? Shape::Cube : Shape::Sphere;
    spec.dim = std::stoi(need_param("dim"));
  } else {
    throw std::invalid_argument("unknown culture: " + text);
  }
  return spec;
}

Vote random_permutation(int m, RandomSource& rng) {
  Vote v(m);
  std::iota(v.begin(), v.end(), 0);
  rng.shuffle(v);
  return v;
}

Vote sample_urn_vote(int m, double alpha, UrnState& state, RandomSource& rng) {
  std::size_t k = state.prior.size();
  Vote v;
  if (k > 0 && alpha > 0) {
    double k_alpha = static_cast<double>(k) * alpha;
    double copy_probability = k_alpha / (1.0 + k_alpha);
    if (rng.real01() < copy_probability) {
      v = state.prior[rng.below(k)];
    }
  }
  if (v.empty()) v = random_permutation(m, rng);
  state.prior.push_back(v);
  return v;
}

double mallows_expected_swap(int m, double phi) {
  if (phi <= 0.0) return 0.0;
  if (phi >= 1.0) return m * (m - 1) / 4.0;
  // Sum of per-insertion expected displacements; equivalent to the closed
  // form m*phi/(1-phi) - sum_i i*phi^i/(1-phi^i) but stable near phi = 1.
  double expected = 0.0;
  for (int j = 2; j <= m; ++j) {
    double numer = 0.0, denom = 0.0, power = 1.0;
    for (int t = 0; t < j; ++t) {
      numer += t * power;
      denom += power;
      power *= phi;
    }
    expected += numer / denom;
  }
  return expected;
}

double phi_from_norm_phi(int m, double norm_phi) {
  if (m < 2) throw std::invalid_argument("norm-phi needs m >= 2");
  if (norm_phi < 0 || norm_phi > 1) {
    throw std::invalid_argument("norm-phi must lie in [0,1]");
  }
  if (norm_phi == 0) return 0.0;
  if (norm_phi == 1) return 1.0;
  double max_swap = m * (m - 1) / 2.0;
  double target = norm_phi / 2.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double value = mallows_expected_swap(m, mid) / max_swap;
    if (std::abs(value - target) <= 1e-10) return mid;
    if (value < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

Vote sample_mallows_vote(int m, double phi, const Vote& center,
                         RandomSource& rng) {
  if (static_cast<int>(center.size()) != m) {
    throw std::invalid_argument("center has wrong length");
  }
  Vote out;
  out.reserve(m);
  for (int j = 1; j <= m; ++j) {
    // Insert the candidate at center rank j with displacement t from the
    // bottom of the current list, weight phi^t.
    double total;
    if (phi == 1.0) {
      total = j;
    } else {
      total = (1.0 - std::pow(phi, j)) / (1.0 - phi);
    }
    double x = rng.real01() * total;
    int t = 0;
    double weight = 1.0, acc = 1.0;
    while (t < j - 1 && x > acc) {
      weight *= phi;
      ++t;
      acc += weight;
    }
    out.insert(out.begin() + (j - 1 - t), center[j - 1]);
  }
  return out;
}

Vote sample_sp_conitzer_vote(const Vote& axis, RandomSource& rng) {
  int m = static_cast<int>(axis.size());
  int start = rng.below_int(m);
  int lo = start, hi = start;
  Vote v;
  v.reserve(m);
  v.push_back(axis[start]);
  while (static_cast<int>(v.size()) < m) {
    bool can_lo = lo > 0;
    bool can_hi = hi < m - 1;
    bool take_lo = can_lo && (!can_hi || rng.below(2) == 0);
    if (take_lo) {
      v.push_back(axis[--lo]);
    } else {
      v.push_back(axis[++hi]);
    }
  }
  return v;
}

Vote sample_sp_walsh_vote(const Vote& axis, RandomSource& rng) {
  int m = static_cast<int>(axis.size());
  int lo = 0, hi = m - 1;
  Vote v(m);
  for (int position = m - 1; position >= 0; --position) {
    bool take_lo = lo == hi || rng.below(2) == 0;
    v[position] = take_lo ? axis[lo++] : axis[hi--];
  }
  return v;
}

Vote sample_spoc_vote(const Vote& circular_axis, RandomSource& rng) {
  int m = static_cast<int>(circular_axis.size());
  if (m < 3) throw std::invalid_argument("spoc needs m >= 3");
  int start = rng.below_int(m);
  int left = start, right = start;
  Vote v;
  v.reserve(m);
  v.push_back(circular_axis[start]);
  while (static_cast<int>(v.size()) < m) {
    int remaining = m - static_cast<int>(v.size());
    if (remaining == 1) {
      // Both arc ends point at the single unused candidate.
      left = (left - 1 + m) % m;
      v.push_back(circular_axis[left]);
      break;
    }
    if (rng.below(2) == 0) {
      left = (left - 1 + m) % m;
      v.push_back(circular_axis[left]);
    } else {
      right = (right + 1) % m;
      v.push_back(circular_axis[right]);
    }
  }
  return v;
}

std::vector<Vote> single_crossing_domain(int m, RandomSource& rng) {
  if (m < 2) throw std::invalid_argument("single crossing needs m >= 2");
  Vote v(m);
  std::iota(v.begin(), v.end(), 0);
  std::vector<Vote> domain{v};
  std::vector<int> pos = positions_of(v);
  Vote target(m);
  for (int i = 0; i < m; ++i) target[i] = m - 1 - i;
  while (v != target) {
    int j = rng.below_int(m);  // candidate name
    int p = pos[j];
    if (p == 0) continue;
    int i = v[p - 1];
    if (i < j) {
      std::swap(v[p - 1], v[p]);
      pos[i] = p;
      pos[j] = p - 1;
      domain.push_back(v);
    }
  }
  // Random renaming applied to the whole domain.
  Vote renaming = random_permutation(m, rng);
  for (Vote& order : domain) {
    for (int& c : order) c = renaming[c];
  }
  return domain;
}

Election sample_single_crossing_election(int m, int n, RandomSource& rng) {
  std::vector<Vote> domain = single_crossing_domain(m, rng);
  std::vector<Vote> votes;
  votes.reserve(n);
  for (int i = 0; i < n; ++i) votes.push_back(domain[rng.below(domain.size())]);
  return Election::from_votes(m, std::move(votes));
}

namespace {

int build_balanced_node(std::vector<GsNode>& nodes, int lo, int hi) {
  int size = hi - lo;
  if (size == 1) {
    nodes.push_back({-1, -1, lo});
    return static_cast<int>(nodes.size()) - 1;
  }
  int left_count;
  if (size == 2) {
    left_count = 1;
  } else {
    int k = 0;
    while ((1 << k) < size) ++k;  // smallest power of two >= size
    int base = 1 << (k - 1);
    int extra = size - base;
    left_count = base / 2 + std::min(extra, base / 2);
  }
  int left = build_balanced_node(nodes, lo, lo + left_count);
  int right = build_balanced_node(nodes, lo + left_count, hi);
  nodes.push_back({left, right, -1});
  return static_cast<int>(nodes.size()) - 1;
}

int build_caterpillar_node(std::vector<GsNode>& nodes, int lo, int hi) {
  int size = hi - lo;
  if (size == 1) {
    nodes.push_back({-1, -1, lo});
    return static_cast<int>(nodes.size()) - 1;
  }
  nodes.push_back({-1, -1, lo});
  int left = static_cast<int>(nodes.size()) - 1;
  int right = build_caterpillar_node(nodes, lo + 1, hi);
  nodes.push_back({left, right, -1});
  return static_cast<int>(nodes.size()) - 1;
}

void emit_frontier(const GroupSeparableTree& tree, int node, RandomSource& rng,
                   Vote& out) {
  const GsNode& n = tree.nodes[node];
  if (n.candidate >= 0) {
    out.push_back(n.candidate);
    return;
  }
  bool reversed = rng.below(2) == 1;
  emit_frontier(tree, reversed ? n.right : n.left, rng, out);
  emit_frontier(tree, reversed ? n.left : n.right, rng, out);
}

}  // namespace

GroupSeparableTree build_balanced_tree(int m) {
  if (m < 2) throw std::invalid_argument("group separable needs m >= 2");
  GroupSeparableTree tree;
  tree.num_leaves = m;
  tree.root = build_balanced_node(tree.nodes, 0, m);
  return tree;
}

GroupSeparableTree build_caterpillar_tree(int m) {
  if (m < 2) throw std::invalid_argument("group separable needs m >= 2");
  GroupSeparableTree tree;
  tree.num_leaves = m;
  tree.root = build_caterpillar_node(tree.nodes, 0, m);
  return tree;
}

Vote sample_group_separable_vote(const GroupSeparableTree& tree,
                                 RandomSource& rng) {
  Vote out;
  out.reserve(tree.num_leaves);
  emit_frontier(tree, tree.root, rng, out);
  return out;
}

namespace {

void emit_plain_frontier(const GroupSeparableTree& tree, int node, Vote& out) {
  const GsNode& n = tree.nodes[node];
  if (n.candidate >= 0) {
    out.push_back(n.candidate);
    return;
  }
  emit_plain_frontier(tree, n.left, out);
  emit_plain_frontier(tree, n.right, out);
}

}  // namespace

Vote tree_frontier(const GroupSeparableTree& tree) {
  Vote out;
  out.reserve(tree.num_leaves);
  emit_plain_frontier(tree, tree.root, out);
  return out;
}

Vote rank_by_distance(const std::vector<std::vector<double>>& candidate_points,
                      const std::vector<double>& voter_point) {
  int m = static_cast<int>(candidate_points.size());
  std::vector<std::pair<double, int>> order(m);
  for (int c = 0; c < m; ++c) {
    double dist = 0.0;
    for (std::size_t d = 0; d < voter_point.size(); ++d) {
      double delta = candidate_points[c][d] - voter_point[d];
      dist += delta * delta;
    }
    order[c] = {dist, c};
  }
  std::sort(order.begin(), order.end());
  Vote v(m);
  for (int i = 0; i < m; ++i) v[i] = order[i].second;
  return v;
}

Election sample_euclidean_election(int m, int n, int dim,
                                   CultureSpec::Shape shape,
                                   RandomSource& rng) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  auto draw_point = [&](std::vector<double>& point) {
    point.resize(dim);
    if (shape == CultureSpec::Shape::Cube) {
      for (double& c : point) c = 2.0 * rng.real01() - 1.0;
    } else {
      double norm = 0.0;
      do {
        norm = 0.0;
        for (double& c : point) {
          c = rng.normal();
          norm += c * c;
        }
      } while (norm < 1e-24);
      norm = std::sqrt(norm);
      for (double& c : point) c /= norm;
    }
  };
  std::vector<std::vector<double>> candidates(m), voters(n);
  for (auto& p : candidates) draw_point(p);
  for (auto& p : voters) draw_point(p);

  std::vector<Vote> votes;
  votes.reserve(n);
  for (const auto& voter : voters) {
    votes.push_back(rank_by_distance(candidates, voter));
  }
  return Election::from_votes(m, std::move(votes));
}

Election sample(const CultureSpec& spec, RandomSource& rng) {
  spec.validate();
  int m = spec.m, n = spec.n;
  std::vector<Vote> votes;
  votes.reserve(n);
  switch (spec.kind) {
    case CultureSpec::Kind::IC:
      for (int i = 0; i < n; ++i) votes.push_back(random_permutation(m, rng));
      break;
    case CultureSpec::Kind::Urn: {
      double alpha = spec.alpha_from_gamma ? rng.gamma(0.8, 1.0) : spec.alpha;
      UrnState state;
      for (int i = 0; i < n; ++i) {
        votes.push_back(sample_urn_vote(m, alpha, state, rng));
      }
      break;
    }
    case CultureSpec::Kind::Mallows: {
      double norm_phi =
          spec.norm_phi_uniform ? rng.real01() : spec.norm_phi;
      double phi = phi_from_norm_phi(m, norm_phi);
      Vote center = random_permutation(m, rng);
      for (int i = 0; i < n; ++i) {
        votes.push_back(sample_mallows_vote(m, phi, center, rng));
      }
      break;
    }
    case CultureSpec::Kind::SPConitzer: {
      Vote axis = random_permutation(m, rng);
      for (int i = 0; i < n; ++i) {
        votes.push_back(sample_sp_conitzer_vote(axis, rng));
      }
      break;
    }
    case CultureSpec::Kind::SPWalsh: {
      Vote axis = random_permutation(m, rng);
      for (int i = 0; i < n; ++i) {
        votes.push_back(sample_sp_walsh_vote(axis, rng));
      }
      break;
    }
    case CultureSpec::Kind::Spoc: {
      Vote axis = random_permutation(m, rng);
      for (int i = 0; i < n; ++i) votes.push_back(sample_spoc_vote(axis, rng));
      break;
    }
    case CultureSpec::Kind::SingleCrossing:
      return sample_single_crossing_election(m, n, rng);
    case CultureSpec::Kind::GroupSeparable: {
      GroupSeparableTree tree = spec.tree == CultureSpec::Tree::Balanced
                                    ? build_balanced_tree(m)
                                    : build_caterpillar_tree(m);
      for (int i = 0; i < n; ++i) {
        votes.push_back(sample_group_separable_vote(tree, rng));
      }
      break;
    }
    case CultureSpec::Kind::Euclidean:
      return sample_euclidean_election(m, n, spec.dim, spec.shape, rng);
  }
  return Election::from_votes(m, std::move(votes));
}

}  // namespace electmap
