#include "electmap/compass.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "electmap/min_cost_flow.hpp"

namespace electmap {

std::string compass_name(CompassKind kind) {
  switch (kind) {
    case CompassKind::Identity: return "ID";
    case CompassKind::Uniformity: return "UN";
    case CompassKind::Stratification: return "ST";
    case CompassKind::Antagonism: return "AN";
  }
  throw std::logic_error("unknown compass kind");
}

FrequencyMatrix compass_matrix(CompassKind kind, int m) {
  if (m < 2) throw std::invalid_argument("compass matrix needs m >= 2");
  FrequencyMatrix f{m, std::vector<std::vector<Rational>>(
                           m, std::vector<Rational>(m, Rational(0)))};
  switch (kind) {
    case CompassKind::Identity:
      for (int i = 0; i < m; ++i) f.values[i][i] = Rational(1);
      break;
    case CompassKind::Uniformity:
      for (auto& row : f.values) {
        for (auto& v : row) v = Rational(1, m);
      }
      break;
    case CompassKind::Stratification: {
      if (m % 2 != 0) {
        throw std::invalid_argument("stratification needs an even m");
      }
      int h = m / 2;
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          if ((i < h) == (j < h)) f.values[i][j] = Rational(2, m);
        }
      }
      break;
    }
    case CompassKind::Antagonism:
      for (int i = 0; i < m; ++i) {
        f.values[i][i] += Rational(1, 2);
        f.values[i][m - 1 - i] += Rational(1, 2);
      }
      break;
  }
  return f;
}

FrequencyMatrix reversed_identity(int m) {
  FrequencyMatrix f{m, std::vector<std::vector<Rational>>(
                           m, std::vector<Rational>(m, Rational(0)))};
  for (int i = 0; i < m; ++i) f.values[i][m - 1 - i] = Rational(1);
  return f;
}

std::vector<FrequencyMatrix> convex_path(const FrequencyMatrix& x,
                                         const FrequencyMatrix& y, int steps) {
  if (x.m != y.m) throw std::invalid_argument("convex_path: dimension mismatch");
  if (steps < 1) throw std::invalid_argument("convex_path: steps must be >= 1");
  std::vector<FrequencyMatrix> path;
  path.reserve(steps);
  for (int k = 1; k <= steps; ++k) {
    Rational alpha(k, steps + 1);
    Rational beta = Rational(1) - alpha;
    FrequencyMatrix z{x.m, std::vector<std::vector<Rational>>(
                               x.m, std::vector<Rational>(x.m))};
    for (int i = 0; i < x.m; ++i) {
      for (int j = 0; j < x.m; ++j) {
        z.values[i][j] = alpha * x.values[i][j] + beta * y.values[i][j];
      }
    }
    path.push_back(std::move(z));
  }
  return path;
}

namespace {

// Hopcroft-Karp perfect matching on the nonzero entries of `x`.
// Rows and columns are scanned in ascending order, so the matching is
// deterministic. Returns match_row (row -> column) or empty if none exists.
std::vector<int> perfect_matching_nonzero(
    const std::vector<std::vector<long long>>& x) {
  int m = static_cast<int>(x.size());
  std::vector<std::vector<int>> adj(m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (x[i][j] > 0) adj[i].push_back(j);
    }
  }
  std::vector<int> match_row(m, -1), match_col(m, -1), layer(m);
  const int kInfLayer = m + 1;

  auto bfs = [&]() {
    std::queue<int> queue;
    for (int r = 0; r < m; ++r) {
      if (match_row[r] == -1) {
        layer[r] = 0;
        queue.push(r);
      } else {
        layer[r] = kInfLayer;
      }
    }
    bool found = false;
    while (!queue.empty()) {
      int r = queue.front();
      queue.pop();
      for (int c : adj[r]) {
        int next = match_col[c];
        if (next == -1) {
          found = true;
        } else if (layer[next] == kInfLayer) {
          layer[next] = layer[r] + 1;
          queue.push(next);
        }
      }
    }
    return found;
  };

  std::function<bool(int)> dfs = [&](int r) {
    for (int c : adj[r]) {
      int next = match_col[c];
      if (next == -1 || (layer[next] == layer[r] + 1 && dfs(next))) {
        match_row[r] = c;
        match_col[c] = r;
        return true;
      }
    }
    layer[r] = kInfLayer;
    return false;
  };

  int matched = 0;
  while (matched < m && bfs()) {
    for (int r = 0; r < m; ++r) {
      if (match_row[r] == -1 && dfs(r)) ++matched;
    }
  }
  if (matched < m) return {};
  return match_row;
}

}  // namespace

Election election_from_position_matrix(const PositionMatrix& p) {
  p.validate();
  int m = p.m;
  std::vector<std::vector<long long>> x = p.counts;
  Election e;
  e.num_candidates = m;
  long long remaining = p.n;
  const long long max_steps = static_cast<long long>(m) * m - 2 * m + 2;
  long long steps = 0;
  while (remaining > 0) {
    if (++steps > max_steps) {
      throw std::logic_error("position matrix decomposition did not converge");
    }
    std::vector<int> match = perfect_matching_nonzero(x);
    if (match.empty()) {
      throw std::invalid_argument("matrix admits no vote decomposition");
    }
    long long z = x[0][match[0]];
    for (int i = 1; i < m; ++i) z = std::min(z, x[i][match[i]]);
    Vote v(m);
    for (int i = 0; i < m; ++i) {
      v[i] = match[i];
      x[i][match[i]] -= z;
    }
    e.votes.insert(e.votes.end(), static_cast<std::size_t>(z), v);
    remaining -= z;
  }
  e.validate();
  return e;
}

PositionMatrix round_frequency_matrix(const FrequencyMatrix& x, long long n) {
  x.validate();
  if (n < 1) throw std::invalid_argument("need at least one voter");
  int m = x.m;
  std::vector<std::vector<long long>> floor_part(m, std::vector<long long>(m));
  std::vector<std::vector<Rational>> frac(m, std::vector<Rational>(m));
  long long common_den = 1;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      Rational scaled = x.values[i][j] * Rational(n);
      floor_part[i][j] = scaled.floor();
      frac[i][j] = scaled - Rational(floor_part[i][j]);
      long long g = std::gcd(common_den, frac[i][j].den());
      __int128 lcm = static_cast<__int128>(common_den / g) * frac[i][j].den();
      if (lcm > 4'000'000'000'000'000LL) {
        throw std::overflow_error("frequency matrix denominators too large");
      }
      common_den = static_cast<long long>(lcm);
    }
  }

  std::vector<long long> row_units(m, 0), col_units(m, 0);
  long long total_units = 0;
  for (int i = 0; i < m; ++i) {
    Rational sum;
    for (int j = 0; j < m; ++j) sum += frac[i][j];
    if (!sum.is_integer()) throw std::logic_error("row fraction sum not integral");
    row_units[i] = sum.num();
    total_units += row_units[i];
  }
  for (int j = 0; j < m; ++j) {
    Rational sum;
    for (int i = 0; i < m; ++i) sum += frac[i][j];
    if (!sum.is_integer()) {
      throw std::logic_error("column fraction sum not integral");
    }
    col_units[j] = sum.num();
  }

  PositionMatrix p{m, n, floor_part};
  if (total_units > 0) {
    // Nodes: source, one chain node per cell, one pre-sink per column, sink.
    int source = 0;
    auto cell = [m](int i, int j) { return 1 + i * m + j; };
    int pre_sink = 1 + m * m;
    int sink = pre_sink + m;
    MinCostFlow flow(sink + 1);
    std::vector<std::vector<int>> unit_edge(m, std::vector<int>(m, -1));
    for (int i = 0; i < m; ++i) {
      if (row_units[i] == 0) continue;
      flow.add_edge(source, cell(i, 0), row_units[i], 0);
      for (int j = 0; j + 1 < m; ++j) {
        flow.add_edge(cell(i, j), cell(i, j + 1), row_units[i], 0);
      }
      for (int j = 0; j < m; ++j) {
        if (frac[i][j].is_zero()) continue;
        long long cost = common_den - 2 * (frac[i][j].num() *
                                           (common_den / frac[i][j].den()));
        unit_edge[i][j] = flow.add_edge(cell(i, j), pre_sink + j, 1, cost);
      }
    }
    for (int j = 0; j < m; ++j) {
      if (col_units[j] > 0) {
        flow.add_edge(pre_sink + j, sink, col_units[j], 0);
      }
    }
    auto [sent, cost] = flow.solve(source, sink, total_units);
    (void)cost;
    if (sent != total_units) {
      throw std::logic_error("rounding flow is infeasible");
    }
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        if (unit_edge[i][j] >= 0 && flow.flow_on(unit_edge[i][j]) > 0) {
          ++p.counts[i][j];
        }
      }
    }
  }
  p.validate();
  return p;
}

Election election_from_frequency_matrix(const FrequencyMatrix& x, long long n) {
  return election_from_position_matrix(round_frequency_matrix(x, n));
}

}  // namespace electmap
