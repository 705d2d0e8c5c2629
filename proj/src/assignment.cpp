#include "electmap/assignment.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace electmap {

namespace {

// Hungarian algorithm with potentials, O(m^3). 1-indexed internals.
template <typename C>
void hungarian(const std::vector<std::vector<C>>& cost,
               std::vector<int>& row_to_col, C& total, std::vector<C>& u_out,
               std::vector<C>& v_out) {
  int m = static_cast<int>(cost.size());
  const C kInf = std::numeric_limits<C>::max() / 4;
  std::vector<C> u(m + 1, 0), v(m + 1, 0), minv(m + 1);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  for (int i = 1; i <= m; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = -1;
      C delta = kInf;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        C cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  row_to_col.assign(m, -1);
  total = 0;
  for (int j = 1; j <= m; ++j) {
    row_to_col[p[j] - 1] = j - 1;
    total += cost[p[j] - 1][j - 1];
  }
  u_out.assign(u.begin() + 1, u.end());
  v_out.assign(v.begin() + 1, v.end());
}

// Kuhn augmenting search over the equality subgraph restricted to active
// vertices; columns are scanned in ascending order for determinism.
struct EqualityGraph {
  // adj[r] holds the tight columns of row r, ascending.
  std::vector<std::vector<int>> adj;
  std::vector<char> row_active, col_active;

  bool augment(int row, std::vector<int>& match_col, std::vector<int>& match_row,
               std::vector<char>& visited) const {
    for (int c : adj[row]) {
      if (!col_active[c] || visited[c]) continue;
      visited[c] = 1;
      if (match_col[c] == -1 ||
          augment(match_col[c], match_col, match_row, visited)) {
        match_col[c] = row;
        match_row[row] = c;
        return true;
      }
    }
    return false;
  }
};

// Among the perfect matchings of the equality subgraph, fixes rows 0,1,...
// to the smallest feasible column each.
std::vector<int> lexmin_over_equality_graph(EqualityGraph& graph,
                                            std::vector<int> match_row,
                                            std::vector<int> match_col) {
  int m = static_cast<int>(match_row.size());
  std::vector<int> result(m, -1);
  for (int r = 0; r < m; ++r) {
    bool fixed = false;
    for (int c : graph.adj[r]) {
      if (!graph.col_active[c]) continue;
      if (match_row[r] == c) {
        fixed = true;
      } else {
        // Try to rewire so r gets c; r's and c's current partners must be
        // re-matched to each other through an augmenting path.
        int old_col = match_row[r];
        int old_row = match_col[c];
        match_row[r] = c;
        match_col[c] = r;
        match_row[old_row] = -1;
        match_col[old_col] = -1;
        graph.row_active[r] = 0;
        graph.col_active[c] = 0;
        std::vector<char> visited(m, 0);
        bool ok = graph.augment(old_row, match_col, match_row, visited);
        graph.row_active[r] = 1;
        graph.col_active[c] = 1;
        if (ok) {
          fixed = true;
        } else {
          match_row[r] = old_col;
          match_col[old_col] = r;
          match_row[old_row] = c;
          match_col[c] = old_row;
        }
      }
      if (fixed) {
        result[r] = c;
        graph.row_active[r] = 0;
        graph.col_active[c] = 0;
        break;
      }
    }
    if (!fixed) throw std::logic_error("equality graph lost perfectness");
  }
  return result;
}

}  // namespace

IntAssignment solve_assignment(const std::vector<std::vector<long long>>& cost) {
  IntAssignment out;
  hungarian<long long>(cost, out.row_to_col, out.total, out.u, out.v);
  return out;
}

DoubleAssignment solve_assignment(const std::vector<std::vector<double>>& cost) {
  DoubleAssignment out;
  hungarian<double>(cost, out.row_to_col, out.total, out.u, out.v);
  return out;
}

std::vector<int> lexmin_optimal_assignment(
    const std::vector<std::vector<long long>>& cost,
    const IntAssignment& base) {
  int m = static_cast<int>(cost.size());
  EqualityGraph graph;
  graph.adj.assign(m, {});
  graph.row_active.assign(m, 1);
  graph.col_active.assign(m, 1);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      if (cost[r][c] == base.u[r] + base.v[c]) graph.adj[r].push_back(c);
    }
  }
  std::vector<int> match_row = base.row_to_col;
  std::vector<int> match_col(m, -1);
  for (int r = 0; r < m; ++r) match_col[match_row[r]] = r;
  return lexmin_over_equality_graph(graph, std::move(match_row),
                                    std::move(match_col));
}

std::vector<int> lexmin_optimal_assignment(
    const std::vector<std::vector<double>>& cost, const DoubleAssignment& base,
    double tol) {
  int m = static_cast<int>(cost.size());
  EqualityGraph graph;
  graph.adj.assign(m, {});
  graph.row_active.assign(m, 1);
  graph.col_active.assign(m, 1);
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < m; ++c) {
      if (std::abs(cost[r][c] - (base.u[r] + base.v[c])) <= tol) {
        graph.adj[r].push_back(c);
      }
    }
  }
  std::vector<int> match_row = base.row_to_col;
  std::vector<int> match_col(m, -1);
  for (int r = 0; r < m; ++r) match_col[match_row[r]] = r;
  return lexmin_over_equality_graph(graph, std::move(match_row),
                                    std::move(match_col));
}

}  // namespace electmap
