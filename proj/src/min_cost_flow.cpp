#include "electmap/min_cost_flow.hpp"

#include <limits>
#include <queue>
#include <stdexcept>

namespace electmap {

namespace {
constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
}

MinCostFlow::MinCostFlow(int num_nodes) : n_(num_nodes), adjacency_(num_nodes) {}

int MinCostFlow::add_edge(int from, int to, long long capacity, long long cost) {
  int id = static_cast<int>(edges_.size());
  edges_.push_back({to, capacity, cost});
  edges_.push_back({from, 0, -cost});
  adjacency_[from].push_back(id);
  adjacency_[to].push_back(id + 1);
  return id;
}

bool MinCostFlow::dijkstra(int source, int sink) {
  dist_.assign(n_, kInf);
  prev_edge_.assign(n_, -1);
  dist_[source] = 0;
  using Item = std::pair<long long, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<Item>> queue;
  queue.push({0, source});
  while (!queue.empty()) {
    auto [d, node] = queue.top();
    queue.pop();
    if (d > dist_[node]) continue;
    for (int id : adjacency_[node]) {
      const Edge& e = edges_[id];
      if (e.capacity <= 0) continue;
      long long nd = d + e.cost + potential_[node] - potential_[e.to];
      if (nd < dist_[e.to]) {
        dist_[e.to] = nd;
        prev_edge_[e.to] = id;
        queue.push({nd, e.to});
      }
    }
  }
  return dist_[sink] < kInf;
}

std::pair<long long, long long> MinCostFlow::solve(int source, int sink,
                                                   long long flow_limit) {
  potential_.assign(n_, 0);
  // Bellman-Ford pass to absorb negative costs into the potentials.
  bool changed = true;
  int rounds = 0;
  while (changed) {
    if (++rounds > n_ + 1) {
      throw std::logic_error("negative cycle in flow network");
    }
    changed = false;
    for (int node = 0; node < n_; ++node) {
      if (potential_[node] >= kInf) continue;
      for (int id : adjacency_[node]) {
        const Edge& e = edges_[id];
        if (e.capacity <= 0) continue;
        if (potential_[node] + e.cost < potential_[e.to]) {
          potential_[e.to] = potential_[node] + e.cost;
          changed = true;
        }
      }
    }
  }

  long long flow = 0, cost = 0;
  while (flow < flow_limit && dijkstra(source, sink)) {
    for (int node = 0; node < n_; ++node) {
      if (dist_[node] < kInf) potential_[node] += dist_[node];
    }
    long long push = flow_limit - flow;
    for (int node = sink; node != source;) {
      const Edge& e = edges_[prev_edge_[node]];
      push = std::min(push, e.capacity);
      node = edges_[prev_edge_[node] ^ 1].to;
    }
    for (int node = sink; node != source;) {
      Edge& e = edges_[prev_edge_[node]];
      e.capacity -= push;
      edges_[prev_edge_[node] ^ 1].capacity += push;
      cost += push * e.cost;
      node = edges_[prev_edge_[node] ^ 1].to;
    }
    flow += push;
  }
  return {flow, cost};
}

long long MinCostFlow::flow_on(int edge_id) const {
  return edges_[edge_id ^ 1].capacity;
}

}  // namespace electmap
