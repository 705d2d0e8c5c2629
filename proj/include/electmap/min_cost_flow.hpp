#pragma once

#include <vector>

namespace electmap {

// Successive-shortest-paths min-cost flow. Negative edge costs are allowed as
// long as the residual graph has no negative cycle (true for acyclic input
// networks); potentials are initialized with Bellman-Ford and maintained with
// Dijkstra afterwards.
class MinCostFlow {
 public:
  explicit MinCostFlow(int num_nodes);

  // Returns the edge id; the reverse edge is id^1.
  int add_edge(int from, int to, long long capacity, long long cost);

  // Sends up to `flow_limit` units; returns (flow sent, total cost).
  std::pair<long long, long long> solve(int source, int sink,
                                        long long flow_limit);

  long long flow_on(int edge_id) const;

 private:
  struct Edge {
    int to;
    long long capacity;
    long long cost;
  };

  bool dijkstra(int source, int sink);

  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<long long> potential_, dist_;
  std::vector<int> prev_edge_;
};

}  // namespace electmap
