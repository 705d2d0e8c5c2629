#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "electmap/core.hpp"
#include "electmap/cultures.hpp"

namespace electmap::testing {

// Every top-l prefix must form an interval of the axis.
inline bool is_single_peaked(const Vote& vote, const Vote& axis) {
  std::vector<int> axis_pos = positions_of(axis);
  int lo = axis_pos[vote[0]], hi = lo;
  for (std::size_t l = 1; l < vote.size(); ++l) {
    int p = axis_pos[vote[l]];
    lo = std::min(lo, p);
    hi = std::max(hi, p);
    if (hi - lo != static_cast<int>(l)) return false;
  }
  return true;
}

// Every top-l prefix must form a circular interval: a linear interval of the
// axis or the complement of one.
inline bool is_spoc(const Vote& vote, const Vote& axis) {
  int m = static_cast<int>(vote.size());
  std::vector<int> axis_pos = positions_of(axis);
  std::vector<char> in_prefix(m, 0);
  for (int l = 0; l < m; ++l) {
    in_prefix[axis_pos[vote[l]]] = 1;
    // Count the blocks of consecutive members on the cycle.
    int transitions = 0;
    for (int i = 0; i < m; ++i) {
      if (in_prefix[i] != in_prefix[(i + 1) % m]) ++transitions;
    }
    if (transitions > 2) return false;
  }
  return true;
}

inline bool is_single_peaked_any_axis(const std::vector<Vote>& votes, int m) {
  Vote axis(m);
  std::iota(axis.begin(), axis.end(), 0);
  do {
    bool ok = true;
    for (const Vote& v : votes) {
      if (!is_single_peaked(v, axis)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(axis.begin(), axis.end()));
  return false;
}

inline bool is_spoc_any_axis(const std::vector<Vote>& votes, int m) {
  Vote tail(m - 1);
  std::iota(tail.begin(), tail.end(), 1);
  do {
    Vote axis{0};
    axis.insert(axis.end(), tail.begin(), tail.end());
    bool ok = true;
    for (const Vote& v : votes) {
      if (!is_spoc(v, axis)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(tail.begin(), tail.end()));
  return false;
}

// For each candidate pair, the voters preferring the first must form a
// prefix or a suffix of the given order.
inline bool is_single_crossing_in_order(const std::vector<Vote>& votes, int m) {
  std::vector<std::vector<int>> pos;
  pos.reserve(votes.size());
  for (const Vote& v : votes) pos.push_back(positions_of(v));
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      int crossings = 0;
      for (std::size_t i = 1; i < votes.size(); ++i) {
        bool before = pos[i - 1][a] < pos[i - 1][b];
        bool now = pos[i][a] < pos[i][b];
        if (before != now) ++crossings;
      }
      if (crossings > 1) return false;
    }
  }
  return true;
}

// A vote is consistent with the tree when the leaves under every internal
// node appear as two contiguous child blocks, in either order.
inline bool consistent_with_tree(const GroupSeparableTree& tree, int node,
                                 const Vote& vote, int begin, int end) {
  const GsNode& n = tree.nodes[node];
  if (n.candidate >= 0) {
    return end - begin == 1 && vote[begin] == n.candidate;
  }
  auto leaf_count = [&](int child) {
    int count = 0;
    std::vector<int> stack{child};
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      if (tree.nodes[cur].candidate >= 0) {
        ++count;
      } else {
        stack.push_back(tree.nodes[cur].left);
        stack.push_back(tree.nodes[cur].right);
      }
    }
    return count;
  };
  int left_count = leaf_count(n.left);
  int right_count = leaf_count(n.right);
  if (end - begin != left_count + right_count) return false;
  bool as_is =
      consistent_with_tree(tree, n.left, vote, begin, begin + left_count) &&
      consistent_with_tree(tree, n.right, vote, begin + left_count, end);
  if (as_is) return true;
  return consistent_with_tree(tree, n.right, vote, begin, begin + right_count) &&
         consistent_with_tree(tree, n.left, vote, begin + right_count, end);
}

inline bool consistent_with_tree(const GroupSeparableTree& tree,
                                 const Vote& vote) {
  return consistent_with_tree(tree, tree.root, vote,0,
                              static_cast<int>(vote.size()));
}

}  // namespace electmap::testing
