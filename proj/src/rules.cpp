#include "electmap/rules.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace electmap {

namespace {

std::vector<std::vector<int>> position_table(const Election& e) {
  std::vector<std::vector<int>> pos;
  pos.reserve(e.votes.size());
  for (const Vote& v : e.votes) pos.push_back(positions_of(v));
  return pos;
}

void check_members(const Election& e, const std::vector<int>& members) {
  if (static_cast<int>(members.size()) > e.m()) {
    throw std::invalid_argument("committee larger than the candidate set");
  }
  if (members.empty()) throw std::invalid_argument("empty committee");
  std::vector<char> seen(e.m(), 0);
  for (int c : members) {
    if (c < 0 || c >= e.m() || seen[c]) {
      throw std::invalid_argument("committee member out of range or repeated");
    }
    seen[c] = 1;
  }
}

long long binomial_capped(int m, int k, long long cap) {
  __int128 value = 1;
  for (int i = 1; i <= k; ++i) {
    value = value * (m - k + i) / i;
    if (value > cap) return cap + 1;
  }
  return static_cast<long long>(value);
}

}  // namespace

PairwiseMatrix pairwise_matrix(const Election& e) {
  e.validate();
  int m = e.m();
  std::vector<std::vector<long long>> wins(m, std::vector<long long>(m, 0));
  for (const Vote& v : e.votes) {
    std::vector<int> pos = positions_of(v);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        if (a != b && pos[a] < pos[b]) ++wins[a][b];
      }
    }
  }
  PairwiseMatrix p{m, std::vector<std::vector<Rational>>(
                          m, std::vector<Rational>(m, Rational(0)))};
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (a != b) p.frac[a][b] = Rational(wins[a][b], e.n());
    }
  }
  return p;
}

std::vector<long long> borda_scores(const Election& e) {
  e.validate();
  int m = e.m();
  std::vector<long long> scores(m, 0);
  for (const Vote& v : e.votes) {
    for (int i = 0; i < m; ++i) scores[v[i]] += m - 1 - i;
  }
  return scores;
}

std::vector<Rational> copeland_scores(const Election& e) {
  PairwiseMatrix p = pairwise_matrix(e);
  const Rational half(1, 2);
  std::vector<Rational> scores(p.m, Rational(0));
  for (int a = 0; a < p.m; ++a) {
    for (int b = 0; b < p.m; ++b) {
      if (a == b) continue;
      if (p.frac[a][b] > half) {
        scores[a] += Rational(1);
      } else if (p.frac[a][b] == half) {
        scores[a] += half;
      }
    }
  }
  return scores;
}

std::optional<int> condorcet_winner(const Election& e) {
  PairwiseMatrix p = pairwise_matrix(e);
  const Rational half(1, 2);
  for (int a = 0; a < p.m; ++a) {
    bool beats_all = true;
    for (int b = 0; b < p.m && beats_all; ++b) {
      if (a != b && !(p.frac[a][b] > half)) beats_all = false;
    }
    if (beats_all) return a;
  }
  return std::nullopt;
}

Rational hb_score(const Election& e, const std::vector<int>& members) {
  e.validate();
  check_members(e, members);
  Rational total;
  std::vector<int> member_positions(members.size());
  for (const Vote& v : e.votes) {
    std::vector<int> pos = positions_of(v);
    for (std::size_t i = 0; i < members.size(); ++i) {
      member_positions[i] = pos[members[i]] + 1;  // 1-based
    }
    std::sort(member_positions.begin(), member_positions.end());
    for (std::size_t i = 0; i < member_positions.size(); ++i) {
      total += Rational(member_positions[i] - 1,
                        static_cast<long long>(i) + 1);
    }
  }
  return total;
}

long long cc_score(const Election& e, const std::vector<int>& members) {
  e.validate();
  check_members(e, members);
  long long total = 0;
  for (const Vote& v : e.votes) {
    std::vector<int> pos = positions_of(v);
    int best = std::numeric_limits<int>::max();
    for (int c : members) best = std::min(best, pos[c]);
    total += best;
  }
  return total;
}

Committee sequential_cc(const Election& e, int k) {
  e.validate();
  int m = e.m();
  if (k < 1 || k > m) throw std::invalid_argument("committee size out of range");
  std::vector<std::vector<int>> pos = position_table(e);
  int n = e.n();
  std::vector<int> best(n, std::numeric_limits<int>::max());
  std::vector<char> chosen(m, 0);
  std::vector<int> members;
  for (int round = 0; round < k; ++round) {
    long long best_total = std::numeric_limits<long long>::max();
    int best_candidate = -1;
    for (int c = 0; c < m; ++c) {
      if (chosen[c]) continue;
      long long total = 0;
      for (int v = 0; v < n; ++v) total += std::min(best[v], pos[v][c]);
      if (total < best_total) {
        best_total = total;
        best_candidate = c;
      }
    }
    chosen[best_candidate] = 1;
    members.push_back(best_candidate);
    for (int v = 0; v < n; ++v) {
      best[v] = std::min(best[v], pos[v][best_candidate]);
    }
  }
  std::sort(members.begin(), members.end());
  return Committee{members, Rational(cc_score(e, members))};
}

Committee removal_cc(const Election& e, int k) {
  e.validate();
  int m = e.m();
  if (k < 1 || k > m) throw std::invalid_argument("committee size out of range");
  std::vector<std::vector<int>> pos = position_table(e);
  int n = e.n();
  std::vector<char> in_committee(m, 1);
  int size = m;
  while (size > k) {
    // For each voter, best and second-best member positions.
    std::vector<int> best_pos(n), best_member(n), second_pos(n);
    for (int v = 0; v < n; ++v) {
      int b1 = std::numeric_limits<int>::max(), b2 = b1, who = -1;
      for (int c = 0; c < m; ++c) {
        if (!in_committee[c]) continue;
        int p = pos[v][c];
        if (p < b1) {
          b2 = b1;
          b1 = p;
          who = c;
        } else if (p < b2) {
          b2 = p;
        }
      }
      best_pos[v] = b1;
      best_member[v] = who;
      second_pos[v] = b2;
    }
    std::vector<long long> removal_cost(m, 0);
    for (int v = 0; v < n; ++v) {
      removal_cost[best_member[v]] += second_pos[v] - best_pos[v];
    }
    long long best_cost = std::numeric_limits<long long>::max();
    int victim = -1;
    for (int c = 0; c < m; ++c) {
      if (!in_committee[c]) continue;
      if (removal_cost[c] <= best_cost) {  // ties -> highest index removed
        best_cost = removal_cost[c];
        victim = c;
      }
    }
    in_committee[victim] = 0;
    --size;
  }
  std::vector<int> members;
  for (int c = 0; c < m; ++c) {
    if (in_committee[c]) members.push_back(c);
  }
  return Committee{members, Rational(cc_score(e, members))};
}

Committee exact_cc(const Election& e, int k, long long budget) {
  e.validate();
  int m = e.m();
  if (k < 1 || k > m) throw std::invalid_argument("committee size out of range");
  if (binomial_capped(m, k, budget) > budget) {
    throw std::invalid_argument(
        "search space exceeds the budget; use the greedy heuristics instead");
  }
  std::vector<std::vector<int>> pos = position_table(e);
  int n = e.n();
  std::vector<int> combo(k);
  for (int i = 0; i < k; ++i) combo[i] = i;
  std::vector<int> best_combo;
  long long best_score = std::numeric_limits<long long>::max();
  for (;;) {
    long long total = 0;
    for (int v = 0; v < n && total < best_score; ++v) {
      int best = std::numeric_limits<int>::max();
      for (int c : combo) best = std::min(best, pos[v][c]);
      total += best;
    }
    if (total < best_score) {  // first-in-lex-order wins ties
      best_score = total;
      best_combo = combo;
    }
    int i = k - 1;
    while (i >= 0 && combo[i] == m - k + i) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
  }
  return Committee{best_combo, Rational(best_score)};
}

ApproxRatio approximation_ratio(const Election& e, int k, CcHeuristic algorithm,
                                long long budget) {
  Committee optimum = exact_cc(e, k, budget);
  if (optimum.score.is_zero()) return ApproxRatio{true, 1.0};
  Committee heuristic = algorithm == CcHeuristic::Sequential
                            ? sequential_cc(e, k)
                            : removal_cc(e, k);
  return ApproxRatio{false,
                     (heuristic.score / optimum.score).to_double()};
}

}  // namespace electmap
