#include "electmap/core.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace electmap {

bool is_permutation_vote(const Vote& v, int m) {
  if (static_cast<int>(v.size()) != m) return false;
  std::vector<char> seen(m, 0);
  for (int c : v) {
    if (c < 0 || c >= m || seen[c]) return false;
    seen[c] = 1;
  }
  return true;
}

std::vector<int> positions_of(const Vote& v) {
  std::vector<int> pos(v.size());
  for (int i = 0; i < static_cast<int>(v.size()); ++i) pos[v[i]] = i;
  return pos;
}

void Election::validate() const {
  if (num_candidates < 1) {
    throw std::invalid_argument("election needs at least one candidate");
  }
  if (votes.empty()) {
    throw std::invalid_argument("election needs at least one vote");
  }
  for (const Vote& v : votes) {
    if (!is_permutation_vote(v, num_candidates)) {
      throw std::invalid_argument("vote is not a permutation of candidates");
    }
  }
  if (!labels.empty() && static_cast<int>(labels.size()) != num_candidates) {
    throw std::invalid_argument("label count does not match candidate count");
  }
}

Election Election::from_votes(int num_candidates, std::vector<Vote> votes,
                              std::vector<std::string> labels) {
  Election e{num_candidates, std::move(votes), std::move(labels)};
  e.validate();
  return e;
}

void PositionMatrix::validate() const {
  if (m < 1 || static_cast<int>(counts.size()) != m) {
    throw std::invalid_argument("position matrix has wrong shape");
  }
  std::vector<long long> col_sum(m, 0);
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(counts[i].size()) != m) {
      throw std::invalid_argument("position matrix has wrong shape");
    }
    long long row_sum = 0;
    for (int j = 0; j < m; ++j) {
      if (counts[i][j] < 0) {
        throw std::invalid_argument("position matrix has a negative entry");
      }
      row_sum += counts[i][j];
      col_sum[j] += counts[i][j];
    }
    if (row_sum != n) {
      throw std::invalid_argument("position matrix row sum differs from n");
    }
  }
  for (int j = 0; j < m; ++j) {
    if (col_sum[j] != n) {
      throw std::invalid_argument("position matrix column sum differs from n");
    }
  }
}

std::vector<Rational> FrequencyMatrix::column(int j) const {
  std::vector<Rational> col(m);
  for (int i = 0; i < m; ++i) col[i] = values[i][j];
  return col;
}

void FrequencyMatrix::validate() const {
  if (m < 1 || static_cast<int>(values.size()) != m) {
    throw std::invalid_argument("frequency matrix has wrong shape");
  }
  const Rational one(1);
  std::vector<Rational> col_sum(m);
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(values[i].size()) != m) {
      throw std::invalid_argument("frequency matrix has wrong shape");
    }
    Rational row_sum;
    for (int j = 0; j < m; ++j) {
      if (values[i][j] < Rational(0) || values[i][j] > one) {
        throw std::invalid_argument("frequency matrix entry outside [0,1]");
      }
      row_sum += values[i][j];
      col_sum[j] += values[i][j];
    }
    if (row_sum != one) {
      throw std::invalid_argument("frequency matrix row does not sum to 1");
    }
  }
  for (int j = 0; j < m; ++j) {
    if (col_sum[j] != one) {
      throw std::invalid_argument("frequency matrix column does not sum to 1");
    }
  }
}

FrequencyMatrix FrequencyMatrix::identity(int m) {
  FrequencyMatrix f{m, std::vector<std::vector<Rational>>(
                           m, std::vector<Rational>(m, Rational(0)))};
  for (int i = 0; i < m; ++i) f.values[i][i] = Rational(1);
  return f;
}

PositionMatrix position_matrix(const Election& e) {
  e.validate();
  int m = e.m();
  PositionMatrix p{m, e.n(),
                   std::vector<std::vector<long long>>(
                       m, std::vector<long long>(m, 0))};
  for (const Vote& v : e.votes) {
    for (int i = 0; i < m; ++i) ++p.counts[i][v[i]];
  }
  return p;
}

FrequencyMatrix frequency_matrix(const Election& e) {
  return frequency_from_position(position_matrix(e));
}

FrequencyMatrix frequency_from_position(const PositionMatrix& p) {
  p.validate();
  FrequencyMatrix f{p.m, std::vector<std::vector<Rational>>(
                             p.m, std::vector<Rational>(p.m, Rational(0)))};
  for (int i = 0; i < p.m; ++i) {
    for (int j = 0; j < p.m; ++j) {
      f.values[i][j] = Rational(p.counts[i][j], p.n);
    }
  }
  return f;
}

namespace {

// Counts inversions of `seq` by merge sort.
long long count_inversions(std::vector<int>& seq, std::vector<int>& scratch,
                           int lo, int hi) {
  if (hi - lo <= 1) return 0;
  int mid = lo + (hi - lo) / 2;
  long long count = count_inversions(seq, scratch, lo, mid) +
                    count_inversions(seq, scratch, mid, hi);
  int a = lo, b = mid, out = lo;
  while (a < mid && b < hi) {
    if (seq[a] <= seq[b]) {
      scratch[out++] = seq[a++];
    } else {
      count += mid - a;
      scratch[out++] = seq[b++];
    }
  }
  while (a < mid) scratch[out++] = seq[a++];
  while (b < hi) scratch[out++] = seq[b++];
  std::copy(scratch.begin() + lo, scratch.begin() + hi, seq.begin() + lo);
  return count;
}

void check_same_length(const Vote& u, const Vote& v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("votes have different lengths");
  }
}

}  // namespace

long long swap_distance(const Vote& u, const Vote& v) {
  check_same_length(u, v);
  std::vector<int> pos_u = positions_of(u);
  int m = static_cast<int>(u.size());
  std::vector<int> seq(m);
  for (int i = 0; i < m; ++i) seq[i] = pos_u[v[i]];
  std::vector<int> scratch(m);
  return count_inversions(seq, scratch, 0, m);
}

long long spearman_distance(const Vote& u, const Vote& v) {
  check_same_length(u, v);
  std::vector<int> pos_u = positions_of(u);
  std::vector<int> pos_v = positions_of(v);
  long long total = 0;
  for (std::size_t c = 0; c < u.size(); ++c) {
    total += std::llabs(pos_u[c] - pos_v[c]);
  }
  return total;
}

}  // namespace electmap
