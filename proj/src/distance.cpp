#include "electmap/distance.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "electmap/assignment.hpp"

namespace electmap {

namespace {

long long gcd_ll(long long a, long long b) {
  while (b != 0) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// lcm with saturation; returns 0 once the value cannot be used for exact
// integer scaling.
long long lcm_capped(long long a, long long b, long long cap) {
  if (a == 0 || b == 0) return 0;
  long long g = gcd_ll(a, b);
  __int128 l = static_cast<__int128>(a / g) * b;
  if (l > cap) return 0;
  return static_cast<long long>(l);
}

std::vector<std::vector<Rational>> column_prefix_sums(
    const FrequencyMatrix& f) {
  std::vector<std::vector<Rational>> prefix(
      f.m, std::vector<Rational>(f.m, Rational(0)));
  for (int c = 0; c < f.m; ++c) {
    Rational acc;
    for (int i = 0; i < f.m; ++i) {
      acc += f.values[i][c];
      prefix[c][i] = acc;
    }
  }
  return prefix;
}

// Column prefix sums scaled to a single integer denominator. All entries of a
// frequency matrix share one, so the whole EMD cost computation stays in
// int64; den = 0 marks denominators too large for that.
struct IntProfile {
  long long den = 0;
  std::vector<std::vector<long long>> prefix;  // [column][position]
};

constexpr long long kProfileDenCap = 2'000'000;

IntProfile build_profile(const FrequencyMatrix& f) {
  IntProfile p;
  long long den = 1;
  for (int i = 0; i < f.m; ++i) {
    for (int j = 0; j < f.m; ++j) {
      den = lcm_capped(den, f.values[i][j].den(), kProfileDenCap);
      if (den == 0) return p;
    }
  }
  p.den = den;
  p.prefix.assign(f.m, std::vector<long long>(f.m, 0));
  for (int c = 0; c < f.m; ++c) {
    long long acc = 0;
    for (int i = 0; i < f.m; ++i) {
      acc += f.values[i][c].num() * (den / f.values[i][c].den());
      p.prefix[c][i] = acc;
    }
  }
  return p;
}

PositionwiseResult positionwise_int(const IntProfile& pa, const IntProfile& pb,
                                    int m) {
  // Costs are integers over the common denominator pa.den * pb.den.
  std::vector<std::vector<long long>> cost(m, std::vector<long long>(m));
  for (int c = 0; c < m; ++c) {
    const std::vector<long long>& col_a = pa.prefix[c];
    for (int d = 0; d < m; ++d) {
      const std::vector<long long>& col_b = pb.prefix[d];
      long long total = 0;
      for (int i = 0; i < m; ++i) {
        total += std::llabs(col_a[i] * pb.den - col_b[i] * pa.den);
      }
      cost[c][d] = total;
    }
  }
  IntAssignment base = solve_assignment(cost);
  PositionwiseResult out;
  out.matching = lexmin_optimal_assignment(cost, base);
  long long total = 0;
  for (int c = 0; c < m; ++c) total += cost[c][out.matching[c]];
  out.distance = Rational(total) / Rational(pa.den * pb.den);
  return out;
}

PositionwiseResult positionwise_rational(const FrequencyMatrix& a,
                                         const FrequencyMatrix& b);

PositionwiseResult positionwise_impl(const FrequencyMatrix& a,
                                     const FrequencyMatrix& b,
                                     const IntProfile& pa,
                                     const IntProfile& pb) {
  int m = a.m;
  if (pa.den > 0 && pb.den > 0) {
    // Keep the Hungarian potentials well inside int64.
    __int128 bound = static_cast<__int128>(m) * m * pa.den * pb.den;
    if (bound <= 200'000'000'000'000'000LL) {
      return positionwise_int(pa, pb, m);
    }
  }
  return positionwise_rational(a, b);
}

}  // namespace

Rational emd(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("emd: vectors have different lengths");
  }
  Rational mass_x, mass_y;
  for (const Rational& v : x) {
    if (v < Rational(0)) throw std::invalid_argument("emd: negative entry");
    mass_x += v;
  }
  for (const Rational& v : y) {
    if (v < Rational(0)) throw std::invalid_argument("emd: negative entry");
    mass_y += v;
  }
  if (mass_x != mass_y) throw std::invalid_argument("emd: mass mismatch");
  Rational total, px, py;
  for (std::size_t i = 0; i < x.size(); ++i) {
    px += x[i];
    py += y[i];
    total += (px - py).abs();
  }
  return total;
}

double emd(const std::vector<double>& x, const std::vector<double>& y,
           double mass_tol) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("emd: vectors have different lengths");
  }
  double mass_x = 0, mass_y = 0;
  for (double v : x) {
    if (v < 0) throw std::invalid_argument("emd: negative entry");
    mass_x += v;
  }
  for (double v : y) {
    if (v < 0) throw std::invalid_argument("emd: negative entry");
    mass_y += v;
  }
  if (std::abs(mass_x - mass_y) > mass_tol) {
    throw std::invalid_argument("emd: mass mismatch");
  }
  double total = 0, px = 0, py = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    px += x[i];
    py += y[i];
    total += std::abs(px - py);
  }
  return total;
}

PositionwiseResult positionwise(const FrequencyMatrix& a,
                                const FrequencyMatrix& b) {
  if (a.m != b.m) {
    throw std::invalid_argument("positionwise: dimension mismatch");
  }
  return positionwise_impl(a, b, build_profile(a), build_profile(b));
}

namespace {

PositionwiseResult positionwise_rational(const FrequencyMatrix& a,
                                         const FrequencyMatrix& b) {
  int m = a.m;
  auto pa = column_prefix_sums(a);
  auto pb = column_prefix_sums(b);
  std::vector<std::vector<Rational>> cost(m, std::vector<Rational>(m));
  for (int c = 0; c < m; ++c) {
    for (int d = 0; d < m; ++d) {
      Rational total;
      for (int i = 0; i < m; ++i) total += (pa[c][i] - pb[d][i]).abs();
      cost[c][d] = total;
    }
  }

  // Scale the costs to integers when the common denominator stays small
  // enough for exact arithmetic inside the matching; otherwise fall back to
  // doubles with a tolerance-based equality graph.
  constexpr long long kDenCap = 2'000'000'000'000LL;
  long long common = 1;
  for (int c = 0; c < m && common != 0; ++c) {
    for (int d = 0; d < m && common != 0; ++d) {
      common = lcm_capped(common, cost[c][d].den(), kDenCap);
    }
  }
  std::vector<int> matching;
  if (common != 0) {
    bool fits = true;
    std::vector<std::vector<long long>> scaled(m, std::vector<long long>(m));
    for (int c = 0; c < m && fits; ++c) {
      for (int d = 0; d < m; ++d) {
        __int128 v = static_cast<__int128>(cost[c][d].num()) *
                     (common / cost[c][d].den());
        if (v > kDenCap * 4) {
          fits = false;
          break;
        }
        scaled[c][d] = static_cast<long long>(v);
      }
    }
    if (fits) {
      IntAssignment base = solve_assignment(scaled);
      matching = lexmin_optimal_assignment(scaled, base);
    }
  }
  if (matching.empty()) {
    std::vector<std::vector<double>> approx(m, std::vector<double>(m));
    double max_cost = 0;
    for (int c = 0; c < m; ++c) {
      for (int d = 0; d < m; ++d) {
        approx[c][d] = cost[c][d].to_double();
        max_cost = std::max(max_cost, approx[c][d]);
      }
    }
    DoubleAssignment base = solve_assignment(approx);
    matching =
        lexmin_optimal_assignment(approx, base, 1e-9 * std::max(1.0, max_cost));
  }

  PositionwiseResult out;
  out.matching = std::move(matching);
  for (int c = 0; c < m; ++c) out.distance += cost[c][out.matching[c]];
  return out;
}

}  // namespace

Rational positionwise_normalizer(int m) {
  if (m < 2) {
    throw std::invalid_argument("normalization needs at least two candidates");
  }
  return Rational(static_cast<long long>(m) * m - 1, 3);
}

Rational normalized_positionwise(const FrequencyMatrix& a,
                                 const FrequencyMatrix& b) {
  return positionwise(a, b).distance / positionwise_normalizer(a.m);
}

int DistanceMatrix::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i) {
    if (labels[i] == label) return i;
  }
  return -1;
}

void DistanceMatrix::validate() const {
  int k = size();
  if (static_cast<int>(values.size()) != k) {
    throw std::invalid_argument("distance matrix has wrong shape");
  }
  for (int i = 0; i < k; ++i) {
    if (static_cast<int>(values[i].size()) != k) {
      throw std::invalid_argument("distance matrix has wrong shape");
    }
    if (values[i][i] != 0.0) {
      throw std::invalid_argument("distance matrix diagonal must be zero");
    }
    for (int j = 0; j < k; ++j) {
      if (values[i][j] < 0.0) {
        throw std::invalid_argument("distance matrix entry is negative");
      }
      if (values[i][j] != values[j][i]) {
        throw std::invalid_argument("distance matrix is not symmetric");
      }
    }
  }
}

DistanceMatrix distance_matrix(const std::vector<FrequencyMatrix>& dataset,
                               bool normalize,
                               const std::vector<std::string>& labels,
                               int workers) {
  if (dataset.size() != labels.size()) {
    throw std::invalid_argument("dataset and labels differ in size");
  }
  int k = static_cast<int>(dataset.size());
  if (k == 0) throw std::invalid_argument("empty dataset");
  int m = dataset[0].m;
  for (const FrequencyMatrix& f : dataset) {
    if (f.m != m) {
      throw std::invalid_argument("dataset mixes candidate counts");
    }
  }

  DistanceMatrix out;
  out.labels = labels;
  out.values.assign(k, std::vector<double>(k, 0.0));

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(k) * (k - 1) / 2);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  }
  Rational normalizer = normalize ? positionwise_normalizer(m) : Rational(1);

  std::vector<IntProfile> profiles(k);
  for (int i = 0; i < k; ++i) profiles[i] = build_profile(dataset[i]);

  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      auto [i, j] = pairs[p];
      Rational d =
          positionwise_impl(dataset[i], dataset[j], profiles[i], profiles[j])
              .distance;
      if (normalize) d = d / normalizer;
      double value = d.to_double();
      out.values[i][j] = value;
      out.values[j][i] = value;
    }
  };

  int threads = workers > 0
                    ? workers
                    : std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  threads = std::min<std::size_t>(threads, std::max<std::size_t>(1, pairs.size()));
  if (threads <= 1) {
    run(0, pairs.size());
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (pairs.size() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      std::size_t begin = t * chunk;
      std::size_t end = std::min(pairs.size(), begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(run, begin, end);
    }
    for (std::thread& th : pool) th.join();
  }
  return out;
}

}  // namespace electmap
