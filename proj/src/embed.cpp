#include "electmap/embed.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace electmap {

namespace {

constexpr double kZeroTargetFloor = 1e-6;
constexpr double kFallbackStep = 1e-3;

struct Targets {
  std::vector<std::vector<double>> t;  // floored target distances
  double max_d = 0.0;
};

Targets make_targets(const DistanceMatrix& d) {
  d.validate();
  int k = d.size();
  if (k < 2) throw std::invalid_argument("embedding needs at least two items");
  Targets targets;
  targets.t.assign(k, std::vector<double>(k, 0.0));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      targets.max_d = std::max(targets.max_d, d.at(i, j));
    }
  }
  double floor = kZeroTargetFloor * targets.max_d;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i != j) targets.t[i][j] = std::max(d.at(i, j), floor);
    }
  }
  return targets;
}

using Points = std::vector<std::array<double, 2>>;

// Stress and its gradient for unit-scaled targets. Uniform weights replace
// 1/t^2 during the exploration phase of the optimizer.
double stress_and_gradient(const std::vector<std::vector<double>>& t,
                           const Points& p, Points* grad,
                           bool uniform_weights = false) {
  int k = static_cast<int>(p.size());
  if (grad != nullptr) grad->assign(k, {0.0, 0.0});
  double stress = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      double dx = p[i][0] - p[j][0];
      double dy = p[i][1] - p[j][1];
      double dist = std::sqrt(dx * dx + dy * dy);
      double target = t[i][j];
      double w = uniform_weights ? 1.0 : 1.0 / (target * target);
      double diff = dist - target;
      stress += w * diff * diff;
      if (grad != nullptr) {
        double safe = std::max(dist, 1e-12);
        double coef = 2.0 * w * diff / safe;
        (*grad)[i][0] += coef * dx;
        (*grad)[i][1] += coef * dy;
        (*grad)[j][0] -= coef * dx;
        (*grad)[j][1] -= coef * dy;
      }
    }
  }
  return stress;
}

double inf_norm(const Points& g) {
  double best = 0.0;
  for (const auto& v : g) {
    best = std::max({best, std::abs(v[0]), std::abs(v[1])});
  }
  return best;
}

Points random_points(int k, RandomSource& rng) {
  Points p(k);
  for (auto& point : p) {
    point[0] = rng.real01();
    point[1] = rng.real01();
  }
  return p;
}

struct RunResult {
  Points points;
  double stress = 0.0;
  int iterations = 0;
};

// Safe gradient-descent step: the stress gradient is Lipschitz with constant
// at most twice the largest per-point weight row sum, so 1/(4*rowmax) cannot
// blow up even when tiny targets make some weights huge.
double fallback_step(const std::vector<std::vector<double>>& t, int k,
                     bool uniform_weights) {
  double row_max = 0.0;
  for (int i = 0; i < k; ++i) {
    double row = 0.0;
    for (int j = 0; j < k; ++j) {
      if (j != i) {
        row += uniform_weights ? 2.0 : 2.0 / (t[i][j] * t[i][j]);
      }
    }
    row_max = std::max(row_max, row);
  }
  return std::min(kFallbackStep, 1.0 / (4.0 * row_max));
}

RunResult kk_single_run(const std::vector<std::vector<double>>& t, int k,
                        const EmbedConfig& config, RandomSource rng) {
  Points points = random_points(k, rng);
  RunResult best{points, stress_and_gradient(t, points, nullptr), 0};

  // Two phases over the same iteration budget: a short uniform-weight phase
  // pulls the random start into the right global shape (the 1/t^2 weights
  // otherwise let near-duplicate pairs crush everything into one cluster),
  // then the true objective takes over. Progress is always measured on the
  // true objective.
  int explore_iters = std::min(500, config.max_iter / 4);
  int total_done = 0;
  for (int phase = 0; phase < 2; ++phase) {
    bool uniform = phase == 0;
    int budget = uniform ? explore_iters : config.max_iter - total_done;
    if (budget <= 0) continue;
    Points grad;
    stress_and_gradient(t, points, &grad, uniform);
    Points prev_points, prev_grad;
    const double safe_step = fallback_step(t, k, uniform);
    double step = safe_step;
    for (int it = 0; it < budget; ++it, ++total_done) {
      if (!uniform && inf_norm(grad) < config.tol) break;
      if (it > 0) {
        double ss = 0.0, sy = 0.0;
        for (int i = 0; i < k; ++i) {
          for (int c = 0; c < 2; ++c) {
            double s = points[i][c] - prev_points[i][c];
            double y = grad[i][c] - prev_grad[i][c];
            ss += s * s;
            sy += s * y;
          }
        }
        step = sy > 0 ? ss / sy : safe_step;
      }
      prev_points = points;
      prev_grad = grad;
      for (int i = 0; i < k; ++i) {
        points[i][0] -= step * grad[i][0];
        points[i][1] -= step * grad[i][1];
      }
      double phase_stress = stress_and_gradient(t, points, &grad, uniform);
      double true_stress =
          uniform ? stress_and_gradient(t, points, nullptr) : phase_stress;
      if (true_stress < best.stress) {
        best.points = points;
        best.stress = true_stress;
      }
    }
  }
  best.iterations = total_done;
  return best;
}

RunResult fr_single_run(const std::vector<std::vector<double>>& t, int k,
                        const EmbedConfig& config, RandomSource rng) {
  Points points = random_points(k, rng);
  const double t_max = 0.1;
  // Classic uniform repulsion constant for unit layout area.
  const double k_global_sq = 1.0 / k;
  Points disp(k);
  for (int it = 0; it < config.max_iter; ++it) {
    double temperature =
        t_max * (1.0 - static_cast<double>(it) / config.max_iter) + 1e-6;
    for (auto& v : disp) v = {0.0, 0.0};
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        double dx = points[i][0] - points[j][0];
        double dy = points[i][1] - points[j][1];
        double dist = std::max(1e-9, std::sqrt(dx * dx + dy * dy));
        double ideal = t[i][j];
        double repulsive = (ideal * ideal + k_global_sq) / dist;
        double attractive = dist * dist / ideal;
        double force = (repulsive - attractive) / dist;
        disp[i][0] += force * dx;
        disp[i][1] += force * dy;
        disp[j][0] -= force * dx;
        disp[j][1] -= force * dy;
      }
    }
    for (int i = 0; i < k; ++i) {
      double norm = std::sqrt(disp[i][0] * disp[i][0] + disp[i][1] * disp[i][1]);
      double cap = norm > temperature ? temperature / norm : 1.0;
      points[i][0] += disp[i][0] * cap;
      points[i][1] += disp[i][1] * cap;
    }
  }
  RunResult out;
  out.stress = stress_and_gradient(t, points, nullptr);
  out.points = std::move(points);
  out.iterations = config.max_iter;
  return out;
}

template <typename Runner>
Embedding best_of_restarts(const DistanceMatrix& d, const EmbedConfig& config,
                           const RandomSource& rng, Runner runner) {
  Targets targets = make_targets(d);
  int k = d.size();
  Embedding out;
  out.labels = d.labels;
  if (targets.max_d == 0.0) {
    out.coords.assign(k, {0.0, 0.0});
    return out;
  }
  // Work on unit-scaled targets; weighted stress is scale invariant.
  std::vector<std::vector<double>> t = targets.t;
  for (auto& row : t) {
    for (double& v : row) v /= targets.max_d;
  }

  int restarts = std::max(1, config.restarts);
  std::vector<RunResult> results(restarts);
  std::vector<std::thread> pool;
  pool.reserve(restarts);
  for (int r = 0; r < restarts; ++r) {
    pool.emplace_back([&, r]() {
      results[r] = runner(t, k, config, rng.child(r));
    });
  }
  for (std::thread& th : pool) th.join();

  int best = 0;
  for (int r = 1; r < restarts; ++r) {
    if (results[r].stress < results[best].stress) best = r;
  }
  out.coords = std::move(results[best].points);
  for (auto& point : out.coords) {
    point[0] *= targets.max_d;
    point[1] *= targets.max_d;
  }
  out.stress = results[best].stress;
  out.iterations = results[best].iterations;
  return out;
}

}  // namespace

double embedding_stress(const DistanceMatrix& d,
                        const std::vector<std::array<double, 2>>& coords) {
  Targets targets = make_targets(d);
  if (static_cast<int>(coords.size()) != d.size()) {
    throw std::invalid_argument("coords do not match the distance matrix");
  }
  return stress_and_gradient(targets.t, coords, nullptr);
}

std::vector<std::array<double, 2>> embedding_stress_gradient(
    const DistanceMatrix& d, const std::vector<std::array<double, 2>>& coords) {
  Targets targets = make_targets(d);
  if (static_cast<int>(coords.size()) != d.size()) {
    throw std::invalid_argument("coords do not match the distance matrix");
  }
  Points grad;
  stress_and_gradient(targets.t, coords, &grad);
  return grad;
}

Embedding kamada_kawai(const DistanceMatrix& d, const EmbedConfig& config,
                       const RandomSource& rng) {
  return best_of_restarts(d, config, rng, kk_single_run);
}

Embedding fruchterman_reingold(const DistanceMatrix& d,
                               const EmbedConfig& config,
                               const RandomSource& rng) {
  return best_of_restarts(d, config, rng, fr_single_run);
}

}  // namespace electmap
