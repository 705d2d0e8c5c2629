#include "electmap/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace electmap {

EmbeddingSummary make_summary(const DistanceMatrix& original,
                              const Embedding& embedding,
                              const std::string& id_label,
                              const std::string& un_label) {
  original.validate();
  int k = original.size();
  if (static_cast<int>(embedding.labels.size()) != k) {
    throw std::invalid_argument("embedding and distances differ in size");
  }
  // Align embedding rows to the distance matrix order by label.
  std::vector<int> where(k, -1);
  for (int i = 0; i < k; ++i) {
    bool found = false;
    for (int j = 0; j < k; ++j) {
      if (embedding.labels[j] == original.labels[i]) {
        where[i] = j;
        found = true;
        break;
      }
    }
    if (!found) {
      throw std::invalid_argument("embedding lacks item: " + original.labels[i]);
    }
  }

  EmbeddingSummary q;
  q.labels = original.labels;
  q.original = original;
  q.embedded.labels = original.labels;
  q.embedded.values.assign(k, std::vector<double>(k, 0.0));
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const auto& a = embedding.coords[where[i]];
      const auto& b = embedding.coords[where[j]];
      double dist = std::hypot(a[0] - b[0], a[1] - b[1]);
      q.embedded.values[i][j] = dist;
      q.embedded.values[j][i] = dist;
    }
  }

  q.norm_a = original.index_of(id_label);
  q.norm_b = original.index_of(un_label);
  if (q.norm_a < 0 || q.norm_b < 0) {
    q.norm_fallback_max = true;
    double best = -1.0;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        if (original.at(i, j) > best) {
          best = original.at(i, j);
          q.norm_a = i;
          q.norm_b = j;
        }
      }
    }
  }
  if (q.original.at(q.norm_a, q.norm_b) <= 0.0 ||
      q.embedded.at(q.norm_a, q.norm_b) <= 0.0) {
    throw std::invalid_argument("normalizer pair has a non-positive distance");
  }
  return q;
}

double pcc_vectors(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("pcc needs two equally sized vectors");
  }
  double mean_x = 0, mean_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= x.size();
  mean_y /= y.size();
  double cov = 0, var_x = 0, var_y = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double dx = x[i] - mean_x;
    double dy = y[i] - mean_y;
    cov += dx * dy;
    var_x += dx * dx;
    var_y += dy * dy;
  }
  if (var_x == 0.0 || var_y == 0.0) {
    throw std::invalid_argument("pcc is undefined for constant distances");
  }
  return cov / std::sqrt(var_x * var_y);
}

double pcc(const EmbeddingSummary& q) {
  int k = static_cast<int>(q.labels.size());
  if (k < 3) throw std::invalid_argument("pcc needs at least three items");
  std::vector<double> x, y;
  x.reserve(k * (k - 1) / 2);
  y.reserve(k * (k - 1) / 2);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      x.push_back(q.original.at(i, j));
      y.push_back(q.embedded.at(i, j));
    }
  }
  return pcc_vectors(x, y);
}

Distortion distortion(const EmbeddingSummary& q, int item,
                      double min_rel_original) {
  int k = static_cast<int>(q.labels.size());
  double norm_orig = q.original.at(q.norm_a, q.norm_b);
  double norm_emb = q.embedded.at(q.norm_a, q.norm_b);
  Distortion out;
  double total = 0.0;
  for (int other = 0; other < k; ++other) {
    if (other == item) continue;
    double orig = q.original.at(item, other);
    if (orig < min_rel_original * norm_orig) continue;
    double a = orig / norm_orig;
    double b = q.embedded.at(item, other) / norm_emb;
    if (a == 0.0 || b == 0.0) {
      ++out.pairs_skipped;
      continue;
    }
    total += std::max(a, b) / std::min(a, b);
    ++out.pairs_used;
  }
  out.amr = out.pairs_used > 0 ? total / out.pairs_used : 1.0;
  return out;
}

double monotonicity(const EmbeddingSummary& q, int item) {
  int k = static_cast<int>(q.labels.size());
  if (k < 3) throw std::invalid_argument("monotonicity needs three items");
  auto sgn = [](double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
  long long concordant = 0, pairs = 0;
  for (int y = 0; y < k; ++y) {
    if (y == item) continue;
    for (int z = y + 1; z < k; ++z) {
      if (z == item) continue;
      ++pairs;
      int orig = sgn(q.original.at(item, y) - q.original.at(item, z));
      int emb = sgn(q.embedded.at(item, y) - q.embedded.at(item, z));
      if (orig == emb) ++concordant;
    }
  }
  return static_cast<double>(concordant) / static_cast<double>(pairs);
}

EvalReport evaluate_embedding(const EmbeddingSummary& q) {
  int k = static_cast<int>(q.labels.size());
  EvalReport report;
  report.labels = q.labels;
  report.pcc = pcc(q);
  report.amr.reserve(k);
  report.mu.reserve(k);
  for (int i = 0; i < k; ++i) {
    report.amr.push_back(distortion(q, i).amr);
    report.mu.push_back(monotonicity(q, i));
  }
  auto mean_std = [](const std::vector<double>& xs, double& mean,
                     double& stddev) {
    mean = 0;
    for (double x : xs) mean += x;
    mean /= xs.size();
    double var = 0;
    for (double x : xs) var += (x - mean) * (x - mean);
    stddev = std::sqrt(var / xs.size());
  };
  mean_std(report.amr, report.amr_mean, report.amr_stddev);
  mean_std(report.mu, report.mu_mean, report.mu_stddev);
  return report;
}

}  // namespace electmap
