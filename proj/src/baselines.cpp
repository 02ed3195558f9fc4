#include "sword/baselines.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace sword {

namespace {

constexpr size_t kDims = std::tuple_size_v<FeatureVector>;

struct BurnInStats {
  std::array<double, kDims> mean{};
  std::array<double, kDims> std{};
  std::array<bool, kDims> active{};
};

BurnInStats burn_in_stats(const std::vector<FeatureVector>& features, int burn_in) {
  if (burn_in < 2) throw std::invalid_argument("burn-in must cover at least 2 steps");
  if (static_cast<int>(features.size()) < burn_in) {
    throw std::invalid_argument("feature stream shorter than burn-in");
  }
  BurnInStats stats;
  for (size_t d = 0; d < kDims; ++d) {
    double sum = 0.0;
    for (int t = 0; t < burn_in; ++t) sum += features[t][d];
    stats.mean[d] = sum / burn_in;
    double ss = 0.0;
    for (int t = 0; t < burn_in; ++t) {
      const double diff = features[t][d] - stats.mean[d];
      ss += diff * diff;
    }
    stats.std[d] = std::sqrt(ss / burn_in);
    stats.active[d] = stats.std[d] > 0.0;
  }
  if (std::none_of(stats.active.begin(), stats.active.end(), [](bool a) { return a; })) {
    throw std::invalid_argument("all feature dimensions are constant over the burn-in");
  }
  return stats;
}

void finalize_detections(ScoreSeries& series, double theta, int cooldown, bool strict) {
  long long tau_prev = -(1LL << 60);
  for (ScoreRecord& rec : series.records) {
    if (!rec.scored) continue;
    const bool over = strict ? rec.score > theta : rec.score >= theta;
    if (over && rec.t - tau_prev >= cooldown) {
      rec.detected = true;
      tau_prev = rec.t;
      series.detections.push_back(rec.t);
    }
  }
}

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 && nb == 0.0) return 1.0;  // both empty: unchanged
  if (na == 0.0 || nb == 0.0) return 0.0;  // one empty: maximally dissimilar
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

ScoreSeries cusum_detect(const std::vector<FeatureVector>& features, double kappa,
                         double theta, int burn_in, int cooldown) {
  if (cooldown < 1) throw std::invalid_argument("cooldown must be >= 1");
  if (kappa < 0.0) throw std::invalid_argument("kappa must be >= 0");
  const BurnInStats stats = burn_in_stats(features, burn_in);

  ScoreSeries series;
  series.records.reserve(features.size());
  std::array<double, kDims> s_pos{};
  std::array<double, kDims> s_neg{};
  for (int t = 1; t <= static_cast<int>(features.size()); ++t) {
    ScoreRecord rec;
    rec.t = t;
    if (t > burn_in) {
      rec.scored = true;
      double score = 0.0;
      for (size_t d = 0; d < kDims; ++d) {
        if (!stats.active[d]) continue;
        const double z = (features[t - 1][d] - stats.mean[d]) / stats.std[d];
        s_pos[d] = std::max(0.0, s_pos[d] + z - kappa);
        s_neg[d] = std::max(0.0, s_neg[d] - z - kappa);
        score = std::max(score, std::max(s_pos[d], s_neg[d]));
      }
      rec.score = score;
    }
    series.records.push_back(rec);
  }
  finalize_detections(series, theta, cooldown, /*strict=*/false);
  return series;
}

ScoreSeries ewma_detect(const std::vector<FeatureVector>& features, double lambda,
                        double limit_width, int burn_in, int cooldown) {
  if (cooldown < 1) throw std::invalid_argument("cooldown must be >= 1");
  if (lambda <= 0.0 || lambda > 1.0) throw std::invalid_argument("lambda must lie in (0, 1]");
  if (limit_width <= 0.0) throw std::invalid_argument("control limit width must be > 0");
  const BurnInStats stats = burn_in_stats(features, burn_in);
  const double spread = std::sqrt(lambda / (2.0 - lambda));

  ScoreSeries series;
  series.records.reserve(features.size());
  std::array<double, kDims> ewma = stats.mean;
  for (int t = 1; t <= static_cast<int>(features.size()); ++t) {
    ScoreRecord rec;
    rec.t = t;
    if (t > burn_in) {
      rec.scored = true;
      double score = 0.0;
      for (size_t d = 0; d < kDims; ++d) {
        if (!stats.active[d]) continue;
        ewma[d] = lambda * features[t - 1][d] + (1.0 - lambda) * ewma[d];
        score = std::max(score, std::abs(ewma[d] - stats.mean[d]) / (stats.std[d] * spread));
      }
      rec.score = score;
    }
    series.records.push_back(rec);
  }
  finalize_detections(series, limit_width, cooldown, /*strict=*/true);
  return series;
}

std::vector<double> lad_signature(const GraphSnapshot& g, int rank) {
  if (g.n > kDenseLimit) {
    throw std::invalid_argument("lad_detect requires n <= dense limit");
  }
  if (rank < 1) throw std::invalid_argument("signature rank must be >= 1");
  if (rank > g.n) {
    std::fprintf(stderr, "lad: rank %d exceeds n=%d, clamping\n", rank, g.n);
    rank = g.n;
  }
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(g.n, g.n);
  for (int u = 0; u < g.n; ++u) lap(u, u) = g.degree[u];
  for (const auto& [u, v] : g.edges) {
    lap(u, v) = -1.0;
    lap(v, u) = -1.0;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd eig = solver.eigenvalues();  // ascending, all >= 0

  std::vector<double> sig(rank, 0.0);
  for (int i = 0; i < rank; ++i) sig[i] = eig[g.n - 1 - i];
  double norm = std::sqrt(std::inner_product(sig.begin(), sig.end(), sig.begin(), 0.0));
  if (norm > 0.0) {
    for (double& s : sig) s /= norm;
  }
  return sig;
}

ScoreSeries lad_detect(const std::vector<GraphSnapshot>& snapshots, int rank,
                       int short_window, int long_window, double theta, int cooldown) {
  if (cooldown < 1) throw std::invalid_argument("cooldown must be >= 1");
  if (short_window < 1 || long_window < short_window) {
    throw std::invalid_argument("contexts require 1 <= short <= long");
  }

  std::vector<std::vector<double>> sigs;
  sigs.reserve(snapshots.size());
  for (const GraphSnapshot& g : snapshots) sigs.push_back(lad_signature(g, rank));

  const auto context_z = [&](int idx, int window) {
    const size_t dim = sigs[idx].size();
    std::vector<double> ctx(dim, 0.0);
    for (int j = idx - window; j < idx; ++j) {
      for (size_t d = 0; d < dim; ++d) ctx[d] += sigs[j][d];
    }
    double norm = std::sqrt(std::inner_product(ctx.begin(), ctx.end(), ctx.begin(), 0.0));
    if (norm > 0.0) {
      for (double& c : ctx) c /= norm;
    }
    return 1.0 - cosine_similarity(sigs[idx], ctx);
  };

  ScoreSeries series;
  series.records.reserve(snapshots.size());
  for (int t = 1; t <= static_cast<int>(snapshots.size()); ++t) {
    ScoreRecord rec;
    rec.t = t;
    if (t > long_window) {
      rec.scored = true;
      rec.score = std::max(context_z(t - 1, short_window), context_z(t - 1, long_window));
    }
    series.records.push_back(rec);
  }
  finalize_detections(series, theta, cooldown, /*strict=*/false);
  return series;
}

}  // namespace sword
