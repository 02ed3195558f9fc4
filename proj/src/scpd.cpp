#include "sword/scpd.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "sword/eval.hpp"

namespace sword {

PipelineAxes axes_for(CascadeStage stage) {
  PipelineAxes axes;  // S0
  switch (stage) {
    case CascadeStage::kS0:
      break;
    case CascadeStage::kS1:
      axes.svd_context = false;
      break;
    case CascadeStage::kS2:
      axes.svd_context = false;
      axes.first_difference = false;
      break;
    case CascadeStage::kS3:
      axes.svd_context = false;
      axes.first_difference = false;
      axes.two_window = true;
      break;
    case CascadeStage::kS3Half:
      axes.svd_context = false;
      axes.first_difference = false;
      axes.two_window = true;
      axes.metric = ScoreMetric::kL1Normalized;
      break;
    case CascadeStage::kS4:
      axes.svd_context = false;
      axes.first_difference = false;
      axes.two_window = true;
      axes.metric = ScoreMetric::kL1;
      break;
    case CascadeStage::kS5:
      axes.svd_context = false;
      axes.first_difference = false;
      axes.two_window = true;
      axes.metric = ScoreMetric::kL1;
      axes.jackson = false;
      break;
  }
  return axes;
}

const char* stage_name(CascadeStage stage) {
  switch (stage) {
    case CascadeStage::kS0: return "S0";
    case CascadeStage::kS1: return "S1";
    case CascadeStage::kS2: return "S2";
    case CascadeStage::kS3: return "S3";
    case CascadeStage::kS3Half: return "S3half";
    case CascadeStage::kS4: return "S4";
    case CascadeStage::kS5: return "S5";
  }
  return "?";
}

namespace {

// Per-snapshot representation: k-moment prefix, optionally Jackson-damped,
// optionally binned into a DOS histogram.
std::vector<MomentVector> build_representation(const std::vector<MomentVector>& moments,
                                               const CascadeConfig& cfg,
                                               const PipelineAxes& axes) {
  std::vector<MomentVector> reps;
  reps.reserve(moments.size());
  for (const MomentVector& m : moments) {
    if (m.order() < cfg.k) throw std::out_of_range("moment order below cascade k");
    MomentVector prefix;
    prefix.source = m.source;
    prefix.values.assign(m.values.begin(), m.values.begin() + cfg.k);
    if (axes.jackson) prefix = jackson_damp(prefix);
    if (cfg.n_bins != kUnbinned) {
      DosHistogram hist = dos_histogram(prefix, cfg.n_bins);
      prefix.values = std::move(hist.masses);
    }
    reps.push_back(std::move(prefix));
  }
  return reps;
}

double cosine_dissimilarity(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;  // no evidence from a zero vector
  return 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
}

std::vector<double> l2_normalized(std::vector<double> x) {
  double norm = 0.0;
  for (double v : x) norm += v * v;
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (double& v : x) v /= norm;
  }
  return x;
}

std::vector<double> uniform_mean(std::span<const MomentVector> window) {
  std::vector<double> mean(window.front().values.size(), 0.0);
  for (const MomentVector& m : window) {
    for (size_t j = 0; j < mean.size(); ++j) mean[j] += m.values[j];
  }
  for (double& v : mean) v /= double(window.size());
  return mean;
}

// Context direction for the single-point stages: top left singular vector
// of the trailing-context matrix (sign-fixed against the context mean), or
// the context mean itself when the SVD axis is off.
std::vector<double> context_direction(std::span<const MomentVector> context, bool svd) {
  const int dim = static_cast<int>(context.front().values.size());
  const int len = static_cast<int>(context.size());
  std::vector<double> mean = uniform_mean(context);
  if (!svd) return mean;
  Eigen::MatrixXd c(dim, len);
  for (int i = 0; i < len; ++i) {
    for (int j = 0; j < dim; ++j) c(j, i) = context[i].values[j];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd_solver(c, Eigen::ComputeThinU);
  Eigen::VectorXd u = svd_solver.matrixU().col(0);
  double align = 0.0;
  for (int j = 0; j < dim; ++j) align += u(j) * mean[j];
  if (align < 0.0) u = -u;
  return std::vector<double>(u.data(), u.data() + dim);
}

std::vector<std::optional<double>> single_point_z(const std::vector<MomentVector>& reps,
                                                  int context_len, bool svd) {
  if (context_len < 1) throw std::invalid_argument("context length must be >= 1");
  const int total = static_cast<int>(reps.size());
  std::vector<std::optional<double>> z(total + 1);  // 1-based by t
  for (int t = context_len + 1; t <= total; ++t) {
    const std::span<const MomentVector> context(reps.data() + t - 1 - context_len,
                                                size_t(context_len));
    z[t] = cosine_dissimilarity(reps[t - 1].values, context_direction(context, svd));
  }
  return z;
}

ScoreSeries finalize(int total, const std::vector<std::optional<double>>& score_by_t,
                     double theta, int cooldown) {
  if (cooldown < 1) throw std::invalid_argument("cooldown must be >= 1");
  ScoreSeries series;
  series.records.reserve(total);
  long long tau_prev = -(1LL << 60);
  for (int t = 1; t <= total; ++t) {
    ScoreRecord rec;
    rec.t = t;
    if (score_by_t[t].has_value()) {
      rec.scored = true;
      rec.score = *score_by_t[t];
      if (rec.score >= theta && t - tau_prev >= cooldown) {
        rec.detected = true;
        series.detections.push_back(t);
        tau_prev = t;
      }
    }
    series.records.push_back(rec);
  }
  return series;
}

}  // namespace

ScoreSeries scpd_score_stream_axes(const std::vector<MomentVector>& moments,
                                   const CascadeConfig& cfg, const PipelineAxes& axes) {
  const std::vector<MomentVector> reps = build_representation(moments, cfg, axes);
  const int total = static_cast<int>(reps.size());
  std::vector<std::optional<double>> score_by_t(total + 1);

  if (!axes.two_window) {
    const std::vector<std::optional<double>> z =
        single_point_z(reps, cfg.context_len, axes.svd_context);
    for (int t = 1; t <= total; ++t) {
      if (!z[t].has_value()) continue;
      if (axes.first_difference) {
        if (z[t - 1].has_value()) score_by_t[t] = std::max(0.0, *z[t] - *z[t - 1]);
      } else {
        score_by_t[t] = *z[t];
      }
    }
    return finalize(total, score_by_t, cfg.theta, cfg.cooldown);
  }

  const int span = cfg.w + cfg.w_ref;
  const int dim = total > 0 ? static_cast<int>(reps.front().values.size()) : 0;
  DetectorConfig centroid_cfg;
  centroid_cfg.mode = DistanceMode::kCentroidL1;
  centroid_cfg.k = dim;
  centroid_cfg.window = WindowSpec{cfg.w, cfg.w_ref, Weighting::kUniform, 0.7};
  for (int t = span; t <= total; ++t) {
    const std::span<const MomentVector> window(reps.data() + t - span, size_t(span));
    switch (axes.metric) {
      case ScoreMetric::kL1:
        // Shared code path with the SWORD centroid mode keeps S5 bit-exact.
        score_by_t[t] = window_statistic(window, centroid_cfg);
        break;
      case ScoreMetric::kCosine:
        score_by_t[t] = cosine_dissimilarity(uniform_mean(window.subspan(cfg.w_ref)),
                                             uniform_mean(window.first(cfg.w_ref)));
        break;
      case ScoreMetric::kL1Normalized: {
        const std::vector<double> test = l2_normalized(uniform_mean(window.subspan(cfg.w_ref)));
        const std::vector<double> ref = l2_normalized(uniform_mean(window.first(cfg.w_ref)));
        double d = 0.0;
        for (size_t j = 0; j < test.size(); ++j) d += std::abs(test[j] - ref[j]);
        score_by_t[t] = d;
        break;
      }
    }
  }
  return finalize(total, score_by_t, cfg.theta, cfg.cooldown);
}

ScoreSeries scpd_score_stream(const std::vector<MomentVector>& moments,
                              const CascadeConfig& cfg) {
  return scpd_score_stream_axes(moments, cfg, axes_for(cfg.stage));
}

ScoreSeries laddos_variant(const std::vector<MomentVector>& moments,
                           const CascadeConfig& cfg, ClampOrder order) {
  if (cfg.context_long <= cfg.context_len) {
    throw std::invalid_argument("long context must exceed short context");
  }
  const PipelineAxes axes = axes_for(CascadeStage::kS0);
  const std::vector<MomentVector> reps = build_representation(moments, cfg, axes);
  const int total = static_cast<int>(reps.size());
  const std::vector<std::optional<double>> z_short =
      single_point_z(reps, cfg.context_len, true);
  const std::vector<std::optional<double>> z_long =
      single_point_z(reps, cfg.context_long, true);

  std::vector<std::optional<double>> score_by_t(total + 1);
  for (int t = cfg.context_long + 2; t <= total; ++t) {
    if (order == ClampOrder::kClampThenMax) {
      const double zs = std::max(0.0, *z_short[t] - *z_short[t - 1]);
      const double zl = std::max(0.0, *z_long[t] - *z_long[t - 1]);
      score_by_t[t] = std::max(zs, zl);
    } else {
      const double m_cur = std::max(*z_short[t], *z_long[t]);
      const double m_prev = std::max(*z_short[t - 1], *z_long[t - 1]);
      score_by_t[t] = std::max(0.0, m_cur - m_prev);
    }
  }
  return finalize(total, score_by_t, cfg.theta, cfg.cooldown);
}

std::vector<BinSweepRow> bin_sweep(const std::vector<std::vector<MomentVector>>& streams,
                                   const std::vector<int>& true_cps, int delta,
                                   const CascadeConfig& cfg, std::vector<int> bins,
                                   int* duplicates_dropped) {
  const size_t before = bins.size();
  std::sort(bins.begin(), bins.end());
  bins.erase(std::unique(bins.begin(), bins.end()), bins.end());
  if (duplicates_dropped) *duplicates_dropped = static_cast<int>(before - bins.size());

  std::vector<BinSweepRow> rows;
  for (int n_bins : bins) {
    CascadeConfig cell = cfg;
    cell.n_bins = n_bins;
    std::vector<double> f1s;
    for (const std::vector<MomentVector>& moments : streams) {
      const ScoreSeries series = scpd_score_stream(moments, cell);
      const TunedThreshold tuned =
          tune_threshold(scored_only(series), true_cps, delta, cell.cooldown);
      f1s.push_back(tuned.f1);
    }
    double mean = 0.0;
    for (double f : f1s) mean += f;
    mean /= double(f1s.size());
    double var = 0.0;
    for (double f : f1s) var += (f - mean) * (f - mean);
    rows.push_back(BinSweepRow{n_bins, mean, std::sqrt(var / double(f1s.size()))});
  }
  return rows;
}

}  // namespace sword
