#include "sword/detector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sword {

namespace {

std::vector<double> window_weights(int length, Weighting weighting, double decay) {
  if (length < 1) throw std::invalid_argument("window length must be >= 1");
  std::vector<double> weights(length, 1.0 / double(length));
  if (weighting == Weighting::kExponential) {
    if (decay <= 0.0 || decay >= 1.0) {
      throw std::invalid_argument("exponential decay must lie in (0, 1)");
    }
    double total = 0.0;
    for (int i = 0; i < length; ++i) {
      // Entries are oldest-first, so age = length - 1 - i.
      weights[i] = std::pow(decay, double(length - 1 - i));
      total += weights[i];
    }
    for (double& w : weights) w /= total;
  }
  return weights;
}

std::vector<double> weighted_mean(std::span<const MomentVector> moments,
                                  std::span<const double> weights, int k) {
  std::vector<double> mean(k, 0.0);
  for (size_t i = 0; i < moments.size(); ++i) {
    for (int j = 0; j < k; ++j) mean[j] += weights[i] * moments[i].values[j];
  }
  return mean;
}

}  // namespace

std::vector<double> WindowSpec::test_weights() const {
  return window_weights(w, weighting, decay);
}

std::vector<double> WindowSpec::ref_weights() const {
  return window_weights(w_ref, weighting, decay);
}

double window_statistic(std::span<const MomentVector> moments, const DetectorConfig& cfg) {
  const WindowSpec& win = cfg.window;
  if (static_cast<int>(moments.size()) != win.span()) {
    throw std::invalid_argument("window_statistic expects exactly w + w_ref vectors");
  }
  const int k = cfg.k;
  for (const MomentVector& m : moments) {
    if (m.order() < k) throw std::out_of_range("moment vector shorter than comparison order k");
  }
  const auto ref = moments.first(win.w_ref);
  const auto test = moments.subspan(win.w_ref);
  const std::vector<double> beta = win.ref_weights();
  const std::vector<double> alpha = win.test_weights();

  if (cfg.mode == DistanceMode::kMeanPairwise) {
    double d = 0.0;
    for (size_t i = 0; i < test.size(); ++i) {
      for (size_t j = 0; j < ref.size(); ++j) {
        d += alpha[i] * beta[j] * moment_distance(test[i], ref[j], k);
      }
    }
    return d;
  }

  const std::vector<double> mean_test = weighted_mean(test, alpha, k);
  const std::vector<double> mean_ref = weighted_mean(ref, beta, k);
  if (cfg.mode == DistanceMode::kCentroidL1) {
    double d = 0.0;
    for (int j = 0; j < k; ++j) d += std::abs(mean_test[j] - mean_ref[j]);
    return d;
  }
  double s = 0.0;
  for (int j = 0; j < k; ++j) {
    const double diff = mean_test[j] - mean_ref[j];
    s += diff * diff / (double(j + 1) * double(j + 1));
  }
  return std::sqrt(s);
}

ScoreSeries detect_stream(const std::vector<MomentVector>& moments,
                          const DetectorConfig& cfg) {
  if (cfg.cooldown < 1) throw std::invalid_argument("cooldown must be >= 1");
  const bool percentile = cfg.threshold.kind == ThresholdSpec::Kind::kPercentile;
  if (percentile && cfg.threshold.calibration_span < 1) {
    throw std::invalid_argument("percentile threshold requires calibration_span >= 1");
  }
  if (percentile && (cfg.threshold.percentile <= 0.0 || cfg.threshold.percentile >= 1.0)) {
    throw std::invalid_argument("percentile must lie in (0, 1)");
  }

  const int span = cfg.window.span();
  const int total = static_cast<int>(moments.size());
  ScoreSeries series;
  series.records.reserve(total);

  double theta = cfg.threshold.theta;
  bool armed = !percentile;
  std::vector<double> calibration;
  long long tau_prev = -(1LL << 60);
  int scored_steps = 0;

  for (int t = 1; t <= total; ++t) {
    ScoreRecord rec;
    rec.t = t;
    if (t >= span) {
      rec.scored = true;
      rec.score = window_statistic(
          std::span<const MomentVector>(moments.data() + t - span, size_t(span)), cfg);
      ++scored_steps;
      if (percentile && !armed) {
        calibration.push_back(rec.score);
        if (scored_steps == cfg.threshold.calibration_span) {
          theta = calibrate_percentile(calibration, cfg.threshold.percentile);
          armed = true;  // frozen; detection allowed from the next step on
        }
      } else if (armed && rec.score >= theta && t - tau_prev >= cfg.cooldown) {
        rec.detected = true;
        series.detections.push_back(t);
        tau_prev = t;
      }
    }
    series.records.push_back(rec);
  }
  return series;
}

double calibrate_percentile(std::vector<double> scores, double p) {
  if (scores.empty()) throw std::invalid_argument("calibrate_percentile: no scores");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("percentile out of [0, 1]");
  std::sort(scores.begin(), scores.end());
  const double pos = p * double(scores.size() - 1);
  const size_t lo = static_cast<size_t>(pos);
  const size_t hi = std::min(lo + 1, scores.size() - 1);
  const double frac = pos - double(lo);
  return scores[lo] + frac * (scores[hi] - scores[lo]);
}

int default_calibration_span(int stream_length) {
  return std::max(5, stream_length / 5);
}

}  // namespace sword
