#pragma once

#include <span>
#include <vector>

#include "sword/kpm.hpp"

namespace sword {

enum class Weighting { kUniform, kExponential };

struct WindowSpec {
  int w = 3;
  int w_ref = 3;
  Weighting weighting = Weighting::kUniform;
  double decay = 0.7;  // gamma for exponential weighting, in (0, 1)

  int span() const { return w + w_ref; }

  // Normalized weights, oldest entry first; exponential weights are
  // proportional to decay^age with age 0 at the most recent entry.
  std::vector<double> test_weights() const;
  std::vector<double> ref_weights() const;
};

enum class DistanceMode { kMeanPairwise, kCentroidL1, kWeightedGamma };

struct ThresholdSpec {
  enum class Kind { kAbsolute, kPercentile };
  Kind kind = Kind::kAbsolute;
  double theta = 0.02;
  double percentile = 0.84;  // p in (0, 1), percentile mode only
  int calibration_span = 0;  // T_cal scored steps before the freeze

  static ThresholdSpec absolute(double theta) {
    return ThresholdSpec{Kind::kAbsolute, theta, 0.0, 0};
  }
  static ThresholdSpec quantile(double p, int t_cal) {
    return ThresholdSpec{Kind::kPercentile, 0.0, p, t_cal};
  }
};

struct DetectorConfig {
  ThresholdSpec threshold = ThresholdSpec::absolute(0.02);
  int k = 2;         // moment comparison order
  int cooldown = 5;  // minimum spacing between detections
  DistanceMode mode = DistanceMode::kMeanPairwise;
  WindowSpec window;
};

struct ScoreRecord {
  int t = 0;
  bool scored = false;
  double score = 0.0;
  bool detected = false;
};

struct ScoreSeries {
  std::vector<ScoreRecord> records;
  std::vector<int> detections;
};

// One two-window statistic over exactly w_ref + w moment vectors, oldest
// first (the first w_ref form the reference window).
double window_statistic(std::span<const MomentVector> moments, const DetectorConfig& cfg);

// Single forward pass of the SWORD rule: scores from t = w + w_ref, fires
// when D_t >= theta and t - tau_prev >= cooldown. Percentile thresholds
// freeze after calibration_span scored steps; no detection fires earlier.
ScoreSeries detect_stream(const std::vector<MomentVector>& moments,
                          const DetectorConfig& cfg);

// Linear-interpolation quantile of the calibration scores.
double calibrate_percentile(std::vector<double> scores, double p);

// Default T_cal: 20% of the stream, floor 5 scored steps.
int default_calibration_span(int stream_length);

}  // namespace sword
