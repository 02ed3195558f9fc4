#pragma once

#include <vector>

#include "sword/detector.hpp"
#include "sword/kpm.hpp"

namespace sword {

// Cascade stages from SCPD's scoring pipeline (S0) to full SWORD (S5).
// Each stage flips exactly one pipeline axis relative to its predecessor.
enum class CascadeStage { kS0, kS1, kS2, kS3, kS3Half, kS4, kS5 };

enum class ScoreMetric { kCosine, kL1Normalized, kL1 };

struct PipelineAxes {
  bool jackson = true;           // Jackson-damp the moment prefix
  bool svd_context = true;       // context direction = top singular vector (else mean)
  bool first_difference = true;  // score = max(0, Z_t - Z_{t-1})
  bool two_window = false;       // two-window comparison instead of single-point
  ScoreMetric metric = ScoreMetric::kCosine;

  bool operator==(const PipelineAxes&) const = default;
};

PipelineAxes axes_for(CascadeStage stage);

const char* stage_name(CascadeStage stage);

struct CascadeConfig {
  CascadeStage stage = CascadeStage::kS0;
  int n_bins = kUnbinned;   // DOS histogram bins; kUnbinned = raw moments
  int context_len = 5;      // trailing context for the single-point stages
  int context_long = 10;    // long context, laddos_variant only
  int w = 2;                // two-window stages
  int w_ref = 2;
  int k = 8;                // moment prefix used as the representation
  int cooldown = 7;
  double theta = 0.005;
};

// Scores a moment stream through the cascade pipeline selected by
// cfg.stage; thresholding and cooldown follow the same rule as
// detect_stream. S5 on unbinned input is bit-identical to SWORD's
// centroid mode with uniform weights.
ScoreSeries scpd_score_stream(const std::vector<MomentVector>& moments,
                              const CascadeConfig& cfg);

// Same pipeline with explicit axes (stage-locality experiments).
ScoreSeries scpd_score_stream_axes(const std::vector<MomentVector>& moments,
                                   const CascadeConfig& cfg, const PipelineAxes& axes);

enum class ClampOrder {
  kClampThenMax,  // LADdos: per-series clamped first-difference, then max
  kMaxThenDiff    // SCPD: max over contexts first, then clamped difference
};

// Two-context (short/long) SVD + cosine scoring; otherwise identical to S0.
ScoreSeries laddos_variant(const std::vector<MomentVector>& moments,
                           const CascadeConfig& cfg, ClampOrder order);

struct BinSweepRow {
  int n_bins = 0;  // kUnbinned for the raw-moment point
  double mean_f1 = 0.0;
  double std_f1 = 0.0;
};

// Per-bin-count F1 with the threshold re-tuned per cell. `streams` holds
// one moment sequence per seed; duplicate bin counts are deduplicated
// (duplicates_dropped reports how many).
std::vector<BinSweepRow> bin_sweep(const std::vector<std::vector<MomentVector>>& streams,
                                   const std::vector<int>& true_cps, int delta,
                                   const CascadeConfig& cfg, std::vector<int> bins,
                                   int* duplicates_dropped = nullptr);

}  // namespace sword
