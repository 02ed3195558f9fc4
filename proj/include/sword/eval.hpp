#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sword/detector.hpp"
#include "sword/graph.hpp"
#include "sword/synth.hpp"

namespace sword {

struct MatchReport {
  std::vector<std::pair<int, int>> matches;  // (true cp, detection)
  std::vector<int> false_positives;
  std::vector<int> false_negatives;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  int delta = 5;
};

// One-sided greedy earliest-first matching: a detection is a true positive
// iff it lands in [cp, cp + delta] of some still-unmatched change point.
MatchReport match_detections(std::vector<int> true_cps, std::vector<int> detections,
                             int delta);

// A score series restricted to its scored steps.
struct ScoredStream {
  std::vector<int> t;
  std::vector<double> score;
};

ScoredStream scored_only(const ScoreSeries& series);

// Re-applies a threshold + cooldown pass over precomputed scores.
std::vector<int> threshold_pass(const ScoredStream& scores, double theta, int cooldown);

struct TunedThreshold {
  double theta = 0.0;
  double f1 = 0.0;
};

// Best-F1 threshold over the stream's own score values; ties prefer fewer
// false positives, then the larger theta.
TunedThreshold tune_threshold(const ScoredStream& scores, const std::vector<int>& true_cps,
                              int delta, int cooldown);

// Produces the scored (t, D_t) stream for a snapshot sequence; detectors are
// wrapped in this form so ARL/ADD sweeps can share one scoring pass across
// all thresholds.
using StreamScorer = std::function<ScoredStream(const std::vector<GraphSnapshot>&)>;

struct ArlAddRow {
  double theta = 0.0;
  double arl0 = 0.0;             // mean first-alarm time under H0, censored at T_null
  double censored_fraction = 0.0;
  double detection_rate = 0.0;   // fraction of change runs with an alarm at t >= cp
  double add = 0.0;              // mean delay over detected runs
  bool add_reported = false;     // only where detection_rate >= 0.3
};

struct ArlAddReport {
  std::vector<ArlAddRow> rows;
  int t_null = 0;
  int t_change = 0;
};

// Null runs come from `null_spec` (no change point), change runs from
// `change_spec`. First-alarm semantics throughout (cooldown-free).
ArlAddReport measure_arl_add(const StreamScorer& scorer, const ScenarioSpec& null_spec,
                             const ScenarioSpec& change_spec,
                             const std::vector<double>& thresholds, int n_seeds);

// --- Grid search -----------------------------------------------------------

struct GridConfig {
  std::string method;
  std::map<std::string, double> params;
};

struct GridSpec {
  std::string method;
  std::map<std::string, std::vector<double>> axes;
  std::vector<uint64_t> seeds;
  int delta = 5;
  std::string scenario;  // named scenario, see synth builders
};

std::vector<GridConfig> enumerate_grid(const GridSpec& spec);

struct GridResultRow {
  GridConfig config;
  double mean_f1 = 0.0;
  double std_f1 = 0.0;
  int total_false_positives = 0;
};

// Evaluates one method config on one generated stream. `moments` is the
// cached K=50 moment sequence for that stream (shared across configs).
MatchReport evaluate_config(const GridConfig& cfg, const std::vector<GraphSnapshot>& snapshots,
                            const std::vector<MomentVector>& moments,
                            const std::vector<int>& true_cps, int delta);

// Mean/std F1 per config over seeds, ranked by mean F1 with ties broken by
// fewer false positives then smaller w + w_ref. Returns at most `top` rows.
std::vector<GridResultRow> grid_search(const GridSpec& spec, size_t top = 50);

struct KSweepRow {
  int k = 0;
  double mean_f1 = 0.0;
  double std_f1 = 0.0;
};

// Holds every parameter but k fixed and re-tunes the threshold per (k, seed).
std::vector<KSweepRow> k_sweep(const std::vector<std::vector<MomentVector>>& streams,
                               const DetectorConfig& base, const std::vector<int>& true_cps,
                               int delta, int k_min, int k_max);

}  // namespace sword
