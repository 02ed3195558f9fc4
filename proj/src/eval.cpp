#include "sword/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "sword/baselines.hpp"

namespace sword {

MatchReport match_detections(std::vector<int> true_cps, std::vector<int> detections,
                             int delta) {
  if (delta < 0) throw std::invalid_argument("delta must be >= 0");
  std::sort(true_cps.begin(), true_cps.end());
  std::sort(detections.begin(), detections.end());

  MatchReport report;
  report.delta = delta;
  std::vector<bool> used(true_cps.size(), false);
  for (int det : detections) {
    bool matched = false;
    for (size_t i = 0; i < true_cps.size(); ++i) {
      if (used[i]) continue;
      if (det >= true_cps[i] && det <= true_cps[i] + delta) {
        used[i] = true;
        report.matches.emplace_back(true_cps[i], det);
        matched = true;
        break;
      }
      if (true_cps[i] > det) break;  // lists sorted: later windows start later
    }
    if (!matched) report.false_positives.push_back(det);
  }
  for (size_t i = 0; i < true_cps.size(); ++i) {
    if (!used[i]) report.false_negatives.push_back(true_cps[i]);
  }

  const double tp = static_cast<double>(report.matches.size());
  const double fp = static_cast<double>(report.false_positives.size());
  const double fn = static_cast<double>(report.false_negatives.size());
  report.precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
  report.recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
  report.f1 = report.precision + report.recall > 0
                  ? 2.0 * report.precision * report.recall / (report.precision + report.recall)
                  : 0.0;
  return report;
}

ScoredStream scored_only(const ScoreSeries& series) {
  ScoredStream out;
  for (const ScoreRecord& rec : series.records) {
    if (!rec.scored) continue;
    out.t.push_back(rec.t);
    out.score.push_back(rec.score);
  }
  return out;
}

std::vector<int> threshold_pass(const ScoredStream& scores, double theta, int cooldown) {
  if (cooldown < 1) throw std::invalid_argument("cooldown must be >= 1");
  std::vector<int> detections;
  long long tau_prev = -(1LL << 60);
  for (size_t i = 0; i < scores.t.size(); ++i) {
    if (scores.score[i] >= theta && scores.t[i] - tau_prev >= cooldown) {
      detections.push_back(scores.t[i]);
      tau_prev = scores.t[i];
    }
  }
  return detections;
}

TunedThreshold tune_threshold(const ScoredStream& scores, const std::vector<int>& true_cps,
                              int delta, int cooldown) {
  std::set<double> candidates;
  for (double s : scores.score) {
    if (s > 0.0) candidates.insert(s);
  }
  // The no-detection fallback (theta = inf, F1 = 0, no FPs) is an implicit
  // candidate; real candidates displace it only by a strict F1 gain.
  TunedThreshold best;
  best.theta = std::numeric_limits<double>::infinity();
  best.f1 = 0.0;
  size_t best_fp = 0;
  for (double theta : candidates) {
    const MatchReport report =
        match_detections(true_cps, threshold_pass(scores, theta, cooldown), delta);
    const size_t fp = report.false_positives.size();
    if (report.f1 > best.f1 ||
        (report.f1 == best.f1 && (fp < best_fp || (fp == best_fp && theta > best.theta)))) {
      best.theta = theta;
      best.f1 = report.f1;
      best_fp = fp;
    }
  }
  return best;
}

ArlAddReport measure_arl_add(const StreamScorer& scorer, const ScenarioSpec& null_spec,
                             const ScenarioSpec& change_spec,
                             const std::vector<double>& thresholds, int n_seeds) {
  if (thresholds.size() < 2) throw std::invalid_argument("sweep requires >= 2 thresholds");
  if (n_seeds < 1) throw std::invalid_argument("sweep requires >= 1 seed");
  if (!null_spec.change_points.empty()) {
    throw std::invalid_argument("null scenario must have no change points");
  }
  if (change_spec.change_points.empty()) {
    throw std::invalid_argument("change scenario must have a change point");
  }
  const int cp = change_spec.change_points.front();

  std::vector<ScoredStream> null_scores, change_scores;
  null_scores.reserve(n_seeds);
  change_scores.reserve(n_seeds);
  for (int i = 0; i < n_seeds; ++i) {
    ScenarioSpec ns = null_spec;
    ns.seed = null_spec.seed + static_cast<uint64_t>(i);
    null_scores.push_back(scorer(generate_sequence(ns).snapshots));
    ScenarioSpec cs = change_spec;
    cs.seed = change_spec.seed + static_cast<uint64_t>(i);
    change_scores.push_back(scorer(generate_sequence(cs).snapshots));
  }

  ArlAddReport report;
  report.t_null = null_spec.T;
  report.t_change = change_spec.T;
  for (double theta : thresholds) {
    ArlAddRow row;
    row.theta = theta;
    double arl_sum = 0.0;
    int censored = 0;
    for (const ScoredStream& s : null_scores) {
      int first_alarm = null_spec.T;
      bool alarmed = false;
      for (size_t i = 0; i < s.t.size(); ++i) {
        if (s.score[i] >= theta) {
          first_alarm = s.t[i];
          alarmed = true;
          break;
        }
      }
      if (!alarmed) ++censored;
      arl_sum += first_alarm;
    }
    row.arl0 = arl_sum / n_seeds;
    row.censored_fraction = static_cast<double>(censored) / n_seeds;

    int detected = 0;
    double delay_sum = 0.0;
    for (const ScoredStream& s : change_scores) {
      for (size_t i = 0; i < s.t.size(); ++i) {
        if (s.t[i] >= cp && s.score[i] >= theta) {
          ++detected;
          delay_sum += s.t[i] - cp;
          break;
        }
      }
    }
    row.detection_rate = static_cast<double>(detected) / n_seeds;
    row.add = detected > 0 ? delay_sum / detected : 0.0;
    row.add_reported = row.detection_rate >= 0.3;
    report.rows.push_back(row);
  }
  return report;
}

std::vector<GridConfig> enumerate_grid(const GridSpec& spec) {
  if (spec.method.empty()) throw std::invalid_argument("grid spec needs a method");
  for (const auto& [key, values] : spec.axes) {
    if (values.empty()) throw std::invalid_argument("grid axis '" + key + "' is empty");
  }
  std::vector<GridConfig> configs;
  configs.push_back(GridConfig{spec.method, {}});
  for (const auto& [key, values] : spec.axes) {
    std::vector<GridConfig> next;
    next.reserve(configs.size() * values.size());
    for (const GridConfig& base : configs) {
      for (double v : values) {
        GridConfig cfg = base;
        cfg.params[key] = v;
        next.push_back(std::move(cfg));
      }
    }
    configs = std::move(next);
  }
  return configs;
}

namespace {

double param_or(const GridConfig& cfg, const std::string& key, double fallback) {
  const auto it = cfg.params.find(key);
  return it == cfg.params.end() ? fallback : it->second;
}

DetectorConfig sword_config(const GridConfig& cfg) {
  DetectorConfig dc;
  dc.threshold = ThresholdSpec::absolute(param_or(cfg, "theta", 0.02));
  dc.k = static_cast<int>(param_or(cfg, "k", 2));
  dc.cooldown = static_cast<int>(param_or(cfg, "cooldown", 5));
  const int mode = static_cast<int>(param_or(cfg, "mode", 2));
  if (mode < 0 || mode > 2) throw std::invalid_argument("sword mode must be 0, 1, or 2");
  dc.mode = static_cast<DistanceMode>(mode);
  dc.window.w = static_cast<int>(param_or(cfg, "w", 3));
  dc.window.w_ref = static_cast<int>(param_or(cfg, "w_ref", 3));
  dc.window.weighting =
      param_or(cfg, "weighting", 0) != 0 ? Weighting::kExponential : Weighting::kUniform;
  dc.window.decay = param_or(cfg, "decay", 0.7);
  return dc;
}

std::vector<FeatureVector> feature_stream(const std::vector<GraphSnapshot>& snapshots) {
  std::vector<FeatureVector> features;
  features.reserve(snapshots.size());
  for (const GraphSnapshot& g : snapshots) features.push_back(extract_features(g));
  return features;
}

}  // namespace

MatchReport evaluate_config(const GridConfig& cfg, const std::vector<GraphSnapshot>& snapshots,
                            const std::vector<MomentVector>& moments,
                            const std::vector<int>& true_cps, int delta) {
  ScoreSeries series;
  if (cfg.method == "sword") {
    series = detect_stream(moments, sword_config(cfg));
  } else if (cfg.method == "cusum") {
    series = cusum_detect(feature_stream(snapshots), param_or(cfg, "kappa", 0.5),
                          param_or(cfg, "theta", 4.0),
                          static_cast<int>(param_or(cfg, "burn_in", 6)),
                          static_cast<int>(param_or(cfg, "cooldown", 10)));
  } else if (cfg.method == "ewma") {
    series = ewma_detect(feature_stream(snapshots), param_or(cfg, "lambda", 0.2),
                         param_or(cfg, "L", 3.0),
                         static_cast<int>(param_or(cfg, "burn_in", 6)),
                         static_cast<int>(param_or(cfg, "cooldown", 10)));
  } else if (cfg.method == "lad") {
    series = lad_detect(snapshots, static_cast<int>(param_or(cfg, "r", 6)),
                        static_cast<int>(param_or(cfg, "short", 5)),
                        static_cast<int>(param_or(cfg, "long", 10)),
                        param_or(cfg, "theta", 0.01),
                        static_cast<int>(param_or(cfg, "cooldown", 10)));
  } else {
    throw std::invalid_argument("unknown method: " + cfg.method);
  }
  return match_detections(true_cps, series.detections, delta);
}

std::vector<GridResultRow> grid_search(const GridSpec& spec, size_t top) {
  const std::vector<GridConfig> configs = enumerate_grid(spec);
  if (spec.seeds.empty()) throw std::invalid_argument("grid spec needs >= 1 seed");

  struct SeedData {
    std::vector<GraphSnapshot> snapshots;
    std::vector<MomentVector> moments;
    std::vector<int> true_cps;
  };
  std::vector<SeedData> seeds;
  seeds.reserve(spec.seeds.size());
  for (uint64_t seed : spec.seeds) {
    SeedData data;
    GeneratedStream stream = generate_sequence(scenario_by_name(spec.scenario, seed));
    data.true_cps = stream.change_points;
    if (spec.method == "sword") {
      ProbeSet probes;
      probes.seed = seed;
      probes.sharing = ProbeSharing::kSharedAcrossStream;
      data.moments.reserve(stream.snapshots.size());
      for (const GraphSnapshot& g : stream.snapshots) {
        data.moments.push_back(estimate_moments(g, kDefaultOrder, probes));
      }
    }
    data.snapshots = std::move(stream.snapshots);
    seeds.push_back(std::move(data));
  }

  std::vector<GridResultRow> rows;
  rows.reserve(configs.size());
  for (const GridConfig& cfg : configs) {
    GridResultRow row;
    row.config = cfg;
    std::vector<double> f1s;
    f1s.reserve(seeds.size());
    for (const SeedData& data : seeds) {
      const MatchReport report =
          evaluate_config(cfg, data.snapshots, data.moments, data.true_cps, spec.delta);
      f1s.push_back(report.f1);
      row.total_false_positives += static_cast<int>(report.false_positives.size());
    }
    double sum = 0.0;
    for (double f : f1s) sum += f;
    row.mean_f1 = sum / f1s.size();
    double ss = 0.0;
    for (double f : f1s) ss += (f - row.mean_f1) * (f - row.mean_f1);
    row.std_f1 = std::sqrt(ss / f1s.size());
    rows.push_back(std::move(row));
  }

  const auto span_of = [](const GridConfig& cfg) {
    return param_or(cfg, "w", 3) + param_or(cfg, "w_ref", 3);
  };
  std::stable_sort(rows.begin(), rows.end(),
                   [&](const GridResultRow& a, const GridResultRow& b) {
                     if (a.mean_f1 != b.mean_f1) return a.mean_f1 > b.mean_f1;
                     if (a.total_false_positives != b.total_false_positives) {
                       return a.total_false_positives < b.total_false_positives;
                     }
                     return span_of(a.config) < span_of(b.config);
                   });
  if (rows.size() > top) rows.resize(top);
  return rows;
}

std::vector<KSweepRow> k_sweep(const std::vector<std::vector<MomentVector>>& streams,
                               const DetectorConfig& base, const std::vector<int>& true_cps,
                               int delta, int k_min, int k_max) {
  if (streams.empty()) throw std::invalid_argument("k_sweep requires >= 1 moment stream");
  if (k_min < 1 || k_max < k_min) throw std::invalid_argument("k range invalid");
  for (const auto& stream : streams) {
    for (const MomentVector& m : stream) {
      if (m.order() < k_max) throw std::out_of_range("k exceeds cached moment order K");
    }
  }

  std::vector<KSweepRow> rows;
  for (int k = k_min; k <= k_max; ++k) {
    DetectorConfig cfg = base;
    cfg.k = k;
    cfg.threshold = ThresholdSpec::absolute(std::numeric_limits<double>::infinity());
    std::vector<double> f1s;
    f1s.reserve(streams.size());
    for (const auto& stream : streams) {
      const ScoredStream scores = scored_only(detect_stream(stream, cfg));
      f1s.push_back(tune_threshold(scores, true_cps, delta, base.cooldown).f1);
    }
    KSweepRow row;
    row.k = k;
    double sum = 0.0;
    for (double f : f1s) sum += f;
    row.mean_f1 = sum / f1s.size();
    double ss = 0.0;
    for (double f : f1s) ss += (f - row.mean_f1) * (f - row.mean_f1);
    row.std_f1 = std::sqrt(ss / f1s.size());
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sword
