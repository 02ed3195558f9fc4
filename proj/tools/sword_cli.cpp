#include <CLI11.hpp>
#include <json.hpp>

#include <sys/resource.h>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "sword/baselines.hpp"
#include "sword/detector.hpp"
#include "sword/eval.hpp"
#include "sword/io.hpp"
#include "sword/kpm.hpp"
#include "sword/scpd.hpp"
#include "sword/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sword;

namespace {

// --- Run manifest ------------------------------------------------------

uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  uint64_t h = 0xCBF29CE484222325ULL;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001B3ULL;
  }
  return h;
}

struct ManifestWriter {
  std::string command;
  json config = json::object();
  std::vector<uint64_t> seeds;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void write(const fs::path& dir) const {
    json outs = json::object();
    for (const std::string& path : outputs) {
      char hex[32];
      std::snprintf(hex, sizeof hex, "%016llx",
                    static_cast<unsigned long long>(fnv1a_file(path)));
      outs[fs::path(path).filename().string()] = hex;
    }
    rusage usage{};
    getrusage(RUSAGE_SELF, &usage);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json manifest{{"command", command}, {"config", config},   {"seeds", seeds},
                  {"inputs", inputs},   {"outputs", outs},    {"wall_clock_sec", elapsed},
                  {"peak_rss_kb", usage.ru_maxrss}};
    std::ofstream out(dir / "manifest.json");
    out << manifest.dump(2) << '\n';
  }
};

fs::path ensure_dir(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

std::vector<uint64_t> seed_range(uint64_t base, int count) {
  std::vector<uint64_t> seeds;
  for (int i = 0; i < count; ++i) seeds.push_back(base + static_cast<uint64_t>(i));
  return seeds;
}

std::vector<MomentVector> shared_moments(const std::vector<GraphSnapshot>& snapshots,
                                         uint64_t seed) {
  ProbeSet probes;
  probes.seed = seed;
  probes.sharing = ProbeSharing::kSharedAcrossStream;
  std::vector<MomentVector> moments;
  moments.reserve(snapshots.size());
  for (const GraphSnapshot& g : snapshots) {
    moments.push_back(estimate_moments(g, kDefaultOrder, probes));
  }
  return moments;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / v.size();
}

double std_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return v.empty() ? 0.0 : std::sqrt(ss / v.size());
}

// --- generate -----------------------------------------------------------

struct GenerateArgs {
  std::string scenario = "er";
  std::string out = "out";
  uint64_t seed = 1;
  double p2 = -1.0;    // hard-er override
  double p_out = -1.0; // hard-sbm override
};

int cmd_generate(const GenerateArgs& args) {
  ManifestWriter manifest;
  manifest.command = "generate";
  manifest.config = {{"scenario", args.scenario}, {"seed", args.seed}};
  manifest.seeds = {args.seed};

  ScenarioSpec spec = scenario_by_name(args.scenario, args.seed);
  if (args.p2 >= 0.0) {
    if (args.scenario != "hard-er") throw CLI::ValidationError("--p2 applies to hard-er only");
    spec = scenario_hard_er(args.seed, args.p2);
    manifest.config["p2"] = args.p2;
  }
  if (args.p_out >= 0.0) {
    if (args.scenario != "hard-sbm") {
      throw CLI::ValidationError("--p-out applies to hard-sbm only");
    }
    spec = scenario_hard_sbm(args.seed, args.p_out);
    manifest.config["p_out"] = args.p_out;
  }

  const fs::path dir = ensure_dir(args.out);
  const GeneratedStream stream = generate_sequence(spec);
  const std::string snap_path = (dir / "snapshots.jsonl").string();
  const std::string cp_path = (dir / "change_points.json").string();
  save_snapshot_stream(snap_path, stream.snapshots);
  save_change_points(cp_path, stream.change_points);
  manifest.outputs = {snap_path, cp_path};
  manifest.write(dir);
  std::cout << "wrote " << stream.snapshots.size() << " snapshots to " << snap_path << '\n';
  return 0;
}

// --- moments -------------------------------------------------------------

struct MomentsArgs {
  std::string in;
  std::string out = "out";
  int K = kDefaultOrder;
  int R = kDefaultProbes;
  uint64_t seed = 1;
  std::string sharing = "shared";
  bool exact = false;
};

int cmd_moments(const MomentsArgs& args) {
  ManifestWriter manifest;
  manifest.command = "moments";
  manifest.config = {{"K", args.K},       {"R", args.R},         {"seed", args.seed},
                     {"sharing", args.sharing}, {"exact", args.exact}};
  manifest.seeds = {args.seed};
  manifest.inputs = {args.in};

  int dropped = 0;
  const std::vector<GraphSnapshot> snapshots = load_snapshot_stream(args.in, &dropped);
  if (dropped > 0) std::cerr << "warning: dropped " << dropped << " self-loops\n";

  ProbeSet probes;
  probes.R = args.R;
  probes.seed = args.seed;
  probes.sharing = args.sharing == "fresh" ? ProbeSharing::kFreshPerSnapshot
                                           : ProbeSharing::kSharedAcrossStream;
  std::vector<MomentVector> moments;
  std::vector<int> timesteps;
  for (const GraphSnapshot& g : snapshots) {
    moments.push_back(args.exact ? exact_moments(g, args.K)
                                 : estimate_moments(g, args.K, probes));
    timesteps.push_back(g.t);
  }

  const fs::path dir = ensure_dir(args.out);
  const std::string cache_path = (dir / "moments.csv").string();
  save_moment_cache(cache_path, moments, timesteps);
  manifest.outputs = {cache_path};
  manifest.write(dir);
  std::cout << "wrote " << moments.size() << " moment rows to " << cache_path << '\n';
  return 0;
}

// --- detect ----------------------------------------------------------------

struct DetectArgs {
  std::string moments;
  std::string snapshots;
  std::string out = "out";
  std::string method = "sword";
  // sword
  double theta = 0.02;
  double percentile = -1.0;
  int t_cal = 0;
  int k = 2;
  int cooldown = 5;
  std::string mode = "gamma";  // pairwise | centroid | gamma
  int w = 3;
  int w_ref = 3;
  std::string weighting = "uniform";
  double decay = 0.7;
  // scpd scaffold
  std::string stage = "S0";
  int n_bins = kUnbinned;
  int context = 5;
  int context_long = 10;
  std::string clamp_order = "max-then-diff";
  // feature baselines
  double kappa = 0.5;
  double lambda = 0.2;
  double limit = 3.0;
  int burn_in = 6;
  // lad
  int rank = 6;
  int short_window = 5;
  int long_window = 10;
};

DistanceMode parse_mode(const std::string& mode) {
  if (mode == "pairwise") return DistanceMode::kMeanPairwise;
  if (mode == "centroid") return DistanceMode::kCentroidL1;
  if (mode == "gamma") return DistanceMode::kWeightedGamma;
  throw CLI::ValidationError("mode must be pairwise, centroid, or gamma");
}

CascadeStage parse_stage(const std::string& stage) {
  for (const CascadeStage s : {CascadeStage::kS0, CascadeStage::kS1, CascadeStage::kS2,
                               CascadeStage::kS3, CascadeStage::kS3Half, CascadeStage::kS4,
                               CascadeStage::kS5}) {
    if (stage == stage_name(s)) return s;
  }
  throw CLI::ValidationError("unknown cascade stage " + stage);
}

int cmd_detect(const DetectArgs& args) {
  ManifestWriter manifest;
  manifest.command = "detect";
  manifest.config = {{"method", args.method}};

  ScoreSeries series;
  if (args.method == "sword") {
    DetectorConfig cfg;
    cfg.threshold = args.percentile > 0.0
                        ? ThresholdSpec::quantile(args.percentile, args.t_cal)
                        : ThresholdSpec::absolute(args.theta);
    cfg.k = args.k;
    cfg.cooldown = args.cooldown;
    cfg.mode = parse_mode(args.mode);
    cfg.window = {args.w, args.w_ref,
                  args.weighting == "exponential" ? Weighting::kExponential
                                                  : Weighting::kUniform,
                  args.decay};
    manifest.config.update({{"theta", args.theta}, {"k", args.k},
                            {"cooldown", args.cooldown}, {"mode", args.mode},
                            {"w", args.w}, {"w_ref", args.w_ref}});
    std::vector<MomentVector> moments = load_moment_cache(args.moments);
    if (cfg.threshold.kind == ThresholdSpec::Kind::kPercentile &&
        cfg.threshold.calibration_span == 0) {
      cfg.threshold.calibration_span =
          default_calibration_span(static_cast<int>(moments.size()));
    }
    manifest.inputs = {args.moments};
    series = detect_stream(moments, cfg);
  } else if (args.method == "scpd-stage" || args.method == "laddos") {
    CascadeConfig cfg;
    cfg.stage = parse_stage(args.stage);
    cfg.n_bins = args.n_bins;
    cfg.context_len = args.context;
    cfg.context_long = args.context_long;
    cfg.w = args.w;
    cfg.w_ref = args.w_ref;
    cfg.k = args.k;
    cfg.cooldown = args.cooldown;
    cfg.theta = args.theta;
    manifest.config.update({{"stage", args.stage}, {"theta", args.theta},
                            {"k", args.k}, {"n_bins", args.n_bins}});
    const std::vector<MomentVector> moments = load_moment_cache(args.moments);
    manifest.inputs = {args.moments};
    if (args.method == "laddos") {
      const ClampOrder order = args.clamp_order == "clamp-then-max"
                                   ? ClampOrder::kClampThenMax
                                   : ClampOrder::kMaxThenDiff;
      series = laddos_variant(moments, cfg, order);
    } else {
      series = scpd_score_stream(moments, cfg);
    }
  } else if (args.method == "cusum" || args.method == "ewma") {
    const std::vector<GraphSnapshot> snapshots = load_snapshot_stream(args.snapshots);
    std::vector<FeatureVector> features;
    for (const GraphSnapshot& g : snapshots) features.push_back(extract_features(g));
    manifest.inputs = {args.snapshots};
    if (args.method == "cusum") {
      manifest.config.update({{"kappa", args.kappa}, {"theta", args.theta},
                              {"burn_in", args.burn_in}, {"cooldown", args.cooldown}});
      series = cusum_detect(features, args.kappa, args.theta, args.burn_in, args.cooldown);
    } else {
      manifest.config.update({{"lambda", args.lambda}, {"L", args.limit},
                              {"burn_in", args.burn_in}, {"cooldown", args.cooldown}});
      series = ewma_detect(features, args.lambda, args.limit, args.burn_in, args.cooldown);
    }
  } else if (args.method == "lad") {
    const std::vector<GraphSnapshot> snapshots = load_snapshot_stream(args.snapshots);
    manifest.inputs = {args.snapshots};
    manifest.config.update({{"r", args.rank}, {"short", args.short_window},
                            {"long", args.long_window}, {"theta", args.theta},
                            {"cooldown", args.cooldown}});
    series = lad_detect(snapshots, args.rank, args.short_window, args.long_window,
                        args.theta, args.cooldown);
  } else {
    throw CLI::ValidationError("unknown method " + args.method);
  }

  const fs::path dir = ensure_dir(args.out);
  const std::string score_path = (dir / "scores.csv").string();
  const std::string det_path = (dir / "detections.json").string();
  save_score_series(score_path, series);
  save_detections(det_path, series.detections);
  manifest.outputs = {score_path, det_path};
  manifest.write(dir);
  std::cout << series.detections.size() << " detections; scores in " << score_path << '\n';
  return 0;
}

// --- sweep / arl / ksweep ---------------------------------------------------

int cmd_sweep(const std::string& grid_path, const std::string& out, size_t top) {
  ManifestWriter manifest;
  manifest.command = "sweep";
  manifest.inputs = {grid_path};

  const GridSpec spec = load_grid_spec(grid_path);
  manifest.seeds = spec.seeds;
  manifest.config = {{"method", spec.method}, {"scenario", spec.scenario},
                     {"delta", spec.delta}};
  const std::vector<GridResultRow> rows = grid_search(spec, top);

  const fs::path dir = ensure_dir(out);
  const std::string csv_path = (dir / "grid_results.csv").string();
  std::ofstream csv(csv_path);
  csv << "rank,method,params,mean_f1,std_f1,total_fp\n";
  csv.precision(17);
  json rows_json = json::array();
  for (size_t i = 0; i < rows.size(); ++i) {
    const GridResultRow& row = rows[i];
    std::string params;
    for (const auto& [key, value] : row.config.params) {
      params += (params.empty() ? "" : ";") + key + "=" + std::to_string(value);
    }
    csv << i + 1 << ',' << row.config.method << ',' << params << ',' << row.mean_f1
        << ',' << row.std_f1 << ',' << row.total_false_positives << '\n';
    rows_json.push_back({{"method", row.config.method}, {"params", row.config.params},
                         {"mean_f1", row.mean_f1}, {"std_f1", row.std_f1},
                         {"total_fp", row.total_false_positives}});
  }
  const std::string json_path = (dir / "grid_results.json").string();
  std::ofstream(json_path) << rows_json.dump(2) << '\n';
  manifest.outputs = {csv_path, json_path};
  manifest.write(dir);
  std::cout << rows.size() << " configs ranked in " << csv_path << '\n';
  return 0;
}

StreamScorer sword_scorer(DetectorConfig cfg, uint64_t moment_seed) {
  cfg.threshold = ThresholdSpec::absolute(std::numeric_limits<double>::infinity());
  return [cfg, moment_seed](const std::vector<GraphSnapshot>& snapshots) {
    return scored_only(detect_stream(shared_moments(snapshots, moment_seed), cfg));
  };
}

StreamScorer lad_scorer(int rank, int short_window, int long_window) {
  return [=](const std::vector<GraphSnapshot>& snapshots) {
    return scored_only(lad_detect(snapshots, rank, short_window, long_window,
                                  std::numeric_limits<double>::infinity(), 1));
  };
}

void write_arl_csv(std::ofstream& csv, const std::string& method,
                   const ArlAddReport& report) {
  for (const ArlAddRow& row : report.rows) {
    csv << method << ',' << row.theta << ',' << row.arl0 << ',' << row.censored_fraction
        << ',' << row.detection_rate << ',';
    if (row.add_reported) csv << row.add;
    csv << '\n';
  }
}

int cmd_arl(uint64_t seed, int n_seeds, int t_null, const std::string& out) {
  ManifestWriter manifest;
  manifest.command = "arl";
  manifest.seeds = seed_range(seed, n_seeds);
  manifest.config = {{"n_seeds", n_seeds}, {"t_null", t_null}};

  const ScenarioSpec null_spec = scenario_er_null(seed, 50, t_null, 0.1);
  ScenarioSpec change_spec = scenario_hard_er(seed + 100000, 0.20);
  change_spec.name = "arl-change";

  DetectorConfig sword_cfg;
  sword_cfg.k = 4;
  sword_cfg.mode = DistanceMode::kWeightedGamma;
  sword_cfg.window = {2, 2, Weighting::kUniform, 0.7};
  const ArlAddReport sword_report =
      measure_arl_add(sword_scorer(sword_cfg, seed), null_spec, change_spec,
                      {0.03, 0.04, 0.05, 0.06, 0.07}, n_seeds);
  const ArlAddReport lad_report =
      measure_arl_add(lad_scorer(6, 5, 10), null_spec, change_spec,
                      {0.002, 0.005, 0.01, 0.02, 0.05}, n_seeds);

  const fs::path dir = ensure_dir(out);
  const std::string csv_path = (dir / "arl_add.csv").string();
  std::ofstream csv(csv_path);
  csv << "method,theta,arl0,censored_fraction,detection_rate,add\n";
  csv.precision(17);
  write_arl_csv(csv, "sword", sword_report);
  write_arl_csv(csv, "lad", lad_report);
  manifest.outputs = {csv_path};
  manifest.write(dir);
  std::cout << "ARL/ADD sweep written to " << csv_path << '\n';
  return 0;
}

int cmd_ksweep(uint64_t seed, int n_seeds, int k_min, int k_max, bool exact,
               const std::string& out) {
  ManifestWriter manifest;
  manifest.command = "ksweep";
  manifest.seeds = seed_range(seed, n_seeds);
  manifest.config = {{"k_min", k_min}, {"k_max", k_max}, {"exact", exact}};

  std::vector<std::vector<MomentVector>> streams;
  std::vector<int> true_cps;
  for (uint64_t s : manifest.seeds) {
    const GeneratedStream stream = generate_sequence(scenario_hard_er(s, 0.20));
    true_cps = stream.change_points;
    std::vector<MomentVector> moments;
    if (exact) {
      for (const GraphSnapshot& g : stream.snapshots) {
        moments.push_back(exact_moments(g, kDefaultOrder));
      }
    } else {
      moments = shared_moments(stream.snapshots, s);
    }
    streams.push_back(std::move(moments));
  }

  DetectorConfig base;
  base.mode = DistanceMode::kWeightedGamma;
  base.cooldown = 7;
  base.window = {2, 2, Weighting::kUniform, 0.7};
  const std::vector<KSweepRow> rows = k_sweep(streams, base, true_cps, 5, k_min, k_max);

  const fs::path dir = ensure_dir(out);
  const std::string csv_path = (dir / "k_sweep.csv").string();
  std::ofstream csv(csv_path);
  csv << "k,mean_f1,std_f1\n";
  csv.precision(17);
  for (const KSweepRow& row : rows) {
    csv << row.k << ',' << row.mean_f1 << ',' << row.std_f1 << '\n';
  }
  manifest.outputs = {csv_path};
  manifest.write(dir);
  std::cout << "k sweep written to " << csv_path << '\n';
  return 0;
}

// --- bench suites -------------------------------------------------------------

DetectorConfig benchmark_config(const std::string& scenario) {
  DetectorConfig cfg;
  cfg.mode = DistanceMode::kWeightedGamma;
  if (scenario == "er" || scenario == "multi") {
    cfg.threshold = ThresholdSpec::absolute(0.02);
    cfg.window = {3, 3, Weighting::kUniform, 0.7};
    cfg.k = 2;
    cfg.cooldown = 5;
  } else if (scenario == "sbm") {
    cfg.threshold = ThresholdSpec::absolute(0.02);
    cfg.window = {4, 4, Weighting::kUniform, 0.7};
    cfg.k = 2;
    cfg.cooldown = 7;
  } else if (scenario == "ba") {
    cfg.threshold = ThresholdSpec::absolute(0.05);
    cfg.window = {2, 2, Weighting::kUniform, 0.7};
    cfg.k = 2;
    cfg.cooldown = 15;
  } else if (scenario == "ws") {
    cfg.threshold = ThresholdSpec::absolute(0.02);
    cfg.window = {7, 7, Weighting::kUniform, 0.7};
    cfg.k = 3;
    cfg.cooldown = 15;
  } else {
    throw CLI::ValidationError("no stored config for scenario " + scenario);
  }
  return cfg;
}

DetectorConfig hard_er_fixed_config() {
  DetectorConfig cfg;
  cfg.threshold = ThresholdSpec::absolute(0.005);
  cfg.k = 4;
  cfg.cooldown = 7;
  cfg.mode = DistanceMode::kWeightedGamma;
  cfg.window = {2, 2, Weighting::kUniform, 0.7};
  return cfg;
}

int bench_synthetic(uint64_t seed, int n_seeds, const fs::path& dir,
                    ManifestWriter& manifest) {
  const std::vector<std::string> scenarios{"er", "sbm", "ba", "ws", "multi"};
  const std::string long_path = (dir / "synthetic_long.csv").string();
  const std::string table_path = (dir / "synthetic_table.csv").string();
  std::ofstream longf(long_path);
  std::ofstream table(table_path);
  longf << "dataset,method,seed,f1\n";
  table << "dataset,method,mean_f1,std_f1\n";

  for (const std::string& scenario : scenarios) {
    std::map<std::string, std::vector<double>> by_method;
    for (uint64_t s : seed_range(seed, n_seeds)) {
      const GeneratedStream stream = generate_sequence(scenario_by_name(scenario, s));
      const std::vector<MomentVector> moments = shared_moments(stream.snapshots, s);
      std::vector<FeatureVector> features;
      for (const GraphSnapshot& g : stream.snapshots) {
        features.push_back(extract_features(g));
      }

      const DetectorConfig sword_cfg = benchmark_config(scenario);
      std::map<std::string, std::vector<int>> detections;
      detections["sword"] = detect_stream(moments, sword_cfg).detections;
      detections["cusum"] =
          cusum_detect(features, 0.5, 4.0, sword_cfg.window.span(), 10).detections;
      detections["ewma"] =
          ewma_detect(features, 0.2, 3.0, sword_cfg.window.span(), 10).detections;
      detections["lad"] = lad_detect(stream.snapshots, 6, 5, 10, 0.01, 10).detections;

      for (const auto& [method, dets] : detections) {
        const double f1 = match_detections(stream.change_points, dets, 5).f1;
        by_method[method].push_back(f1);
        longf << scenario << ',' << method << ',' << s << ',' << f1 << '\n';
      }
    }
    for (const auto& [method, f1s] : by_method) {
      table << scenario << ',' << method << ',' << mean_of(f1s) << ',' << std_of(f1s)
            << '\n';
    }
  }
  manifest.outputs = {long_path, table_path};
  return 0;
}

int bench_hard(const std::string& suite, uint64_t seed, int n_seeds, const fs::path& dir,
               ManifestWriter& manifest) {
  const bool er = suite == "hard-er";
  const std::vector<double> levels = er
      ? std::vector<double>{0.15, 0.18, 0.20, 0.22, 0.25, 0.30, 0.40}
      : std::vector<double>{0.02, 0.05, 0.08, 0.10, 0.15, 0.20, 0.25};
  const std::string long_path = (dir / (suite + "_long.csv")).string();
  const std::string table_path = (dir / (suite + "_table.csv")).string();
  std::ofstream longf(long_path);
  std::ofstream table(table_path);
  const char* level_name = er ? "p2" : "p_out";
  longf << level_name << ",method,seed,f1\n";
  table << level_name << ",method,mean_f1,std_f1\n";

  // SWORD at the hard-ER fixed config, or the SBM-family best on hard-SBM.
  DetectorConfig sword_cfg = er ? hard_er_fixed_config() : benchmark_config("sbm");
  if (!er) sword_cfg.cooldown = 7;

  for (double level : levels) {
    std::map<std::string, std::vector<double>> by_method;
    for (uint64_t s : seed_range(seed, n_seeds)) {
      const ScenarioSpec spec = er ? scenario_hard_er(s, level) : scenario_hard_sbm(s, level);
      const GeneratedStream stream = generate_sequence(spec);
      const std::vector<MomentVector> moments = shared_moments(stream.snapshots, s);

      CascadeConfig scpd_cfg;  // S0 fixed-cfg defaults
      std::map<std::string, std::vector<int>> detections;
      detections["sword"] = detect_stream(moments, sword_cfg).detections;
      detections["scpd"] = scpd_score_stream(moments, scpd_cfg).detections;

      for (const auto& [method, dets] : detections) {
        const double f1 = match_detections(stream.change_points, dets, 5).f1;
        by_method[method].push_back(f1);
        longf << level << ',' << method << ',' << s << ',' << f1 << '\n';
      }
    }
    for (const auto& [method, f1s] : by_method) {
      table << level << ',' << method << ',' << mean_of(f1s) << ',' << std_of(f1s) << '\n';
    }
  }
  manifest.outputs = {long_path, table_path};
  return 0;
}

int bench_bins(uint64_t seed, int n_seeds, const fs::path& dir, ManifestWriter& manifest) {
  std::vector<std::vector<MomentVector>> streams;
  std::vector<int> true_cps;
  for (uint64_t s : seed_range(seed, n_seeds)) {
    const GeneratedStream stream = generate_sequence(scenario_hard_er(s, 0.20));
    true_cps = stream.change_points;
    streams.push_back(shared_moments(stream.snapshots, s));
  }
  CascadeConfig cfg;
  const std::vector<BinSweepRow> rows =
      bin_sweep(streams, true_cps, 5, cfg, {8, 32, 128, 1024, kUnbinned});

  const std::string csv_path = (dir / "bin_sweep.csv").string();
  std::ofstream csv(csv_path);
  csv << "n_bins,mean_f1,std_f1\n";
  for (const BinSweepRow& row : rows) {
    if (row.n_bins == kUnbinned) {
      csv << "unbinned";
    } else {
      csv << row.n_bins;
    }
    csv << ',' << row.mean_f1 << ',' << row.std_f1 << '\n';
  }
  manifest.outputs = {csv_path};
  return 0;
}

int bench_cascade(uint64_t seed, int n_seeds, const fs::path& dir,
                  ManifestWriter& manifest) {
  const std::string csv_path = (dir / "cascade.csv").string();
  std::ofstream csv(csv_path);
  csv << "stage,dataset,seed,f1\n";
  const std::vector<std::string> datasets{"er", "hard-er"};
  for (const std::string& dataset : datasets) {
    for (uint64_t s : seed_range(seed, n_seeds)) {
      const GeneratedStream stream = generate_sequence(scenario_by_name(dataset, s));
      const std::vector<MomentVector> moments = shared_moments(stream.snapshots, s);
      for (const CascadeStage stage :
           {CascadeStage::kS0, CascadeStage::kS1, CascadeStage::kS2, CascadeStage::kS3,
            CascadeStage::kS3Half, CascadeStage::kS4, CascadeStage::kS5}) {
        CascadeConfig cfg;
        cfg.stage = stage;
        const ScoredStream scores = scored_only(scpd_score_stream(moments, cfg));
        const TunedThreshold tuned =
            tune_threshold(scores, stream.change_points, 5, cfg.cooldown);
        csv << stage_name(stage) << ',' << dataset << ',' << s << ',' << tuned.f1 << '\n';
      }
    }
  }
  manifest.outputs = {csv_path};
  return 0;
}

int cmd_bench(const std::string& suite, uint64_t seed, int n_seeds, const std::string& out) {
  ManifestWriter manifest;
  manifest.command = "bench";
  manifest.config = {{"suite", suite}, {"n_seeds", n_seeds}};
  manifest.seeds = seed_range(seed, n_seeds);
  const fs::path dir = ensure_dir(out);

  if (suite == "synthetic") {
    bench_synthetic(seed, n_seeds, dir, manifest);
  } else if (suite == "hard-er" || suite == "hard-sbm") {
    bench_hard(suite, seed, n_seeds, dir, manifest);
  } else if (suite == "bins") {
    bench_bins(seed, n_seeds, dir, manifest);
  } else if (suite == "cascade") {
    bench_cascade(seed, n_seeds, dir, manifest);
  } else if (suite == "arl") {
    return cmd_arl(seed, n_seeds, 500, out);
  } else if (suite == "ksweep") {
    return cmd_ksweep(seed, n_seeds, 1, 30, /*exact=*/true, out);
  } else {
    throw CLI::ValidationError(
        "unknown suite " + suite +
        "; available: synthetic, hard-er, hard-sbm, arl, bins, cascade, ksweep");
  }
  manifest.write(dir);
  std::cout << "suite " << suite << " written to " << dir.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SWORD: spectral change-point detection on dynamic graph streams"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand("generate", "generate a synthetic stream");
  generate->add_option("--scenario", gen.scenario,
                       "er|sbm|ba|ws|multi|hard-er|hard-sbm");
  generate->add_option("--seed", gen.seed, "stream seed");
  generate->add_option("--out", gen.out, "output directory");
  generate->add_option("--p2", gen.p2, "hard-er post-change density");
  generate->add_option("--p-out", gen.p_out, "hard-sbm inter-block density");

  MomentsArgs mom;
  CLI::App* moments = app.add_subcommand("moments", "compute Chebyshev moment cache");
  moments->add_option("--in", mom.in, "snapshots.jsonl")->required();
  moments->add_option("--out", mom.out, "output directory");
  moments->add_option("--K", mom.K, "moment order");
  moments->add_option("--R", mom.R, "probe count");
  moments->add_option("--seed", mom.seed, "probe seed");
  moments->add_option("--sharing", mom.sharing, "shared|fresh");
  moments->add_flag("--exact", mom.exact, "dense-spectrum oracle (small n)");

  DetectArgs det;
  CLI::App* detect = app.add_subcommand("detect", "run a detector over a stream");
  detect->add_option("--moments", det.moments, "moment cache CSV");
  detect->add_option("--snapshots", det.snapshots, "snapshots.jsonl (feature baselines)");
  detect->add_option("--out", det.out, "output directory");
  detect->add_option("--method", det.method, "sword|scpd-stage|laddos|cusum|ewma|lad");
  detect->add_option("--theta", det.theta, "absolute threshold");
  detect->add_option("--percentile", det.percentile, "percentile threshold (sword)");
  detect->add_option("--t-cal", det.t_cal, "calibration span for percentile mode");
  detect->add_option("--k", det.k, "moment comparison order");
  detect->add_option("--cooldown", det.cooldown, "detection cooldown");
  detect->add_option("--mode", det.mode, "pairwise|centroid|gamma");
  detect->add_option("--w", det.w, "test window");
  detect->add_option("--w-ref", det.w_ref, "reference window");
  detect->add_option("--weighting", det.weighting, "uniform|exponential");
  detect->add_option("--decay", det.decay, "exponential decay");
  detect->add_option("--stage", det.stage, "cascade stage S0..S5");
  detect->add_option("--n-bins", det.n_bins, "DOS histogram bins (-1 = unbinned)");
  detect->add_option("--context", det.context, "scaffold context length");
  detect->add_option("--context-long", det.context_long, "laddos long context");
  detect->add_option("--clamp-order", det.clamp_order, "clamp-then-max|max-then-diff");
  detect->add_option("--kappa", det.kappa, "CUSUM slack");
  detect->add_option("--lambda", det.lambda, "EWMA smoothing");
  detect->add_option("--L", det.limit, "EWMA control limit width");
  detect->add_option("--burn-in", det.burn_in, "feature baseline burn-in");
  detect->add_option("--r", det.rank, "LAD signature rank");
  detect->add_option("--short", det.short_window, "LAD short context");
  detect->add_option("--long", det.long_window, "LAD long context");

  std::string grid_path, sweep_out = "out";
  size_t sweep_top = 50;
  CLI::App* sweep = app.add_subcommand("sweep", "grid search over a config file");
  sweep->add_option("--grid", grid_path, "grid spec file")->required();
  sweep->add_option("--out", sweep_out, "output directory");
  sweep->add_option("--top", sweep_top, "rows to keep");

  uint64_t arl_seed = 1;
  int arl_seeds = 20, arl_t_null = 500;
  std::string arl_out = "out";
  CLI::App* arl = app.add_subcommand("arl", "ARL0/ADD threshold sweep");
  arl->add_option("--seed", arl_seed, "base seed");
  arl->add_option("--seeds", arl_seeds, "number of seeds");
  arl->add_option("--t-null", arl_t_null, "null-run length");
  arl->add_option("--out", arl_out, "output directory");

  uint64_t ks_seed = 1;
  int ks_seeds = 10, k_min = 1, k_max = 30;
  bool ks_exact = false;
  std::string ks_out = "out";
  CLI::App* ksweep = app.add_subcommand("ksweep", "k-sensitivity sweep on hard-ER");
  ksweep->add_option("--seed", ks_seed, "base seed");
  ksweep->add_option("--seeds", ks_seeds, "number of seeds");
  ksweep->add_option("--kmin", k_min, "smallest k");
  ksweep->add_option("--kmax", k_max, "largest k");
  ksweep->add_flag("--exact", ks_exact, "use exact moments");
  ksweep->add_option("--out", ks_out, "output directory");

  std::string suite, bench_out = "out";
  uint64_t bench_seed = 1;
  int bench_seeds = 10;
  CLI::App* bench = app.add_subcommand("bench", "run a named benchmark suite");
  bench->add_option("--suite", suite, "synthetic|hard-er|hard-sbm|arl|bins|cascade|ksweep")
      ->required();
  bench->add_option("--seed", bench_seed, "base seed");
  bench->add_option("--seeds", bench_seeds, "number of seeds");
  bench->add_option("--out", bench_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return cmd_generate(gen);
    if (moments->parsed()) return cmd_moments(mom);
    if (detect->parsed()) return cmd_detect(det);
    if (sweep->parsed()) return cmd_sweep(grid_path, sweep_out, sweep_top);
    if (arl->parsed()) return cmd_arl(arl_seed, arl_seeds, arl_t_null, arl_out);
    if (ksweep->parsed()) {
      return cmd_ksweep(ks_seed, ks_seeds, k_min, k_max, ks_exact, ks_out);
    }
    if (bench->parsed()) return cmd_bench(suite, bench_seed, bench_seeds, bench_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
