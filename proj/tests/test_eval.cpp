#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "sword/eval.hpp"
#include "sword/kpm.hpp"

using namespace sword;

TEST_CASE("match_detections hand examples") {
  const MatchReport a = match_detections({50}, {52, 54}, 5);
  CHECK(a.matches == std::vector<std::pair<int, int>>{{50, 52}});
  CHECK(a.false_positives == std::vector<int>{54});
  CHECK(a.precision == doctest::Approx(0.5));
  CHECK(a.recall == doctest::Approx(1.0));
  CHECK(a.f1 == doctest::Approx(2.0 / 3.0));

  const MatchReport b = match_detections({50}, {49}, 5);
  CHECK(b.matches.empty());
  CHECK(b.false_positives == std::vector<int>{49});  // one-sided: 49 < 50

  const MatchReport c = match_detections({50, 100}, {}, 5);
  CHECK(c.f1 == doctest::Approx(0.0));
  CHECK(c.false_negatives.size() == 2);
}

TEST_CASE("matching is one-to-one, earliest-first, and order-insensitive") {
  // Both detections fall in [50, 55]; only the earlier one matches.
  const MatchReport a = match_detections({50}, {51, 53}, 5);
  CHECK(a.matches == std::vector<std::pair<int, int>>{{50, 51}});
  CHECK(a.false_positives == std::vector<int>{53});

  const MatchReport shuffled = match_detections({50}, {53, 51}, 5);
  CHECK(shuffled.matches == a.matches);

  // Internal consistency: P and R recompute from the lists.
  const MatchReport r = match_detections({10, 40, 80}, {11, 15, 44, 79}, 5);
  const double tp = static_cast<double>(r.matches.size());
  CHECK(r.precision == doctest::Approx(tp / (tp + r.false_positives.size())));
  CHECK(r.recall == doctest::Approx(tp / (tp + r.false_negatives.size())));
}

TEST_CASE("threshold_pass applies threshold and cooldown") {
  ScoredStream scores;
  for (int t = 1; t <= 10; ++t) {
    scores.t.push_back(t);
    scores.score.push_back(t % 2 == 0 ? 1.0 : 0.0);
  }
  CHECK(threshold_pass(scores, 0.5, 1) == std::vector<int>{2, 4, 6, 8, 10});
  CHECK(threshold_pass(scores, 0.5, 4) == std::vector<int>{2, 6, 10});
  CHECK(threshold_pass(scores, 2.0, 1).empty());
}

TEST_CASE("tune_threshold prefers the best F1, then fewer FPs, then larger theta") {
  ScoredStream scores;
  // One clean peak at t=50 plus a smaller nuisance peak at t=20.
  for (int t = 1; t <= 60; ++t) {
    scores.t.push_back(t);
    scores.score.push_back(t == 50 ? 1.0 : (t == 20 ? 0.4 : 0.0));
  }
  const TunedThreshold best = tune_threshold(scores, {50}, 5, 5);
  CHECK(best.theta == doctest::Approx(1.0));
  CHECK(best.f1 == doctest::Approx(1.0));

  // All-zero scores can never beat the no-detection fallback.
  ScoredStream flat;
  for (int t = 1; t <= 30; ++t) {
    flat.t.push_back(t);
    flat.score.push_back(0.0);
  }
  const TunedThreshold none = tune_threshold(flat, {15}, 5, 5);
  CHECK(none.f1 == doctest::Approx(0.0));
  CHECK(std::isinf(none.theta));
}

TEST_CASE("measure_arl_add degenerate thresholds") {
  const ScenarioSpec null_spec = scenario_er_null(1, 20, 30, 0.1);
  ScenarioSpec change_spec = scenario_er(100, 20, 30, 15, 0.1, 0.4);

  // Score with exact moments so runs are cheap and deterministic.
  DetectorConfig cfg;
  cfg.k = 2;
  cfg.mode = DistanceMode::kCentroidL1;
  cfg.window = {2, 2, Weighting::kUniform, 0.7};
  cfg.threshold = ThresholdSpec::absolute(std::numeric_limits<double>::infinity());
  const StreamScorer scorer = [&cfg](const std::vector<GraphSnapshot>& snapshots) {
    std::vector<MomentVector> moments;
    for (const GraphSnapshot& g : snapshots) moments.push_back(exact_moments(g, 2));
    return scored_only(detect_stream(moments, cfg));
  };

  const double inf = std::numeric_limits<double>::infinity();
  const ArlAddReport report =
      measure_arl_add(scorer, null_spec, change_spec, {0.0, 0.01, 0.05, inf}, 5);
  REQUIRE(report.rows.size() == 4);

  // theta = 0: alarm at the first scored step, w + w_ref.
  CHECK(report.rows[0].arl0 == doctest::Approx(4.0));
  CHECK(report.rows[0].detection_rate == doctest::Approx(1.0));
  CHECK(report.rows[0].add == doctest::Approx(0.0));

  // theta = inf: fully censored, no detections.
  const ArlAddRow& last = report.rows.back();
  CHECK(last.arl0 == doctest::Approx(30.0));
  CHECK(last.censored_fraction == doctest::Approx(1.0));
  CHECK(last.detection_rate == doctest::Approx(0.0));
  CHECK(!last.add_reported);

  // ARL0 is non-decreasing in theta over the sweep.
  for (size_t i = 1; i < report.rows.size(); ++i) {
    CHECK(report.rows[i].arl0 >= report.rows[i - 1].arl0 - 1e-12);
  }
}

TEST_CASE("measure_arl_add validates its scenarios") {
  const ScenarioSpec null_spec = scenario_er_null(1, 10, 20, 0.1);
  const ScenarioSpec change_spec = scenario_er(1, 10, 20, 10, 0.1, 0.3);
  const StreamScorer noop = [](const std::vector<GraphSnapshot>&) { return ScoredStream{}; };
  CHECK_THROWS_AS(measure_arl_add(noop, null_spec, change_spec, {0.1}, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(measure_arl_add(noop, change_spec, change_spec, {0.1, 0.2}, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(measure_arl_add(noop, null_spec, null_spec, {0.1, 0.2}, 2),
                  std::invalid_argument);
}

TEST_CASE("enumerate_grid builds the Cartesian product") {
  GridSpec spec;
  spec.method = "sword";
  spec.axes["theta"] = {0.01, 0.02};
  spec.axes["k"] = {2, 4, 8};
  CHECK(enumerate_grid(spec).size() == 6);

  spec.axes["k"] = {};
  CHECK_THROWS_AS(enumerate_grid(spec), std::invalid_argument);

  GridSpec empty;
  CHECK_THROWS_AS(enumerate_grid(empty), std::invalid_argument);
}

TEST_CASE("grid_search on a single config yields one deterministic row") {
  GridSpec spec;
  spec.method = "sword";
  spec.scenario = "er";
  spec.seeds = {1};
  spec.delta = 5;
  spec.axes["theta"] = {0.02};
  spec.axes["w"] = {3};
  spec.axes["w_ref"] = {3};
  spec.axes["k"] = {2};
  spec.axes["cooldown"] = {5};
  spec.axes["mode"] = {2};

  const std::vector<GridResultRow> rows = grid_search(spec);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].std_f1 == doctest::Approx(0.0));
  CHECK(rows[0].mean_f1 == doctest::Approx(1.0));

  const std::vector<GridResultRow> again = grid_search(spec);
  CHECK(again[0].mean_f1 == rows[0].mean_f1);
  CHECK(again[0].total_false_positives == rows[0].total_false_positives);
}

TEST_CASE("evaluate_config rejects unknown methods") {
  GridConfig cfg;
  cfg.method = "bocpd";
  CHECK_THROWS_AS(evaluate_config(cfg, {}, {}, {50}, 5), std::invalid_argument);
}

TEST_CASE("k_sweep covers the range and fails at k=1 on exact moments") {
  std::vector<std::vector<MomentVector>> streams;
  std::vector<int> true_cps;
  for (uint64_t seed = 1; seed <= 2; ++seed) {
    const GeneratedStream stream = generate_sequence(scenario_hard_er(seed, 0.25, 60));
    true_cps = stream.change_points;
    std::vector<MomentVector> moments;
    for (const GraphSnapshot& g : stream.snapshots) moments.push_back(exact_moments(g, 10));
    streams.push_back(std::move(moments));
  }

  DetectorConfig base;
  base.mode = DistanceMode::kWeightedGamma;
  base.cooldown = 7;
  base.window = {2, 2, Weighting::kUniform, 0.7};

  const std::vector<KSweepRow> rows = k_sweep(streams, base, true_cps, 5, 1, 6);
  REQUIRE(rows.size() == 6);
  for (int k = 1; k <= 6; ++k) CHECK(rows[k - 1].k == k);
  CHECK(rows[0].mean_f1 == doctest::Approx(0.0));  // mu_1 == 0 exactly
  CHECK(rows[3].mean_f1 > 0.5);                    // k = 4 detects the shift

  CHECK_THROWS_AS(k_sweep(streams, base, true_cps, 5, 1, 11), std::out_of_range);
}
