#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sword/graph.hpp"

namespace sword {

enum class GraphFamily { kEr, kSbm, kBa, kWs };

// Generator parameters for one segment of a stream; fields beyond the
// family's are ignored.
struct SegmentSpec {
  GraphFamily family = GraphFamily::kEr;
  double p = 0.1;            // ER edge probability / WS rewiring probability
  int blocks = 0;            // SBM block count
  double p_in = 0.0;         // SBM within-block probability
  double p_out = 0.0;        // SBM between-block probability
  int attach = 2;            // BA edges per new node
  int ring_neighbors = 4;    // WS lattice degree (even)
};

struct ScenarioSpec {
  std::string name;
  int n = 100;
  int T = 100;
  std::vector<int> change_points;  // strictly increasing, in (1, T]
  std::vector<SegmentSpec> segments;  // change_points.size() + 1 entries
  uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument
};

struct GeneratedStream {
  std::vector<GraphSnapshot> snapshots;
  std::vector<int> change_points;
};

// T snapshots, each drawn fresh from the active segment's generator;
// deterministic given spec.seed (per-snapshot RNG substreams).
GeneratedStream generate_sequence(const ScenarioSpec& spec);

// Named benchmark scenario builders.
ScenarioSpec scenario_er(uint64_t seed, int n = 100, int T = 100, int cp = 50,
                         double p1 = 0.1, double p2 = 0.3);
ScenarioSpec scenario_sbm(uint64_t seed);        // 3 blocks -> 2, p_in=.3, p_out=.02
ScenarioSpec scenario_ba(uint64_t seed);         // attach 2 -> 5
ScenarioSpec scenario_ws(uint64_t seed);         // rewiring .1 -> .5
ScenarioSpec scenario_multi_cp(uint64_t seed);   // ER(.1) -> ER(.3) -> SBM(2 blocks)
ScenarioSpec scenario_hard_er(uint64_t seed, double p2, int T = 100);  // n=50, p1=.10
ScenarioSpec scenario_hard_sbm(uint64_t seed, double p_out);  // n=60, 3->2 blocks
ScenarioSpec scenario_er_null(uint64_t seed, int n, int T, double p);  // no change point

ScenarioSpec scenario_by_name(const std::string& name, uint64_t seed);

}  // namespace sword
