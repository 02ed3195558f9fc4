#include "sword/synth.hpp"

#include <algorithm>
#include <stdexcept>

#include "sword/rng.hpp"

namespace sword {

namespace {

void check_probability(double p, const char* what) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

std::vector<std::pair<int, int>> gen_er_edges(int n, double p, Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (rng.next_double() < p) edges.emplace_back(u, v);
    }
  }
  return edges;
}

// Contiguous near-even blocks: node i belongs to block i*blocks/n.
std::vector<std::pair<int, int>> gen_sbm_edges(int n, int blocks, double p_in,
                                               double p_out, Rng& rng) {
  std::vector<int> block(n);
  for (int i = 0; i < n; ++i) block[i] = static_cast<int>(int64_t(i) * blocks / n);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double p = block[u] == block[v] ? p_in : p_out;
      if (rng.next_double() < p) edges.emplace_back(u, v);
    }
  }
  return edges;
}

// Star on attach+1 nodes, then each new node attaches `attach` preferential
// edges without multi-edges. Total edge count is attach * (n - attach).
std::vector<std::pair<int, int>> gen_ba_edges(int n, int attach, Rng& rng) {
  if (attach < 1 || attach >= n) throw std::invalid_argument("BA requires 1 <= m < n");
  std::vector<std::pair<int, int>> edges;
  std::vector<int> degree(n, 0);
  // Repeated-endpoint list drives the preferential draw.
  std::vector<int> endpoints;
  for (int v = 1; v <= attach; ++v) {
    edges.emplace_back(0, v);
    degree[0]++;
    degree[v]++;
    endpoints.push_back(0);
    endpoints.push_back(v);
  }
  std::vector<int> targets;
  for (int v = attach + 1; v < n; ++v) {
    targets.clear();
    while (static_cast<int>(targets.size()) < attach) {
      const int u = endpoints[rng.next_below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), u) == targets.end()) {
        targets.push_back(u);
      }
    }
    for (int u : targets) {
      edges.emplace_back(u, v);
      degree[u]++;
      degree[v]++;
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  return edges;
}

// Ring lattice with ring_neighbors/2 neighbors per side, then per-edge
// rewiring of the far endpoint; the original edge is kept if no valid
// rewire target is found.
std::vector<std::pair<int, int>> gen_ws_edges(int n, int ring_neighbors, double p,
                                              Rng& rng) {
  if (ring_neighbors < 2 || ring_neighbors % 2 != 0 || ring_neighbors >= n) {
    throw std::invalid_argument("WS requires even ring degree in [2, n)");
  }
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int j = 1; j <= ring_neighbors / 2; ++j) {
      const int v = (u + j) % n;
      edges.emplace_back(u, v);
      adj[u][v] = adj[v][u] = 1;
    }
  }
  for (auto& [u, v] : edges) {
    if (rng.next_double() >= p) continue;
    for (int attempt = 0; attempt < 16; ++attempt) {
      const int w = static_cast<int>(rng.next_below(uint64_t(n)));
      if (w == u || w == v || adj[u][w]) continue;
      adj[u][v] = adj[v][u] = 0;
      adj[u][w] = adj[w][u] = 1;
      v = w;
      break;
    }
  }
  return edges;
}

std::vector<std::pair<int, int>> gen_segment(int n, const SegmentSpec& seg, Rng& rng) {
  switch (seg.family) {
    case GraphFamily::kEr:
      check_probability(seg.p, "ER edge probability");
      return gen_er_edges(n, seg.p, rng);
    case GraphFamily::kSbm:
      check_probability(seg.p_in, "SBM p_in");
      check_probability(seg.p_out, "SBM p_out");
      if (seg.blocks < 1 || seg.blocks > n) throw std::invalid_argument("SBM block count invalid");
      return gen_sbm_edges(n, seg.blocks, seg.p_in, seg.p_out, rng);
    case GraphFamily::kBa:
      return gen_ba_edges(n, seg.attach, rng);
    case GraphFamily::kWs:
      check_probability(seg.p, "WS rewiring probability");
      return gen_ws_edges(n, seg.ring_neighbors, seg.p, rng);
  }
  throw std::invalid_argument("unknown graph family");
}

}  // namespace

void ScenarioSpec::validate() const {
  if (n < 1 || T < 1) throw std::invalid_argument("scenario requires n >= 1 and T >= 1");
  if (segments.size() != change_points.size() + 1) {
    throw std::invalid_argument("scenario needs change_points.size() + 1 segments");
  }
  int prev = 1;
  for (int cp : change_points) {
    if (cp <= prev || cp > T) {
      throw std::invalid_argument("change points must be strictly increasing in (1, T]");
    }
    prev = cp;
  }
}

GeneratedStream generate_sequence(const ScenarioSpec& spec) {
  spec.validate();
  const Rng stream = Rng::from_seed(spec.seed);
  GeneratedStream out;
  out.change_points = spec.change_points;
  out.snapshots.reserve(spec.T);
  for (int t = 1; t <= spec.T; ++t) {
    size_t seg = 0;
    while (seg < spec.change_points.size() && t >= spec.change_points[seg]) ++seg;
    Rng rng = stream.substream(static_cast<uint64_t>(t));
    out.snapshots.push_back(
        GraphSnapshot::from_edges(t, spec.n, gen_segment(spec.n, spec.segments[seg], rng)));
  }
  return out;
}

ScenarioSpec scenario_er(uint64_t seed, int n, int T, int cp, double p1, double p2) {
  ScenarioSpec spec;
  spec.name = "er";
  spec.n = n;
  spec.T = T;
  spec.change_points = {cp};
  SegmentSpec a, b;
  a.family = b.family = GraphFamily::kEr;
  a.p = p1;
  b.p = p2;
  spec.segments = {a, b};
  spec.seed = seed;
  return spec;
}

ScenarioSpec scenario_sbm(uint64_t seed) {
  ScenarioSpec spec;
  spec.name = "sbm";
  spec.change_points = {50};
  SegmentSpec a;
  a.family = GraphFamily::kSbm;
  a.blocks = 3;
  a.p_in = 0.3;
  a.p_out = 0.02;
  SegmentSpec b = a;
  b.blocks = 2;
  spec.segments = {a, b};
  spec.seed = seed;
  return spec;
}

ScenarioSpec scenario_ba(uint64_t seed) {
  ScenarioSpec spec;
  spec.name = "ba";
  spec.change_points = {50};
  SegmentSpec a, b;
  a.family = b.family = GraphFamily::kBa;
  a.attach = 2;
  b.attach = 5;
  spec.segments = {a, b};
  spec.seed = seed;
  return spec;
}

ScenarioSpec scenario_ws(uint64_t seed) {
  ScenarioSpec spec;
  spec.name = "ws";
  spec.change_points = {50};
  SegmentSpec a, b;
  a.family = b.family = GraphFamily::kWs;
  a.p = 0.1;
  b.p = 0.5;
  spec.segments = {a, b};
  spec.seed = seed;
  return spec;
}

ScenarioSpec scenario_multi_cp(uint64_t seed) {
  ScenarioSpec spec;
  spec.name = "multi";
  spec.T = 150;
  spec.change_points = {50, 100};
  SegmentSpec a, b, c;
  a.family = b.family = GraphFamily::kEr;
  a.p = 0.1;
  b.p = 0.3;
  c.family = GraphFamily::kSbm;
  c.blocks = 2;
  c.p_in = 0.3;
  c.p_out = 0.02;
  spec.segments = {a, b, c};
  spec.seed = seed;
  return spec;
}

ScenarioSpec scenario_hard_er(uint64_t seed, double p2, int T) {
  ScenarioSpec spec = scenario_er(seed, 50, T, 50, 0.10, p2);
  spec.name = "hard-er";
  return spec;
}

ScenarioSpec scenario_hard_sbm(uint64_t seed, double p_out) {
  ScenarioSpec spec;
  spec.name = "hard-sbm";
  spec.n = 60;
  spec.change_points = {50};
  SegmentSpec a;
  a.family = GraphFamily::kSbm;
  a.blocks = 3;
  a.p_in = 0.30;
  a.p_out = p_out;
  SegmentSpec b = a;
  b.blocks = 2;
  spec.segments = {a, b};
  spec.seed = seed;
  return spec;
}

ScenarioSpec scenario_er_null(uint64_t seed, int n, int T, double p) {
  ScenarioSpec spec;
  spec.name = "er-null";
  spec.n = n;
  spec.T = T;
  SegmentSpec a;
  a.family = GraphFamily::kEr;
  a.p = p;
  spec.segments = {a};
  spec.seed = seed;
  return spec;
}

ScenarioSpec scenario_by_name(const std::string& name, uint64_t seed) {
  if (name == "er") return scenario_er(seed);
  if (name == "sbm") return scenario_sbm(seed);
  if (name == "ba") return scenario_ba(seed);
  if (name == "ws") return scenario_ws(seed);
  if (name == "multi") return scenario_multi_cp(seed);
  if (name == "hard-er") return scenario_hard_er(seed, 0.20);
  if (name == "hard-sbm") return scenario_hard_sbm(seed, 0.05);
  throw std::invalid_argument("unknown scenario: " + name);
}

}  // namespace sword
