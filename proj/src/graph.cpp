#include "sword/graph.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sword {

GraphSnapshot GraphSnapshot::from_edges(int t, int n,
                                        std::vector<std::pair<int, int>> raw_edges,
                                        int* dropped_self_loops) {
  if (n < 1) throw std::invalid_argument("snapshot node count must be >= 1");
  if (t < 1) throw std::invalid_argument("snapshot timestep must be >= 1");

  int dropped = 0;
  std::vector<std::pair<int, int>> edges;
  edges.reserve(raw_edges.size());
  for (auto [u, v] : raw_edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw std::invalid_argument("edge endpoint out of range: (" +
                                  std::to_string(u) + "," + std::to_string(v) +
                                  ") with n=" + std::to_string(n));
    }
    if (u == v) {
      ++dropped;
      continue;
    }
    if (u > v) std::swap(u, v);
    edges.emplace_back(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (dropped_self_loops) *dropped_self_loops = dropped;

  GraphSnapshot g;
  g.t = t;
  g.n = n;
  g.edges = std::move(edges);
  g.degree.assign(n, 0);
  for (auto [u, v] : g.edges) {
    ++g.degree[u];
    ++g.degree[v];
  }
  g.offsets.assign(n + 1, 0);
  for (int u = 0; u < n; ++u) g.offsets[u + 1] = g.offsets[u] + g.degree[u];
  g.neighbors.resize(2 * g.edges.size());
  std::vector<int> cursor(g.offsets.begin(), g.offsets.end() - 1);
  for (auto [u, v] : g.edges) {
    g.neighbors[cursor[u]++] = v;
    g.neighbors[cursor[v]++] = u;
  }
  return g;
}

ShiftedLaplacianOp::ShiftedLaplacianOp(const GraphSnapshot& g) : g_(&g) {
  inv_sqrt_degree_.resize(g.n);
  for (int u = 0; u < g.n; ++u) {
    inv_sqrt_degree_[u] = g.degree[u] > 0 ? 1.0 / std::sqrt(double(g.degree[u])) : 0.0;
  }
}

void ShiftedLaplacianOp::apply(std::span<const double> x, std::span<double> y) const {
  const int n = g_->n;
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n) {
    throw std::invalid_argument("matvec dimension mismatch");
  }
  for (int u = 0; u < n; ++u) {
    double acc = 0.0;
    for (int idx = g_->offsets[u]; idx < g_->offsets[u + 1]; ++idx) {
      const int v = g_->neighbors[idx];
      acc += inv_sqrt_degree_[v] * x[v];
    }
    y[u] = -inv_sqrt_degree_[u] * acc;
  }
}

std::vector<double> ShiftedLaplacianOp::apply(const std::vector<double>& x) const {
  std::vector<double> y(x.size());
  apply(std::span<const double>(x), std::span<double>(y));
  return y;
}

std::vector<double> exact_spectrum(const GraphSnapshot& g, int dense_limit) {
  if (g.n > dense_limit) {
    throw std::invalid_argument(
        "exact_spectrum refused: n=" + std::to_string(g.n) + " exceeds dense limit " +
        std::to_string(dense_limit) + "; use the KPM moment path instead");
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(g.n, g.n);
  ShiftedLaplacianOp op(g);
  std::vector<double> scale(g.n);
  for (int u = 0; u < g.n; ++u) {
    scale[u] = g.degree[u] > 0 ? 1.0 / std::sqrt(double(g.degree[u])) : 0.0;
  }
  for (auto [u, v] : g.edges) {
    const double w = -scale[u] * scale[v];
    m(u, v) = w;
    m(v, u) = w;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  std::vector<double> eig(solver.eigenvalues().data(), solver.eigenvalues().data() + g.n);
  std::sort(eig.begin(), eig.end());
  return eig;
}

double w1_sorted(std::span<const double> spec_a, std::span<const double> spec_b) {
  if (spec_a.empty() || spec_b.empty()) {
    throw std::invalid_argument("w1_sorted requires nonempty spectra");
  }
  // Integrate |F_a - F_b| over the merged breakpoints.
  const double na = double(spec_a.size());
  const double nb = double(spec_b.size());
  size_t ia = 0, ib = 0;
  double prev = std::min(spec_a.front(), spec_b.front());
  double total = 0.0;
  while (ia < spec_a.size() || ib < spec_b.size()) {
    double next;
    if (ib == spec_b.size() || (ia < spec_a.size() && spec_a[ia] <= spec_b[ib])) {
      next = spec_a[ia];
    } else {
      next = spec_b[ib];
    }
    total += std::abs(double(ia) / na - double(ib) / nb) * (next - prev);
    prev = next;
    while (ia < spec_a.size() && spec_a[ia] == next) ++ia;
    while (ib < spec_b.size() && spec_b[ib] == next) ++ib;
  }
  return total;
}

namespace {

int component_count(const GraphSnapshot& g) {
  std::vector<int> parent(g.n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  int components = g.n;
  for (auto [u, v] : g.edges) {
    int ru = find(u), rv = find(v);
    if (ru != rv) {
      parent[ru] = rv;
      --components;
    }
  }
  return components;
}

// Exact 3*triangles / wedges; 0 when the graph has no wedges.
double global_clustering(const GraphSnapshot& g) {
  long long wedges = 0;
  for (int u = 0; u < g.n; ++u) {
    const long long d = g.degree[u];
    wedges += d * (d - 1) / 2;
  }
  if (wedges == 0) return 0.0;
  long long triangles = 0;
  std::vector<char> mark(g.n, 0);
  for (int u = 0; u < g.n; ++u) {
    for (int i = g.offsets[u]; i < g.offsets[u + 1]; ++i) mark[g.neighbors[i]] = 1;
    for (int i = g.offsets[u]; i < g.offsets[u + 1]; ++i) {
      const int v = g.neighbors[i];
      if (v < u) continue;
      for (int j = g.offsets[v]; j < g.offsets[v + 1]; ++j) {
        const int w = g.neighbors[j];
        if (w > v && mark[w]) ++triangles;
      }
    }
    for (int i = g.offsets[u]; i < g.offsets[u + 1]; ++i) mark[g.neighbors[i]] = 0;
  }
  return 3.0 * double(triangles) / double(wedges);
}

}  // namespace

FeatureVector extract_features(const GraphSnapshot& g) {
  const double n = double(g.n);
  const double m = double(g.edge_count());
  const double pairs = n * (n - 1.0) / 2.0;
  double mean_deg = 0.0, max_deg = 0.0;
  for (int d : g.degree) {
    mean_deg += d;
    max_deg = std::max(max_deg, double(d));
  }
  mean_deg /= n;
  double var = 0.0;
  for (int d : g.degree) var += (d - mean_deg) * (d - mean_deg);
  var /= n;
  return FeatureVector{n,
                       m,
                       pairs > 0 ? m / pairs : 0.0,
                       mean_deg,
                       max_deg,
                       std::sqrt(var),
                       double(component_count(g)),
                       global_clustering(g)};
}

}  // namespace sword
