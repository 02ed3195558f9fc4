#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace sword {

inline constexpr int kDenseLimit = 2000;

// One timestep of an undirected graph stream. Edges are stored canonically
// (u < v, deduplicated, no self-loops); a CSR adjacency is built once at
// construction so matvecs run in O(m).
struct GraphSnapshot {
  int t = 1;
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> degree;
  std::vector<int> offsets;    // CSR row offsets, size n+1
  std::vector<int> neighbors;  // CSR column ids, size 2m

  // Normalizes a raw edge list: orients u < v, drops self-loops (counted
  // into *dropped_self_loops when given), deduplicates. Throws
  // std::invalid_argument on n < 1 or endpoints outside [0, n).
  static GraphSnapshot from_edges(int t, int n,
                                  std::vector<std::pair<int, int>> raw_edges,
                                  int* dropped_self_loops = nullptr);

  int edge_count() const { return static_cast<int>(edges.size()); }
};

// The shifted normalized Laplacian L~ = L - I = -D^{-1/2} A D^{-1/2},
// applied matrix-free. Isolated nodes map to zero, so the diagonal is
// identically 0 and the spectrum stays inside [-1, 1].
class ShiftedLaplacianOp {
 public:
  explicit ShiftedLaplacianOp(const GraphSnapshot& g);

  int dim() const { return g_->n; }

  // y = L~ x. Throws std::invalid_argument on a length mismatch.
  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(const std::vector<double>& x) const;

 private:
  const GraphSnapshot* g_;
  std::vector<double> inv_sqrt_degree_;
};

// Eigenvalues of L~, ascending. Refuses n > dense_limit.
std::vector<double> exact_spectrum(const GraphSnapshot& g,
                                   int dense_limit = kDenseLimit);

// 1-Wasserstein distance between the empirical measures of two sorted
// samples, via the closed-form CDF-difference integral. Reduces to
// (1/n) sum |a_i - b_i| at equal lengths. Throws on empty input.
double w1_sorted(std::span<const double> spec_a, std::span<const double> spec_b);

// Fixed-order summary used by the feature baselines:
// [n, m, density, mean degree, max degree, degree std,
//  component count, global clustering coefficient].
using FeatureVector = std::array<double, 8>;

FeatureVector extract_features(const GraphSnapshot& g);

}  // namespace sword
