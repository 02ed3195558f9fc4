#pragma once

#include <cstdint>
#include <vector>

#include "sword/graph.hpp"

namespace sword {

inline constexpr int kDefaultOrder = 50;   // K
inline constexpr int kDefaultProbes = 30;  // R
inline constexpr int kUnbinned = -1;       // "infinite bins": pass raw moments through

enum class ProbeSharing {
  kFreshPerSnapshot,   // substream per snapshot t (default; statistically conservative)
  kSharedAcrossStream  // one probe set reused on every snapshot (variance
                       // reduction for window differences)
};

struct ProbeSet {
  int R = kDefaultProbes;
  uint64_t seed = 0;
  ProbeSharing sharing = ProbeSharing::kFreshPerSnapshot;
};

// Chebyshev moments mu_1..mu_K of a snapshot's shifted normalized
// Laplacian (mu_0 == 1 is implicit and never stored).
struct MomentVector {
  enum class Source { kExact, kEstimated };

  std::vector<double> values;
  Source source = Source::kExact;

  int order() const { return static_cast<int>(values.size()); }
  // 1-based moment access.
  double mu(int j) const { return values[j - 1]; }
};

// Hutchinson + three-term recurrence: mu^_j = (1/nR) sum_r z_r . v_j with
// v_0 = z, v_1 = L~ z, v_{j+1} = 2 L~ v_j - v_{j-1}. O(KRm), deterministic
// given (seed, sharing policy, snapshot t).
MomentVector estimate_moments(const GraphSnapshot& g, int K, const ProbeSet& probes);

// Oracle route via the dense spectrum: mu_j = (1/n) sum_i T_j(lambda_i).
MomentVector exact_moments(const GraphSnapshot& g, int K, int dense_limit = kDenseLimit);

// d_k = sum_{j<=k} |mu_j(a) - mu_j(b)|.
double moment_distance(const MomentVector& a, const MomentVector& b, int k);

// Gamma = sqrt(sum_{j<=k} (mu_j(a) - mu_j(b))^2 / j^2); always <= d_k.
double gamma_discrepancy(const MomentVector& a, const MomentVector& b, int k);

// Jackson kernel coefficients g_1..g_K (g_0 == 1 implicit).
std::vector<double> jackson_coefficients(int K);

MomentVector jackson_damp(const MomentVector& m);

struct DosHistogram {
  int n_bins = kUnbinned;  // kUnbinned means masses holds the raw moments
  std::vector<double> masses;
  bool jackson = false;
};

// Reconstructs the Chebyshev density at N_grid = max(1024, 8*n_bins) nodes
// and accumulates the node masses into uniform bins over [-1, 1],
// normalized to sum 1. n_bins == kUnbinned passes the moments through.
DosHistogram dos_histogram(const MomentVector& m, int n_bins);

struct WassersteinBoundReport {
  double w1 = 0.0;
  double gamma = 0.0;
  double moment_dist = 0.0;
  double bound = 0.0;  // 36/k + gamma
  bool bound_ok = false;
};

// Checks W1 <= 36/k + Gamma on the exact spectra/moments of two snapshots.
WassersteinBoundReport verify_wasserstein_bound(const GraphSnapshot& g1,
                                                const GraphSnapshot& g2, int k,
                                                int dense_limit = kDenseLimit);

}  // namespace sword
