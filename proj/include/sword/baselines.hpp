#pragma once

#include <vector>

#include "sword/detector.hpp"
#include "sword/graph.hpp"

namespace sword {

// Page's two-sided tabular CUSUM on the 8-dim feature stream. Per-dimension
// standardization uses statistics frozen from the first `burn_in` steps;
// zero-variance dimensions are masked. Score = max_d max(S+_d, S-_d),
// alarm when score >= theta subject to cooldown.
ScoreSeries cusum_detect(const std::vector<FeatureVector>& features, double kappa,
                         double theta, int burn_in, int cooldown);

// Roberts EWMA chart: E_t = lambda*x_t + (1-lambda)*E_{t-1} per dimension,
// E seeded at the burn-in mean. Score = max_d |E_d - mean_d| / (std_d *
// sqrt(lambda/(2-lambda))); alarm when score > L subject to cooldown.
ScoreSeries ewma_detect(const std::vector<FeatureVector>& features, double lambda,
                        double limit_width, int burn_in, int cooldown);

// Laplacian anomaly detection: per-snapshot signature = top-r singular values
// of the unnormalized Laplacian, L2-normalized; Z = 1 - cos(signature,
// normalized trailing context sum), taken over short and long contexts;
// score = max of the two. Small-n only (dense eigensolve per snapshot).
ScoreSeries lad_detect(const std::vector<GraphSnapshot>& snapshots, int rank,
                       int short_window, int long_window, double theta, int cooldown);

// Per-snapshot top-r Laplacian singular values, L2-normalized (exposed for
// tests; rank is clamped to n with a warning).
std::vector<double> lad_signature(const GraphSnapshot& g, int rank);

}  // namespace sword
