#include "sword/kpm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sword/rng.hpp"

namespace sword {

namespace {

void check_order(int K) {
  if (K < 1) throw std::invalid_argument("moment order K must be >= 1");
}

void check_prefix(const MomentVector& a, const MomentVector& b, int k) {
  if (k < 1 || k > std::min(a.order(), b.order())) {
    throw std::out_of_range("comparison order k out of range");
  }
}

}  // namespace

MomentVector estimate_moments(const GraphSnapshot& g, int K, const ProbeSet& probes) {
  check_order(K);
  if (probes.R < 1) throw std::invalid_argument("probe count R must be >= 1");

  const ShiftedLaplacianOp op(g);
  const int n = g.n;
  const Rng stream = Rng::from_seed(probes.seed);
  const Rng snapshot_stream =
      probes.sharing == ProbeSharing::kFreshPerSnapshot
          ? stream.substream(static_cast<uint64_t>(g.t))
          : stream.substream(0);

  std::vector<double> acc(K, 0.0);
  std::vector<double> z(n), v_prev(n), v_cur(n), v_next(n);
  for (int r = 0; r < probes.R; ++r) {
    Rng probe_rng = snapshot_stream.substream(static_cast<uint64_t>(r));
    for (int i = 0; i < n; ++i) z[i] = probe_rng.rademacher();
    v_prev = z;
    op.apply(z, v_cur);
    for (int j = 1; j <= K; ++j) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += z[i] * v_cur[i];
      acc[j - 1] += dot;
      if (j == K) break;
      op.apply(v_cur, v_next);
      for (int i = 0; i < n; ++i) v_next[i] = 2.0 * v_next[i] - v_prev[i];
      std::swap(v_prev, v_cur);
      std::swap(v_cur, v_next);
    }
  }
  MomentVector m;
  m.source = MomentVector::Source::kEstimated;
  m.values.resize(K);
  const double norm = 1.0 / (double(n) * double(probes.R));
  for (int j = 0; j < K; ++j) m.values[j] = acc[j] * norm;
  return m;
}

MomentVector exact_moments(const GraphSnapshot& g, int K, int dense_limit) {
  check_order(K);
  const std::vector<double> spectrum = exact_spectrum(g, dense_limit);
  MomentVector m;
  m.source = MomentVector::Source::kExact;
  m.values.assign(K, 0.0);
  std::vector<double> t_prev(g.n, 1.0);
  std::vector<double> t_cur(spectrum);
  for (int j = 1; j <= K; ++j) {
    double sum = 0.0;
    for (double v : t_cur) sum += v;
    // The diagonal of T_1(L~) = L~ is identically zero, so mu_1 = 0 holds
    // exactly; snapping it avoids eigenvalue rounding residue.
    m.values[j - 1] = j == 1 ? 0.0 : sum / double(g.n);
    if (j == K) break;
    for (int i = 0; i < g.n; ++i) {
      const double next = 2.0 * spectrum[i] * t_cur[i] - t_prev[i];
      t_prev[i] = t_cur[i];
      t_cur[i] = next;
    }
  }
  return m;
}

double moment_distance(const MomentVector& a, const MomentVector& b, int k) {
  check_prefix(a, b, k);
  double d = 0.0;
  for (int j = 1; j <= k; ++j) d += std::abs(a.mu(j) - b.mu(j));
  return d;
}

double gamma_discrepancy(const MomentVector& a, const MomentVector& b, int k) {
  check_prefix(a, b, k);
  double s = 0.0;
  for (int j = 1; j <= k; ++j) {
    const double diff = a.mu(j) - b.mu(j);
    s += diff * diff / (double(j) * double(j));
  }
  return std::sqrt(s);
}

std::vector<double> jackson_coefficients(int K) {
  check_order(K);
  std::vector<double> g(K);
  const double denom = double(K + 1);
  const double cot = std::cos(std::numbers::pi / denom) / std::sin(std::numbers::pi / denom);
  for (int j = 1; j <= K; ++j) {
    const double angle = std::numbers::pi * double(j) / denom;
    // Clamp rounding noise at j = K, where the coefficient is ~0.
    g[j - 1] = std::max(
        0.0, ((K - j + 1) * std::cos(angle) + std::sin(angle) * cot) / denom);
  }
  return g;
}

MomentVector jackson_damp(const MomentVector& m) {
  const std::vector<double> g = jackson_coefficients(m.order());
  MomentVector out = m;
  for (int j = 0; j < m.order(); ++j) out.values[j] *= g[j];
  return out;
}

DosHistogram dos_histogram(const MomentVector& m, int n_bins) {
  if (n_bins == kUnbinned) {
    return DosHistogram{kUnbinned, m.values, false};
  }
  if (n_bins < 2) throw std::domain_error("dos_histogram requires n_bins >= 2");

  const int K = m.order();
  const int grid = std::max(1024, 8 * n_bins);
  std::vector<double> masses(n_bins, 0.0);
  for (int i = 0; i < grid; ++i) {
    const double theta = std::numbers::pi * (i + 0.5) / double(grid);
    double x = std::cos(theta);
    x = std::clamp(x, -1.0 + 1e-12, 1.0 - 1e-12);
    // Node mass under the Chebyshev measure: the 1/sqrt(1-x^2) weight
    // cancels against the quadrature weight, leaving (1 + 2 sum mu_j T_j)/N.
    double density = 1.0;
    for (int j = 1; j <= K; ++j) density += 2.0 * m.mu(j) * std::cos(j * theta);
    int bin = static_cast<int>((x + 1.0) / 2.0 * n_bins);
    bin = std::clamp(bin, 0, n_bins - 1);
    masses[bin] += density / double(grid);
  }
  double total = 0.0;
  for (double v : masses) total += v;
  if (total != 0.0) {
    for (double& v : masses) v /= total;
  }
  return DosHistogram{n_bins, std::move(masses), false};
}

WassersteinBoundReport verify_wasserstein_bound(const GraphSnapshot& g1,
                                                const GraphSnapshot& g2, int k,
                                                int dense_limit) {
  const std::vector<double> s1 = exact_spectrum(g1, dense_limit);
  const std::vector<double> s2 = exact_spectrum(g2, dense_limit);
  const MomentVector m1 = exact_moments(g1, k, dense_limit);
  const MomentVector m2 = exact_moments(g2, k, dense_limit);
  WassersteinBoundReport report;
  report.w1 = w1_sorted(s1, s2);
  report.gamma = gamma_discrepancy(m1, m2, k);
  report.moment_dist = moment_distance(m1, m2, k);
  report.bound = 36.0 / double(k) + report.gamma;
  report.bound_ok = report.w1 <= report.bound;
  return report;
}

}  // namespace sword
