#pragma once

#include <string>
#include <vector>

#include "sword/detector.hpp"
#include "sword/eval.hpp"
#include "sword/graph.hpp"
#include "sword/kpm.hpp"

namespace sword {

// JSONL snapshot stream: one {"t":..,"n":..,"edges":[[u,v],..]} object per
// line, strictly increasing t. Self-loops are dropped (count returned via
// *dropped_self_loops); malformed lines raise std::runtime_error with the
// line number.
std::vector<GraphSnapshot> load_snapshot_stream(const std::string& path,
                                                int* dropped_self_loops = nullptr);
void save_snapshot_stream(const std::string& path,
                          const std::vector<GraphSnapshot>& snapshots);

// Ground-truth sidecar: {"change_points":[...]}.
std::vector<int> load_change_points(const std::string& path);
void save_change_points(const std::string& path, const std::vector<int>& change_points);

// Moment cache CSV with header t,mu_1,...,mu_K.
std::vector<MomentVector> load_moment_cache(const std::string& path,
                                            std::vector<int>* timesteps = nullptr);
void save_moment_cache(const std::string& path, const std::vector<MomentVector>& moments,
                       const std::vector<int>& timesteps);

// Score series CSV t,score,detected; the score field is empty during
// burn-in.
void save_score_series(const std::string& path, const ScoreSeries& series);
ScoreSeries load_score_series(const std::string& path);

// Detection list as a JSON array of integers.
void save_detections(const std::string& path, const std::vector<int>& detections);
std::vector<int> load_detections(const std::string& path);

// Grid spec config: `key = value` lines, `#` comments; keys `method`,
// `scenario`, `delta`, `seeds` (comma list), and one `axis.<name>` comma
// list per swept parameter.
GridSpec load_grid_spec(const std::string& path);
void save_grid_spec(const std::string& path, const GridSpec& spec);

}  // namespace sword
