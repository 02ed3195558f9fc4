#include "sword/io.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sword {

namespace {

using nlohmann::json;

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path + " for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

[[noreturn]] void line_error(const std::string& path, int line, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

}  // namespace

std::vector<GraphSnapshot> load_snapshot_stream(const std::string& path,
                                                int* dropped_self_loops) {
  std::ifstream in = open_in(path);
  std::vector<GraphSnapshot> snapshots;
  int dropped_total = 0;
  std::string line;
  int line_no = 0;
  int prev_t = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      line_error(path, line_no, std::string("malformed JSON: ") + e.what());
    }
    if (!obj.contains("t") || !obj.contains("n") || !obj.contains("edges")) {
      line_error(path, line_no, "snapshot needs t, n, and edges");
    }
    const int t = obj["t"].get<int>();
    const int n = obj["n"].get<int>();
    if (!snapshots.empty() && t <= prev_t) line_error(path, line_no, "non-increasing timestep");
    std::vector<std::pair<int, int>> edges;
    for (const json& e : obj["edges"]) {
      if (!e.is_array() || e.size() != 2) line_error(path, line_no, "edge must be a pair");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    int dropped = 0;
    try {
      snapshots.push_back(GraphSnapshot::from_edges(t, n, std::move(edges), &dropped));
    } catch (const std::invalid_argument& e) {
      line_error(path, line_no, e.what());
    }
    dropped_total += dropped;
    prev_t = t;
  }
  if (dropped_self_loops != nullptr) *dropped_self_loops = dropped_total;
  return snapshots;
}

void save_snapshot_stream(const std::string& path,
                          const std::vector<GraphSnapshot>& snapshots) {
  std::ofstream out = open_out(path);
  for (const GraphSnapshot& g : snapshots) {
    json edges = json::array();
    for (const auto& [u, v] : g.edges) edges.push_back({u, v});
    out << json{{"t", g.t}, {"n", g.n}, {"edges", std::move(edges)}}.dump() << '\n';
  }
}

std::vector<int> load_change_points(const std::string& path) {
  std::ifstream in = open_in(path);
  json obj;
  in >> obj;
  if (!obj.contains("change_points")) {
    throw std::runtime_error(path + ": missing change_points");
  }
  return obj["change_points"].get<std::vector<int>>();
}

void save_change_points(const std::string& path, const std::vector<int>& change_points) {
  open_out(path) << json{{"change_points", change_points}}.dump() << '\n';
}

std::vector<MomentVector> load_moment_cache(const std::string& path,
                                            std::vector<int>* timesteps) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty moment cache");
  const std::vector<std::string> header = split_list(line);
  if (header.size() < 2 || header[0] != "t") {
    throw std::runtime_error(path + ": expected header t,mu_1,...,mu_K");
  }
  const size_t order = header.size() - 1;
  std::vector<MomentVector> moments;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split_list(line);
    if (fields.size() != order + 1) line_error(path, line_no, "wrong column count");
    MomentVector m;
    m.source = MomentVector::Source::kEstimated;
    m.values.reserve(order);
    try {
      if (timesteps != nullptr) timesteps->push_back(std::stoi(fields[0]));
      for (size_t j = 1; j < fields.size(); ++j) m.values.push_back(std::stod(fields[j]));
    } catch (const std::exception&) {
      line_error(path, line_no, "non-numeric field");
    }
    moments.push_back(std::move(m));
  }
  return moments;
}

void save_moment_cache(const std::string& path, const std::vector<MomentVector>& moments,
                       const std::vector<int>& timesteps) {
  if (moments.size() != timesteps.size()) {
    throw std::invalid_argument("moment cache needs one timestep per row");
  }
  std::ofstream out = open_out(path);
  const int order = moments.empty() ? 0 : moments.front().order();
  out << "t";
  for (int j = 1; j <= order; ++j) out << ",mu_" << j;
  out << '\n';
  out.precision(17);
  for (size_t i = 0; i < moments.size(); ++i) {
    if (moments[i].order() != order) {
      throw std::invalid_argument("moment cache rows must share one order K");
    }
    out << timesteps[i];
    for (double v : moments[i].values) out << ',' << v;
    out << '\n';
  }
}

void save_score_series(const std::string& path, const ScoreSeries& series) {
  std::ofstream out = open_out(path);
  out << "t,score,detected\n";
  out.precision(17);
  for (const ScoreRecord& rec : series.records) {
    out << rec.t << ',';
    if (rec.scored) out << rec.score;
    out << ',' << (rec.detected ? 1 : 0) << '\n';
  }
}

ScoreSeries load_score_series(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "t,score,detected") {
    throw std::runtime_error(path + ": expected header t,score,detected");
  }
  ScoreSeries series;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const size_t c1 = line.find(',');
    const size_t c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      line_error(path, line_no, "expected three columns");
    }
    ScoreRecord rec;
    try {
      rec.t = std::stoi(line.substr(0, c1));
      const std::string score = trim(line.substr(c1 + 1, c2 - c1 - 1));
      if (!score.empty()) {
        rec.scored = true;
        rec.score = std::stod(score);
      }
      rec.detected = std::stoi(line.substr(c2 + 1)) != 0;
    } catch (const std::exception&) {
      line_error(path, line_no, "non-numeric field");
    }
    if (rec.detected) series.detections.push_back(rec.t);
    series.records.push_back(rec);
  }
  return series;
}

void save_detections(const std::string& path, const std::vector<int>& detections) {
  open_out(path) << json(detections).dump() << '\n';
}

std::vector<int> load_detections(const std::string& path) {
  std::ifstream in = open_in(path);
  json arr;
  in >> arr;
  return arr.get<std::vector<int>>();
}

GridSpec load_grid_spec(const std::string& path) {
  std::ifstream in = open_in(path);
  GridSpec spec;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) line_error(path, line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "method") {
        spec.method = value;
      } else if (key == "scenario") {
        spec.scenario = value;
      } else if (key == "delta") {
        spec.delta = std::stoi(value);
      } else if (key == "seeds") {
        for (const std::string& s : split_list(value)) spec.seeds.push_back(std::stoull(s));
      } else if (key.rfind("axis.", 0) == 0) {
        std::vector<double>& axis = spec.axes[key.substr(5)];
        for (const std::string& s : split_list(value)) axis.push_back(std::stod(s));
      } else {
        line_error(path, line_no, "unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      line_error(path, line_no, "bad value for '" + key + "'");
    }
  }
  return spec;
}

void save_grid_spec(const std::string& path, const GridSpec& spec) {
  std::ofstream out = open_out(path);
  out << "method = " << spec.method << '\n';
  out << "scenario = " << spec.scenario << '\n';
  out << "delta = " << spec.delta << '\n';
  out << "seeds = ";
  for (size_t i = 0; i < spec.seeds.size(); ++i) out << (i ? "," : "") << spec.seeds[i];
  out << '\n';
  out.precision(17);
  for (const auto& [name, values] : spec.axes) {
    out << "axis." << name << " = ";
    for (size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << values[i];
    out << '\n';
  }
}

}  // namespace sword
