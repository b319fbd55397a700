#include "mvdp/scenario_gen.hpp"

#include <cctype>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "mvdp/errors.hpp"

namespace mvdp {

void SyntheticSpec::validate() const {
  if (stations < 2) throw ValidationError("synthetic spec: stations must be >= 2");
  if (requests < 0) throw ValidationError("synthetic spec: requests must be >= 0");
  if (vehicles < 1) throw ValidationError("synthetic spec: vehicles must be >= 1");
  if (horizon < 1) throw ValidationError("synthetic spec: horizon must be >= 1");
  if (capacity < 1) throw ValidationError("synthetic spec: capacity must be >= 1");
  if (max_distance < 0) throw ValidationError("synthetic spec: max_distance must be >= 0");
  if (!(cost_rate >= 0.0)) throw ValidationError("synthetic spec: cost_rate must be >= 0");
}

std::optional<SyntheticSpec> synthetic_preset(const std::string& name) {
  if (name == "synth-S") return SyntheticSpec{20, 110, 5, 58, 3, 10, 0.0};
  if (name == "synth-S-cost") return SyntheticSpec{20, 110, 5, 58, 3, 10, 0.3};
  if (name == "synth-L") return SyntheticSpec{50, 550, 15, 128, 3, 30, 0.0};
  if (name == "synth-L-cost") return SyntheticSpec{50, 550, 15, 128, 3, 30, 0.3};
  if (name == "synth-XL") return SyntheticSpec{300, 550, 50, 128, 3, 20, 0.0};
  if (name == "tiny") return SyntheticSpec{3, 2, 2, 6, 2, 3, 0.3};
  return std::nullopt;
}

std::vector<std::string> synthetic_preset_names() {
  return {"synth-S", "synth-S-cost", "synth-L", "synth-L-cost", "synth-XL", "tiny"};
}

Scenario generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
  spec.validate();
  std::mt19937_64 rng(seed);
  const int n = spec.stations;

  // A zero draw between distinct stations means "no direct road"; travel
  // then goes through other stations. Pairs left unconnected get a direct
  // road one longer than the longest possible draw.
  const int missing = n * (spec.max_distance + 1);
  DistanceMatrixi raw = DistanceMatrixi::Zero(n, n);
  std::uniform_int_distribution<int> edge(0, spec.max_distance);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int draw = edge(rng);
      raw(i, j) = draw == 0 ? missing : draw;
      raw(j, i) = raw(i, j);
    }
  }
  raw = shortest_path_closure(raw);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (raw(i, j) >= missing) raw(i, j) = spec.max_distance + 1;

  Scenario s;
  s.graph.distance = shortest_path_closure(raw);
  s.horizon = spec.horizon;
  s.cost_rate = spec.cost_rate;
  s.profit_mode = ProfitMode::distance;

  std::uniform_int_distribution<int> station(0, n - 1);
  std::uniform_int_distribution<int> other_station(0, n - 2);
  std::uniform_int_distribution<int> appear(1, spec.horizon);
  s.requests.reserve(spec.requests);
  for (int m = 0; m < spec.requests; ++m) {
    Request r;
    r.from = station(rng);
    r.to = other_station(rng);
    if (r.to >= r.from) ++r.to;
    r.appear = appear(rng);
    r.volume = 1;
    r.value = s.graph(r.from, r.to);
    s.requests.push_back(r);
  }
  for (int k = 0; k < spec.vehicles; ++k) s.fleet.push_back({station(rng), spec.capacity});
  return s;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  return out;
}

int parse_int(const std::string& text, const std::string& where) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw ParseError(where + ": expected integer, got '" + text + "'");
  }
}

DistanceMatrixi read_distance_file(const std::filesystem::path& path, int cells) {
  std::ifstream in(path);
  if (!in) throw ParseError("distance file '" + path.string() + "' not found");
  DistanceMatrixi d(cells, cells);
  std::string token;
  for (int i = 0; i < cells; ++i) {
    for (int j = 0; j < cells; ++j) {
      char c;
      token.clear();
      while (in.get(c)) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
          if (!token.empty()) break;
          continue;
        }
        token.push_back(c);
      }
      if (token.empty())
        throw ParseError("distance file: expected " + std::to_string(cells * cells) + " entries");
      d(i, j) = parse_int(token, "distance file entry (" + std::to_string(i) + "," +
                                     std::to_string(j) + ")");
    }
  }
  return d;
}

}  // namespace

ImportedLog import_request_log(const std::filesystem::path& log_path,
                               const std::filesystem::path& distance_path, int cells, int horizon,
                               const VehicleSpec& vehicles, double profit, DaySplit split) {
  if (cells < 1 || horizon < 1) throw ValidationError("import: cells and horizon must be positive");
  if (vehicles.count < 1 || vehicles.capacity < 1)
    throw ValidationError("import: vehicle count and capacity must be positive");
  std::ifstream in(log_path);
  if (!in) throw ParseError("request log '" + log_path.string() + "' not found");
  std::string line;
  if (!std::getline(in, line)) throw ParseError("request log is empty");
  const auto header = split_csv(line);
  if (header != std::vector<std::string>{"day", "slot", "origin_cell", "dest_cell"})
    throw ParseError("request log line 1: expected header day,slot,origin_cell,dest_cell");

  DistanceMatrixi distance;
  try {
    distance = shortest_path_closure(read_distance_file(distance_path, cells));
  } catch (const InvalidMatrix& e) {
    throw ParseError(std::string("distance file: ") + e.what());
  }

  std::map<int, std::vector<Request>> by_day;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cols = split_csv(line);
    const std::string where = "request log line " + std::to_string(line_no);
    if (cols.size() != 4) throw ParseError(where + ": expected 4 columns");
    const int day = parse_int(cols[0], where + " day");
    const int slot = parse_int(cols[1], where + " slot");
    const int origin = parse_int(cols[2], where + " origin_cell");
    const int dest = parse_int(cols[3], where + " dest_cell");
    if (slot < 0 || slot >= horizon) throw ParseError(where + ": slot out of range");
    if (origin < 0 || origin >= cells) throw ParseError(where + ": origin_cell out of range");
    if (dest < 0 || dest >= cells) throw ParseError(where + ": dest_cell out of range");
    by_day[day].push_back(Request{origin, dest, profit, 1, slot + 1});
  }
  if (by_day.empty()) throw ParseError("request log has no rows");

  ImportedLog out;
  std::mt19937_64 rng(vehicles.placement_seed);
  std::uniform_int_distribution<int> station(0, cells - 1);
  int index = 0;
  for (auto& [day, requests] : by_day) {
    Scenario s;
    s.graph.distance = distance;
    s.horizon = horizon;
    s.cost_rate = 0.0;
    s.profit_mode = ProfitMode::fixed;
    s.requests = std::move(requests);
    for (int k = 0; k < vehicles.count; ++k) s.fleet.push_back({station(rng), vehicles.capacity});
    s.validate();
    out.days.emplace(day, std::move(s));
    if (index < split.train) out.train_days.push_back(day);
    else if (index < split.train + split.validation) out.validation_days.push_back(day);
    else out.test_days.push_back(day);
    ++index;
  }
  return out;
}

}  // namespace mvdp
