#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mvdp/errors.hpp"
#include "mvdp/scenario_gen.hpp"

namespace mvdp {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError("field '" + path + "': expected object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError("field '" + path + "." + key + "': missing");
  return *it;
}

int int_field(const json& j, const char* key, const std::string& path) {
  const json& v = field(j, key, path);
  if (!v.is_number_integer()) throw ParseError("field '" + path + "." + key + "': expected integer");
  return v.get<int>();
}

double real_field(const json& j, const char* key, const std::string& path) {
  const json& v = field(j, key, path);
  if (!v.is_number()) throw ParseError("field '" + path + "." + key + "': expected number");
  return v.get<double>();
}

int line_of(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace

std::string scenario_to_text(const Scenario& s) {
  json j;
  j["version"] = kScenarioFormatVersion;
  const int n = s.station_count();
  json distance = json::array();
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) distance.push_back(s.graph(i, k));
  j["stations"] = {{"count", n}, {"distance", distance}};
  json fleet = json::array();
  for (const FleetSlot& f : s.fleet) fleet.push_back({{"station", f.station}, {"capacity", f.capacity}});
  j["fleet"] = fleet;
  json requests = json::array();
  for (const Request& r : s.requests)
    requests.push_back(
        {{"from", r.from}, {"to", r.to}, {"val", r.value}, {"vol", r.volume}, {"time", r.appear}});
  j["requests"] = requests;
  j["horizon"] = s.horizon;
  j["cost_rate"] = s.cost_rate;
  j["profit_mode"] = s.profit_mode == ProfitMode::distance ? "distance" : "fixed";
  return j.dump(1) + "\n";
}

Scenario scenario_from_json(const json& j);

Scenario scenario_from_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("scenario line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  return scenario_from_json(j);
}

Scenario scenario_from_json(const json& j) {
  const int version = int_field(j, "version", "");
  if (version != kScenarioFormatVersion)
    throw VersionError("scenario format version " + std::to_string(version) + " unsupported (expected " +
                       std::to_string(kScenarioFormatVersion) + ")");
  Scenario s;
  const json& stations = field(j, "stations", "");
  const int n = int_field(stations, "count", "stations");
  const json& distance = field(stations, "distance", "stations");
  if (n < 1 || !distance.is_array() || distance.size() != static_cast<std::size_t>(n) * n)
    throw ParseError("field 'stations.distance': expected " + std::to_string(n) + "x" +
                     std::to_string(n) + " entries");
  s.graph.distance.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const json& v = distance[static_cast<std::size_t>(i) * n + k];
      if (!v.is_number_integer()) throw ParseError("field 'stations.distance': expected integers");
      s.graph.distance(i, k) = v.get<int>();
    }
  }
  const json& fleet = field(j, "fleet", "");
  if (!fleet.is_array()) throw ParseError("field 'fleet': expected array");
  for (std::size_t k = 0; k < fleet.size(); ++k) {
    const std::string path = "fleet[" + std::to_string(k) + "]";
    s.fleet.push_back({int_field(fleet[k], "station", path), int_field(fleet[k], "capacity", path)});
  }
  const json& requests = field(j, "requests", "");
  if (!requests.is_array()) throw ParseError("field 'requests': expected array");
  for (std::size_t m = 0; m < requests.size(); ++m) {
    const std::string path = "requests[" + std::to_string(m) + "]";
    const json& r = requests[m];
    s.requests.push_back(Request{int_field(r, "from", path), int_field(r, "to", path),
                                 real_field(r, "val", path), int_field(r, "vol", path),
                                 int_field(r, "time", path)});
  }
  s.horizon = int_field(j, "horizon", "");
  s.cost_rate = real_field(j, "cost_rate", "");
  if (auto it = j.find("profit_mode"); it != j.end()) {
    if (*it == "distance") s.profit_mode = ProfitMode::distance;
    else if (*it == "fixed") s.profit_mode = ProfitMode::fixed;
    else throw ParseError("field 'profit_mode': expected distance or fixed");
  }
  try {
    s.validate();
  } catch (const ValidationError& e) {
    throw ParseError(std::string("scenario invalid: ") + e.what());
  }
  return s;
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
  scenario.validate();
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << scenario_to_text(scenario);
  if (!out) throw Error("write to '" + path.string() + "' failed");
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("scenario file '" + path.string() + "' not readable");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return scenario_from_text(buffer.str());
}

}  // namespace mvdp
