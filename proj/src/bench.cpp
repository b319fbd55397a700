#include "mvdp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "mvdp/errors.hpp"
#include "mvdp/nearest.hpp"
#include "mvdp/prior.hpp"
#include "mvdp/rolling_horizon.hpp"
#include "mvdp/scenario_gen.hpp"

namespace mvdp {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_real(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw ConfigError(key + ": cannot parse '" + text + "'");
  return value;
}

const std::vector<std::string> kParamKeys = {
    "sa.initial_temp", "sa.final_temp", "sa.cooling", "sa.max_iters",
    "ga.population", "ga.generations", "ga.fitness_scale", "ga.mutation_rate",
    "rh.horizon", "rh.replan", "prior.beta", "prior.pickup_coefficient",
    "exact.max_stations", "exact.max_vehicles", "exact.max_requests", "exact.max_window"};

template <class T>
void read_param(const ConfigMap& params, const std::string& key, T& target) {
  if (auto it = params.find(key); it != params.end()) target = parse_number<T>(key, it->second);
}

}  // namespace

ConfigMap parse_config_text(const std::string& text) {
  ConfigMap out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(number) + ": expected key=value");
    const std::string key = trim(body.substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(number) + ": empty key");
    out[key] = trim(body.substr(eq + 1));
  }
  return out;
}

ConfigMap load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  const std::string body = trim(text);
  if (const auto dots = body.find(".."); dots != std::string::npos) {
    const auto a = parse_number<std::uint64_t>("seeds", trim(body.substr(0, dots)));
    const auto b = parse_number<std::uint64_t>("seeds", trim(body.substr(dots + 2)));
    if (b < a) throw ConfigError("seeds: empty range " + body);
    for (std::uint64_t s = a; s <= b; ++s) seeds.push_back(s);
    return seeds;
  }
  std::istringstream in(body);
  std::string item;
  while (std::getline(in, item, ',')) seeds.push_back(parse_number<std::uint64_t>("seeds", trim(item)));
  if (seeds.empty()) throw ConfigError("seeds: none given");
  return seeds;
}

std::vector<std::string> policy_names() { return {"nearest", "prior", "sa-rh", "ga-rh", "exact-rh", "null"}; }

void check_policy_params(const ConfigMap& params) {
  for (const auto& [key, value] : params)
    if (std::find(kParamKeys.begin(), kParamKeys.end(), key) == kParamKeys.end())
      throw ConfigError("unknown config key '" + key + "'");
}

Policy make_policy(const std::string& name, const Scenario& scenario, const std::string& scenario_name,
                   std::uint64_t seed, const ConfigMap& params) {
  check_policy_params(params);
  if (name == "nearest") return nearest_act;
  if (name == "null") return idle_action;
  if (name == "prior") {
    double beta = 0.03, coeff = 0.1;
    read_param(params, "prior.beta", beta);
    read_param(params, "prior.pickup_coefficient", coeff);
    auto policy = std::make_shared<PriorPolicy>(PriorConfig::for_scenario(scenario, beta, coeff), seed);
    return [policy](const WorldState& s) { return (*policy)(s); };
  }
  if (name == "sa-rh" || name == "ga-rh" || name == "exact-rh") {
    const SolverKind kind = solver_kind_from_string(name.substr(0, name.size() - 3));
    RollingHorizonConfig rh = RollingHorizonConfig::for_preset(scenario_name);
    read_param(params, "rh.horizon", rh.horizon);
    read_param(params, "rh.replan", rh.replan_interval);
    SAParams sa;
    read_param(params, "sa.initial_temp", sa.initial_temp);
    read_param(params, "sa.final_temp", sa.final_temp);
    read_param(params, "sa.cooling", sa.cooling);
    read_param(params, "sa.max_iters", sa.max_iters);
    GAParams ga;
    read_param(params, "ga.population", ga.population);
    read_param(params, "ga.generations", ga.generations);
    read_param(params, "ga.fitness_scale", ga.fitness_scale);
    read_param(params, "ga.mutation_rate", ga.mutation_rate);
    ExactLimits limits;
    read_param(params, "exact.max_stations", limits.max_stations);
    read_param(params, "exact.max_vehicles", limits.max_vehicles);
    read_param(params, "exact.max_requests", limits.max_requests);
    read_param(params, "exact.max_window", limits.max_window);
    auto policy = std::make_shared<RollingHorizonPolicy>(kind, rh, seed, sa, ga, limits);
    return [policy](const WorldState& s) { return (*policy)(s); };
  }
  throw ConfigError("unknown policy '" + name + "'");
}

void BenchConfig::validate() const {
  if (seeds.empty()) throw ConfigError("no seeds given");
  if (scenario_file.empty() == preset.empty()) throw ConfigError("give exactly one of a scenario file or a preset");
  if (!preset.empty() && !synthetic_preset(preset)) throw ConfigError("unknown preset '" + preset + "'");
  const auto names = policy_names();
  if (std::find(names.begin(), names.end(), policy) == names.end())
    throw ConfigError("unknown policy '" + policy + "'");
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
  check_policy_params(params);
}

ResultTable run_benchmark(const BenchConfig& config) {
  config.validate();
  std::shared_ptr<const Scenario> file_scenario;
  std::string scenario_name = config.preset;
  if (!config.scenario_file.empty()) {
    file_scenario = std::make_shared<const Scenario>(load_scenario(config.scenario_file));
    scenario_name = std::filesystem::path(config.scenario_file).stem().string();
  }
  const SyntheticSpec spec = config.preset.empty() ? SyntheticSpec{} : *synthetic_preset(config.preset);

  ResultTable table;
  table.rows.resize(config.seeds.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < config.seeds.size(); i = next++) {
      try {
        const std::uint64_t seed = config.seeds[i];
        auto scenario = file_scenario ? file_scenario
                                      : std::make_shared<const Scenario>(generate_synthetic(spec, seed));
        Policy policy = make_policy(config.policy, *scenario, scenario_name, seed, config.params);
        EpisodeOptions options{config.time_limit_seconds};
        const EpisodeSummary summary = run_episode(scenario, policy, seed, options);
        table.rows[i] = ResultRow{scenario_name, seed, config.policy, summary.objective, summary.completion,
                                  summary.wall_seconds, summary.timed_out ? "timeout" : "ok"};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = config.seeds.size();
      }
    }
  };
  const int workers = std::min<int>(config.jobs, static_cast<int>(config.seeds.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return table;
}

std::string format_table(const ResultTable& table, TableFormat format) {
  const std::vector<std::string> header = {"scenario", "seed", "policy", "obj", "comp", "seconds", "status"};
  std::vector<std::vector<std::string>> lines;
  for (const ResultRow& r : table.rows)
    lines.push_back({r.scenario, std::to_string(r.seed), r.policy, format_real(r.obj), format_real(r.comp),
                     format_real(r.seconds), r.status});

  if (!table.rows.empty()) {
    const double n = static_cast<double>(table.rows.size());
    double mean[3] = {0, 0, 0}, var[3] = {0, 0, 0};
    for (const ResultRow& r : table.rows) {
      mean[0] += r.obj / n;
      mean[1] += r.comp / n;
      mean[2] += r.seconds / n;
    }
    for (const ResultRow& r : table.rows) {
      const double x[3] = {r.obj, r.comp, r.seconds};
      for (int j = 0; j < 3; ++j) var[j] += (x[j] - mean[j]) * (x[j] - mean[j]) / n;
    }
    const ResultRow& first = table.rows.front();
    lines.push_back({first.scenario, "mean", first.policy, format_real(mean[0]), format_real(mean[1]),
                     format_real(mean[2]), ""});
    lines.push_back({first.scenario, "std", first.policy, format_real(std::sqrt(var[0])),
                     format_real(std::sqrt(var[1])), format_real(std::sqrt(var[2])), ""});
  }

  std::ostringstream out;
  if (format == TableFormat::csv) {
    auto emit = [&out](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
      out << '\n';
    };
    emit(header);
    for (const auto& l : lines) emit(l);
  } else {
    auto emit = [&out](const std::vector<std::string>& cells) {
      out << '|';
      for (const auto& c : cells) out << ' ' << c << " |";
      out << '\n';
    };
    emit(header);
    out << '|';
    for (std::size_t i = 0; i < header.size(); ++i) out << " --- |";
    out << '\n';
    for (const auto& l : lines) emit(l);
  }
  return out.str();
}

void emit_table(const ResultTable& table, TableFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << format_table(table, format);
  if (!out.flush()) throw Error("write failed: " + path.string());
}

ResultTable parse_csv_table(const std::string& text) {
  ResultTable table;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "scenario,seed,policy,obj,comp,seconds,status")
    throw ParseError("result table: unexpected header");
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (cells.size() != 7) throw ParseError("result table line " + std::to_string(number) + ": expected 7 cells");
    if (cells[1] == "mean" || cells[1] == "std") continue;
    try {
      table.rows.push_back(ResultRow{cells[0], parse_number<std::uint64_t>("seed", cells[1]), cells[2],
                                     parse_number<double>("obj", cells[3]), parse_number<double>("comp", cells[4]),
                                     parse_number<double>("seconds", cells[5]), cells[6]});
    } catch (const ConfigError& e) {
      throw ParseError("result table line " + std::to_string(number) + ": " + e.what());
    }
  }
  return table;
}

}  // namespace mvdp
