#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "mvdp/bench.hpp"
#include "mvdp/errors.hpp"
#include "mvdp/scenario_gen.hpp"
#include "mvdp/server.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

volatile std::sig_atomic_t g_stop = 0;

void on_signal(int) { g_stop = 1; }

mvdp::ScenarioRegistry make_registry(const std::vector<std::string>& entries) {
  mvdp::ScenarioRegistry registry;
  for (const std::string& entry : entries) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) throw mvdp::ConfigError("--scenario expects NAME=FILE, got '" + entry + "'");
    registry.add(entry.substr(0, eq), mvdp::load_scenario(entry.substr(eq + 1)));
  }
  return registry;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-vehicle dynamic pickup and delivery workbench"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate a synthetic scenario file");
  std::string gen_preset = "synth-S", gen_out;
  std::uint64_t gen_seed = 0;
  gen->add_option("--preset", gen_preset, "preset name")->capture_default_str();
  gen->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
  gen->add_option("--out", gen_out, "output file")->required();

  auto* run = app.add_subcommand("run", "run a policy over a batch of seeds");
  std::string run_scenario, run_preset, run_policy = "nearest", run_seeds = "0..9", run_out, run_config;
  std::string run_format = "csv";
  int run_jobs = 1;
  double run_time_limit = 0.0;
  auto* scen_opt = run->add_option("--scenario", run_scenario, "scenario file");
  auto* preset_opt = run->add_option("--preset", run_preset, "synthetic preset, regenerated per seed");
  scen_opt->excludes(preset_opt);
  run->add_option("--policy", run_policy, "nearest|prior|sa-rh|ga-rh|exact-rh|null")->capture_default_str();
  run->add_option("--seeds", run_seeds, "a..b or a,b,c")->capture_default_str();
  run->add_option("--out", run_out, "result table (stdout if omitted)");
  run->add_option("--jobs", run_jobs, "parallel episodes")->capture_default_str();
  run->add_option("--config", run_config, "key=value solver parameters");
  run->add_option("--format", run_format, "csv|markdown")->capture_default_str();
  run->add_option("--time-limit", run_time_limit, "seconds per episode, 0 = none")->capture_default_str();

  auto* serve = app.add_subcommand("serve", "serve the environment protocol");
  std::string transport = "stdio";
  std::vector<std::string> serve_scenarios;
  serve->add_option("--transport", transport, "stdio or tcp:PORT")->capture_default_str();
  serve->add_option("--scenario", serve_scenarios, "register NAME=FILE");

  auto* imp = app.add_subcommand("import", "convert a request log into per-day scenario files");
  std::string imp_log, imp_dist, imp_dir;
  int imp_cells = 0, imp_horizon = 0, imp_train = 0, imp_val = 0;
  double imp_profit = 1.0;
  mvdp::VehicleSpec imp_vehicles;
  imp->add_option("--log", imp_log, "CSV with day,slot,origin_cell,dest_cell")->required();
  imp->add_option("--distances", imp_dist, "cell distance matrix")->required();
  imp->add_option("--cells", imp_cells, "number of cells")->required();
  imp->add_option("--horizon", imp_horizon, "slices per day")->required();
  imp->add_option("--vehicles", imp_vehicles.count, "fleet size")->capture_default_str();
  imp->add_option("--capacity", imp_vehicles.capacity, "vehicle capacity")->capture_default_str();
  imp->add_option("--placement-seed", imp_vehicles.placement_seed, "seed for initial stations")->capture_default_str();
  imp->add_option("--profit", imp_profit, "value per request")->capture_default_str();
  imp->add_option("--train", imp_train, "number of training days")->capture_default_str();
  imp->add_option("--validation", imp_val, "number of validation days")->capture_default_str();
  imp->add_option("--out-dir", imp_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*gen) {
      auto spec = mvdp::synthetic_preset(gen_preset);
      if (!spec) throw mvdp::ConfigError("unknown preset '" + gen_preset + "'");
      mvdp::save_scenario(mvdp::generate_synthetic(*spec, gen_seed), gen_out);
    } else if (*run) {
      mvdp::BenchConfig config;
      config.scenario_file = run_scenario;
      config.preset = run_preset;
      config.policy = run_policy;
      config.seeds = mvdp::parse_seeds(run_seeds);
      config.jobs = run_jobs;
      config.time_limit_seconds = run_time_limit;
      if (!run_config.empty()) config.params = mvdp::load_config_file(run_config);
      mvdp::TableFormat format;
      if (run_format == "csv") format = mvdp::TableFormat::csv;
      else if (run_format == "markdown") format = mvdp::TableFormat::markdown;
      else throw mvdp::ConfigError("unknown format '" + run_format + "'");
      config.validate();
      const mvdp::ResultTable table = mvdp::run_benchmark(config);
      if (run_out.empty()) std::cout << mvdp::format_table(table, format);
      else mvdp::emit_table(table, format, run_out);
    } else if (*serve) {
      const mvdp::ScenarioRegistry registry = make_registry(serve_scenarios);
      if (transport == "stdio") {
        mvdp::serve_stream(std::cin, std::cout, registry);
      } else if (transport.rfind("tcp:", 0) == 0) {
        int port = 0;
        try {
          port = std::stoi(transport.substr(4));
        } catch (const std::exception&) {
          throw mvdp::ConfigError("bad port in '" + transport + "'");
        }
        mvdp::TcpServer server(registry);
        const int bound = server.start(port);
        std::signal(SIGINT, on_signal);
        std::signal(SIGTERM, on_signal);
        std::cerr << "listening on 127.0.0.1:" << bound << std::endl;
        while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
        server.stop();
      } else {
        throw mvdp::ConfigError("unknown transport '" + transport + "' (expected stdio or tcp:PORT)");
      }
    } else if (*imp) {
      const auto log = mvdp::import_request_log(imp_log, imp_dist, imp_cells, imp_horizon, imp_vehicles, imp_profit,
                                                mvdp::DaySplit{imp_train, imp_val});
      std::filesystem::create_directories(imp_dir);
      for (const auto& [day, scenario] : log.days)
        mvdp::save_scenario(scenario, std::filesystem::path(imp_dir) / ("day" + std::to_string(day) + ".json"));
      std::ofstream split(std::filesystem::path(imp_dir) / "split.txt");
      auto list = [&split](const char* name, const std::vector<int>& days) {
        split << name << '=';
        for (std::size_t i = 0; i < days.size(); ++i) split << (i ? "," : "") << days[i];
        split << '\n';
      };
      list("train", log.train_days);
      list("validation", log.validation_days);
      list("test", log.test_days);
    }
  } catch (const mvdp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return 0;
}
