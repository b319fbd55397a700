#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mvdp/domain.hpp"

namespace mvdp {

struct SyntheticSpec {
  int stations = 20;
  int requests = 110;
  int vehicles = 5;
  int horizon = 58;
  int capacity = 3;
  int max_distance = 10;  // pairwise distances ~ Uniform{0..max_distance}
  double cost_rate = 0.0;

  void validate() const;
};

/// Named synthetic presets: synth-S, synth-S-cost, synth-L, synth-L-cost,
/// synth-XL, plus the small `tiny` used in tests.
std::optional<SyntheticSpec> synthetic_preset(const std::string& name);
std::vector<std::string> synthetic_preset_names();

Scenario generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

// Scenario files (JSON, see README).
inline constexpr int kScenarioFormatVersion = 1;

std::string scenario_to_text(const Scenario& scenario);
Scenario scenario_from_text(const std::string& text);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);
Scenario load_scenario(const std::filesystem::path& path);

// Request-log import.
struct VehicleSpec {
  int count = 1;
  int capacity = 6;
  std::uint64_t placement_seed = 0;  // initial stations ~ Uniform over cells
};

struct DaySplit {
  int train = 0;
  int validation = 0;  // remaining days go to test
};

struct ImportedLog {
  std::map<int, Scenario> days;
  std::vector<int> train_days;
  std::vector<int> validation_days;
  std::vector<int> test_days;
};

/// Reads `day,slot,origin_cell,dest_cell` rows and an I x I distance file.
/// One scenario per day, appearance time = slot + 1, value = `profit`.
ImportedLog import_request_log(const std::filesystem::path& log_path,
                               const std::filesystem::path& distance_path, int cells, int horizon,
                               const VehicleSpec& vehicles, double profit, DaySplit split = {});

}  // namespace mvdp
