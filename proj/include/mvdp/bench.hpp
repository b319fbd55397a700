#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "mvdp/simulator.hpp"

namespace mvdp {

enum class TableFormat : std::uint8_t { csv, markdown };

using ConfigMap = std::map<std::string, std::string>;

/// key=value lines; blank lines and lines starting with '#' are skipped.
/// Throws ConfigError naming the offending line.
ConfigMap parse_config_text(const std::string& text);
ConfigMap load_config_file(const std::filesystem::path& path);

/// "a..b" (inclusive) or a comma-separated list.
std::vector<std::uint64_t> parse_seeds(const std::string& text);

std::vector<std::string> policy_names();

/// Builds a fresh policy for one episode. Known names: nearest, prior,
/// sa-rh, ga-rh, exact-rh and null (every request deferred, vehicles stay).
/// `params` carries solver keys such as sa.cooling or rh.horizon; unknown
/// keys and unknown policies throw ConfigError.
Policy make_policy(const std::string& name, const Scenario& scenario, const std::string& scenario_name,
                   std::uint64_t seed, const ConfigMap& params = {});

/// Rejects keys no policy understands.
void check_policy_params(const ConfigMap& params);

struct BenchConfig {
  std::string scenario_file;  // either a scenario file ...
  std::string preset;         // ... or a synthetic preset, regenerated per seed
  std::string policy = "nearest";
  std::vector<std::uint64_t> seeds;
  double time_limit_seconds = 0.0;  // per episode, <= 0 = none
  int jobs = 1;
  ConfigMap params;

  /// Throws ConfigError: no seeds, unknown policy, no or both scenario sources.
  void validate() const;
};

struct ResultRow {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string policy;
  double obj = 0.0;
  double comp = 0.0;
  double seconds = 0.0;
  std::string status = "ok";  // ok | timeout

  bool operator==(const ResultRow&) const = default;
};

struct ResultTable {
  std::vector<ResultRow> rows;  // seed order
};

/// Runs one episode per seed on a pool of `jobs` workers.
ResultTable run_benchmark(const BenchConfig& config);

/// Header, one line per row, then mean and std rows.
std::string format_table(const ResultTable& table, TableFormat format);
void emit_table(const ResultTable& table, TableFormat format, const std::filesystem::path& path);

/// Data rows of a CSV produced by format_table (aggregate rows skipped).
ResultTable parse_csv_table(const std::string& text);

}  // namespace mvdp
