#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mvdp/annealing.hpp"
#include "mvdp/exact.hpp"
#include "mvdp/genetic.hpp"
#include "mvdp/static_instance.hpp"

namespace mvdp {

enum class SolverKind : std::uint8_t { sa, ga, exact };

const char* to_string(SolverKind kind);
SolverKind solver_kind_from_string(const std::string& name);  // throws ConfigError

struct RollingHorizonConfig {
  int horizon = 20;
  int replan_interval = 10;

  /// Defaults per scenario family (synth-S 20/10, synth-L 60/30,
  /// synth-XL 40/20, request logs 30/15).
  static RollingHorizonConfig for_preset(const std::string& name);
  void validate() const;
};

struct Degradation {
  int t = 0;
  int vehicle = -1;
  int request = -1;  // world index, -1 for vehicle-level events
  std::string reason;
};

/// Re-plans every `replan_interval` slices on the frozen window and follows
/// the cached routes in between. Each vehicle walks its stop list as early
/// as the dynamics allow; pickups that no longer fit become DEFER.
class RollingHorizonPolicy {
 public:
  RollingHorizonPolicy(SolverKind solver, RollingHorizonConfig config, std::uint64_t seed,
                       SAParams sa = {}, GAParams ga = {}, ExactLimits limits = {});

  JointAction operator()(const WorldState& state);

  const std::vector<Degradation>& degradations() const { return degradations_; }
  int solve_count() const { return solves_; }
  const Plan& cached_plan() const { return plan_; }

 private:
  void replan(const WorldState& state);

  SolverKind solver_;
  RollingHorizonConfig config_;
  SAParams sa_;
  GAParams ga_;
  ExactLimits limits_;
  Rng rng_;

  bool has_plan_ = false;
  int planned_at_ = 0;
  Plan plan_;
  std::vector<int> world_request_;
  std::vector<std::size_t> cursor_;  // next stop per vehicle
  std::vector<Degradation> degradations_;
  int solves_ = 0;
};

}  // namespace mvdp
