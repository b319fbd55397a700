#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "mvdp/domain.hpp"

namespace mvdp {

enum class EventKind : std::uint8_t { pickup, dispatch, arrival, delivery };

const char* to_string(EventKind kind);

struct Event {
  int t = 0;
  EventKind kind = EventKind::pickup;
  int vehicle = -1;
  int request = -1;
  int station = -1;

  bool operator==(const Event&) const = default;
};

struct StepResult {
  WorldState next_state;
  double reward = 0.0;
  bool done = false;
  std::vector<Event> events;
  SliceRecord record;  // per-vehicle deliveries and legs of this slice
};

using BoolMatrix = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Row r of `requests` belongs to request `request_ids[r]`; its last column
/// is DEFER. `vehicles` has one row per vehicle and one column per station.
struct ActionMasks {
  std::vector<int> request_ids;
  BoolMatrix requests;
  BoolMatrix vehicles;
};

WorldState reset(std::shared_ptr<const Scenario> scenario, std::uint64_t seed = 0);

/// Advances one slice: assign, dispatch, move, unload. Throws RejectedAction
/// without touching `state` when the action does not fit R^t / V^t.
StepResult step(const WorldState& state, const JointAction& action);

/// Checks `action` against the step preconditions without applying it.
void validate_action(const WorldState& state, const JointAction& action);

/// Phase 1 only: requests picked and vehicle space reduced. No validation.
WorldState apply_assignments(const WorldState& state, const std::map<int, int>& request_actions);

ActionMasks action_masks(const WorldState& state);

/// Every request deferred, every decidable vehicle stays put.
JointAction idle_action(const WorldState& state);

using Policy = std::function<JointAction(const WorldState&)>;

struct EpisodeSummary {
  double objective = 0.0;
  double completion = 0.0;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> rewards;
  std::vector<SliceRecord> history;
  int delivered = 0;
  bool timed_out = false;
};

struct EpisodeOptions {
  double time_limit_seconds = 0.0;  // <= 0: unlimited
};

/// Runs from reset to t = T. A rejected action is rethrown with the step index.
EpisodeSummary run_episode(std::shared_ptr<const Scenario> scenario, const Policy& policy,
                           std::uint64_t seed, EpisodeOptions options = {});

/// Same, starting from an arbitrary state.
EpisodeSummary run_from(WorldState state, const Policy& policy, std::uint64_t seed = 0,
                        EpisodeOptions options = {});

double completion_rate(const WorldState& state);

}  // namespace mvdp
