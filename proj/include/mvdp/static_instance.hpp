#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mvdp/domain.hpp"

namespace mvdp {

struct StaticVehicle {
  int start = 0;                // station it stands at (or is heading to)
  int capacity = 1;
  int join_time = 0;            // first slice at which it can act
  std::vector<int> preload;     // instance request indices already on board
};

struct StaticRequest {
  int from = 0;
  int to = 0;
  double value = 0.0;
  int volume = 1;
  int appear = 0;               // window-relative
  int source = -1;              // index in the world scenario, if any
};

/// Frozen window subproblem over slices [0, window).
struct StaticInstance {
  StationGraph graph;
  int window = 1;
  std::vector<StaticVehicle> vehicles;
  std::vector<StaticRequest> requests;
  double cost_rate = 0.0;

  int request_count() const { return static_cast<int>(requests.size()); }
  int vehicle_count() const { return static_cast<int>(vehicles.size()); }
  /// -1 unless request m is preloaded, else the carrying vehicle.
  std::vector<int> preload_owner() const;
};

/// One visit of a vehicle: it stands at `station` from slice `time` on.
/// `deliveries` were unloaded on arrival (credited at time - 1), `pickups`
/// are loaded at `time`.
struct Stop {
  int time = 0;
  int station = 0;
  std::vector<int> pickups;
  std::vector<int> deliveries;

  bool operator==(const Stop&) const = default;
};

/// Per-vehicle stop lists. The first stop of every route is the vehicle's
/// origin at its join time.
struct Plan {
  std::vector<std::vector<Stop>> routes;
  double objective = 0.0;
};

/// Snapshot of the world as a static instance of length `window`.
/// Only visible requests are included, with appear = 0.
struct WindowMapping {
  StaticInstance instance;
  std::vector<int> world_request;  // instance request -> world request
};
WindowMapping build_static_window(const WorldState& state, int window);

/// Empty plan: every vehicle waits at its origin, preloads unload only if
/// the vehicle arrives at their destination.
Plan idle_plan(const StaticInstance& instance);

double plan_objective(const StaticInstance& instance, const Plan& plan);

/// First violated plan invariant, if any: travel time between stops,
/// single pickup/delivery, pickup before delivery, unload on first visit of
/// the destination, capacity, appearance and join times, window bounds.
std::optional<std::string> plan_violation(const StaticInstance& instance, const Plan& plan);

/// Compact encoding used by the metaheuristics: for each request, the
/// vehicle that serves it, the slice it is picked up (-1 for preloads) and
/// the slice of the stop that delivers it (-1 = not scheduled).
struct Assignment {
  int vehicle = -1;
  int pickup = -1;
  int delivery = -1;

  bool assigned() const { return vehicle >= 0; }
  bool operator==(const Assignment&) const = default;
};

/// Preloads attached to their vehicles, everything else unassigned.
std::vector<Assignment> empty_assignment(const StaticInstance& instance);

/// Expands an assignment into a plan; nullopt if it is infeasible.
std::optional<Plan> build_plan(const StaticInstance& instance, std::span<const Assignment> genes);

}  // namespace mvdp
