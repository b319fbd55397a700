#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mvdp/graph.hpp"

namespace mvdp {

/// Request action meaning "postpone the assignment to a later slice".
inline constexpr int kDefer = -1;

enum class ProfitMode : std::uint8_t { distance, fixed };

/// Immutable part of a request.
struct Request {
  int from = 0;
  int to = 0;
  double value = 0.0;
  int volume = 1;
  int appear = 1;  // first slice at which the request is visible

  bool operator==(const Request&) const = default;
};

struct FleetSlot {
  int station = 0;
  int capacity = 1;

  bool operator==(const FleetSlot&) const = default;
};

struct Scenario {
  StationGraph graph;
  std::vector<FleetSlot> fleet;
  std::vector<Request> requests;
  int horizon = 1;
  double cost_rate = 0.0;
  ProfitMode profit_mode = ProfitMode::distance;

  int station_count() const { return graph.station_count(); }
  int vehicle_count() const { return static_cast<int>(fleet.size()); }
  int request_count() const { return static_cast<int>(requests.size()); }

  /// Throws ValidationError naming the first violated invariant.
  void validate() const;

  bool operator==(const Scenario&) const = default;
};

enum class RequestState : std::uint8_t { unassigned, picked, delivered };

struct RequestStatus {
  RequestState state = RequestState::unassigned;
  int carrier = -1;  // defined iff state != unassigned

  bool operator==(const RequestStatus&) const = default;
};

struct Vehicle {
  int capacity = 1;
  int space = 1;
  int destination = 0;
  int remaining = 0;  // slices left on the current leg; 0 = at `destination`

  bool at_station() const { return remaining == 0; }
  bool operator==(const Vehicle&) const = default;
};

struct WorldState {
  std::shared_ptr<const Scenario> scenario;
  int t = 0;
  std::vector<Vehicle> vehicles;
  std::vector<RequestStatus> requests;
  double objective = 0.0;
  int delivered = 0;

  const Scenario& scene() const { return *scenario; }
  bool visible(int m) const { return scenario->requests[m].appear <= t; }
  bool decidable_request(int m) const {
    return visible(m) && requests[m].state == RequestState::unassigned;
  }
  bool decidable_vehicle(int k) const { return vehicles[k].at_station(); }
  bool done() const { return t >= scenario->horizon; }

  /// R^t in ascending index order.
  std::vector<int> decidable_requests() const;
  /// V^t in ascending index order.
  std::vector<int> decidable_vehicles() const;

  /// Value equality, scenario compared by identity.
  bool operator==(const WorldState& other) const;
};

struct JointAction {
  std::map<int, int> request_actions;  // request -> vehicle | kDefer
  std::map<int, int> vehicle_actions;  // vehicle -> station

  bool operator==(const JointAction&) const = default;
};

/// Vehicles able to take request `m` now (ascending), followed by kDefer.
/// Throws NotDecidable if m is not in R^t.
std::vector<int> feasible_request_actions(const WorldState& state, int m);

/// All stations if the vehicle is at a station, otherwise empty.
std::vector<int> feasible_vehicle_destinations(const WorldState& state, int k);

/// Deliveries and dispatch legs of one slice, per vehicle.
struct VehicleSlice {
  std::vector<double> delivered_values;
  int leg = 0;
};
using SliceRecord = std::vector<VehicleSlice>;

/// sum_t sum_k (sum of delivered values - cost * leg length).
double objective_value(std::span<const SliceRecord> history, double cost_rate);

/// Empty when the state is consistent, otherwise a description of the first
/// broken invariant (capacity bookkeeping, carrier/state agreement).
std::optional<std::string> find_invariant_violation(const WorldState& state);

}  // namespace mvdp
