#include "mvdp/simulator.hpp"

#include <chrono>
#include <string>

#include "mvdp/errors.hpp"

namespace mvdp {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::pickup: return "pickup";
    case EventKind::dispatch: return "dispatch";
    case EventKind::arrival: return "arrival";
    case EventKind::delivery: return "delivery";
  }
  return "?";
}

WorldState reset(std::shared_ptr<const Scenario> scenario, std::uint64_t /*seed*/) {
  if (!scenario) throw ValidationError("scenario: null");
  scenario->validate();
  WorldState state;
  state.scenario = std::move(scenario);
  const Scenario& s = *state.scenario;
  state.vehicles.reserve(s.fleet.size());
  for (const FleetSlot& slot : s.fleet)
    state.vehicles.push_back(Vehicle{slot.capacity, slot.capacity, slot.station, 0});
  state.requests.assign(s.requests.size(), RequestStatus{});
  return state;
}

namespace {

std::string request_entity(int m) { return "request:" + std::to_string(m); }
std::string vehicle_entity(int k) { return "vehicle:" + std::to_string(k); }

}  // namespace

void validate_action(const WorldState& state, const JointAction& action) {
  const Scenario& s = state.scene();
  if (state.done()) throw RejectedAction("episode", "horizon reached");
  const int requests = static_cast<int>(state.requests.size());
  const int vehicles = static_cast<int>(state.vehicles.size());

  for (const auto& [m, choice] : action.request_actions) {
    if (m < 0 || m >= requests || !state.decidable_request(m))
      throw RejectedAction(request_entity(m), "not decidable at t=" + std::to_string(state.t));
  }
  for (int m : state.decidable_requests())
    if (!action.request_actions.contains(m)) throw RejectedAction(request_entity(m), "missing action");

  std::vector<int> committed(vehicles, 0);
  for (const auto& [m, choice] : action.request_actions) {  // ascending request index
    if (choice == kDefer) continue;
    if (choice < 0 || choice >= vehicles)
      throw RejectedAction(request_entity(m), "unknown vehicle " + std::to_string(choice));
    const Vehicle& v = state.vehicles[choice];
    const Request& r = s.requests[m];
    if (!v.at_station() || v.destination != r.from)
      throw RejectedAction(request_entity(m),
                           "vehicle " + std::to_string(choice) + " is not at the origin station");
    if (committed[choice] + r.volume > v.space)
      throw RejectedAction(request_entity(m),
                           "vehicle " + std::to_string(choice) + " lacks space");
    committed[choice] += r.volume;
  }

  for (const auto& [k, station] : action.vehicle_actions) {
    if (k < 0 || k >= vehicles || !state.decidable_vehicle(k))
      throw RejectedAction(vehicle_entity(k), "not decidable at t=" + std::to_string(state.t));
    if (station < 0 || station >= s.station_count())
      throw RejectedAction(vehicle_entity(k), "unknown station " + std::to_string(station));
  }
  for (int k : state.decidable_vehicles())
    if (!action.vehicle_actions.contains(k)) throw RejectedAction(vehicle_entity(k), "missing action");
}

WorldState apply_assignments(const WorldState& state, const std::map<int, int>& request_actions) {
  WorldState next = state;
  const Scenario& s = state.scene();
  for (const auto& [m, k] : request_actions) {
    if (k == kDefer) continue;
    next.requests[m] = RequestStatus{RequestState::picked, k};
    next.vehicles[k].space -= s.requests[m].volume;
  }
  return next;
}

StepResult step(const WorldState& state, const JointAction& action) {
  validate_action(state, action);
  const Scenario& s = state.scene();
  const int vehicles = static_cast<int>(state.vehicles.size());

  StepResult result;
  result.record.assign(vehicles, VehicleSlice{});
  WorldState& next = result.next_state;
  next = apply_assignments(state, action.request_actions);
  for (const auto& [m, k] : action.request_actions)
    if (k != kDefer) result.events.push_back({state.t, EventKind::pickup, k, m, s.requests[m].from});

  // Dispatch. Vehicles decided this slice do not move until the next one.
  for (const auto& [k, station] : action.vehicle_actions) {
    Vehicle& v = next.vehicles[k];
    const int leg = s.graph(v.destination, station);
    const bool moved = station != v.destination;
    v.destination = station;
    v.remaining = leg;
    result.record[k].leg = leg;
    if (moved) {
      result.events.push_back({state.t, EventKind::dispatch, k, -1, station});
      if (leg == 0) result.events.push_back({state.t, EventKind::arrival, k, -1, station});
    }
  }

  for (int k = 0; k < vehicles; ++k) {
    if (state.vehicles[k].at_station()) continue;
    Vehicle& v = next.vehicles[k];
    --v.remaining;
    if (v.remaining == 0) result.events.push_back({state.t, EventKind::arrival, k, -1, v.destination});
  }

  // Unload cargo for every vehicle standing at a station.
  for (int m = 0; m < static_cast<int>(next.requests.size()); ++m) {
    RequestStatus& st = next.requests[m];
    if (st.state != RequestState::picked) continue;
    Vehicle& v = next.vehicles[st.carrier];
    const Request& r = s.requests[m];
    if (!v.at_station() || v.destination != r.to) continue;
    st.state = RequestState::delivered;
    v.space += r.volume;
    ++next.delivered;
    result.record[st.carrier].delivered_values.push_back(r.value);
    result.events.push_back({state.t, EventKind::delivery, st.carrier, m, r.to});
  }

  double reward = 0.0;
  for (const VehicleSlice& vs : result.record) {
    double delivered = 0.0;
    for (double value : vs.delivered_values) delivered += value;
    reward += delivered - s.cost_rate * vs.leg;
  }
  result.reward = reward;
  next.objective += reward;
  next.t = state.t + 1;
  result.done = next.done();
  return result;
}

ActionMasks action_masks(const WorldState& state) {
  const Scenario& s = state.scene();
  const int vehicles = static_cast<int>(state.vehicles.size());
  ActionMasks masks;
  masks.request_ids = state.decidable_requests();
  masks.requests = BoolMatrix::Constant(static_cast<Eigen::Index>(masks.request_ids.size()),
                                        vehicles + 1, false);
  for (std::size_t row = 0; row < masks.request_ids.size(); ++row) {
    for (int choice : feasible_request_actions(state, masks.request_ids[row])) {
      const int col = choice == kDefer ? vehicles : choice;
      masks.requests(static_cast<Eigen::Index>(row), col) = true;
    }
  }
  masks.vehicles = BoolMatrix::Constant(vehicles, s.station_count(), false);
  for (int k = 0; k < vehicles; ++k)
    for (int station : feasible_vehicle_destinations(state, k)) masks.vehicles(k, station) = true;
  return masks;
}

JointAction idle_action(const WorldState& state) {
  JointAction action;
  for (int m : state.decidable_requests()) action.request_actions[m] = kDefer;
  for (int k : state.decidable_vehicles()) action.vehicle_actions[k] = state.vehicles[k].destination;
  return action;
}

double completion_rate(const WorldState& state) {
  const int total = state.scene().request_count();
  if (total == 0) return 1.0;
  return static_cast<double>(state.delivered) / total;
}

EpisodeSummary run_from(WorldState state, const Policy& policy, std::uint64_t seed,
                        EpisodeOptions options) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  EpisodeSummary summary;
  summary.seed = seed;
  while (!state.done()) {
    if (options.time_limit_seconds > 0.0 &&
        std::chrono::duration<double>(Clock::now() - start).count() > options.time_limit_seconds) {
      summary.timed_out = true;
      break;
    }
    const int index = state.t;
    JointAction action = policy(state);
    StepResult result;
    try {
      result = step(state, action);
    } catch (const RejectedAction& e) {
      throw RejectedAction(e.entity(), "step " + std::to_string(index) + ": " + e.what());
    }
    summary.objective += result.reward;
    summary.rewards.push_back(result.reward);
    summary.history.push_back(std::move(result.record));
    state = std::move(result.next_state);
  }
  summary.delivered = state.delivered;
  summary.completion = completion_rate(state);
  summary.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return summary;
}

EpisodeSummary run_episode(std::shared_ptr<const Scenario> scenario, const Policy& policy,
                           std::uint64_t seed, EpisodeOptions options) {
  return run_from(reset(std::move(scenario), seed), policy, seed, options);
}

}  // namespace mvdp
