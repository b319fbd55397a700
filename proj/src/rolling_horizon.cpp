#include "mvdp/rolling_horizon.hpp"

#include <algorithm>

#include "mvdp/errors.hpp"

namespace mvdp {

const char* to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::sa: return "sa";
    case SolverKind::ga: return "ga";
    case SolverKind::exact: return "exact";
  }
  return "?";
}

SolverKind solver_kind_from_string(const std::string& name) {
  if (name == "sa") return SolverKind::sa;
  if (name == "ga") return SolverKind::ga;
  if (name == "exact") return SolverKind::exact;
  throw ConfigError("unknown solver '" + name + "' (expected sa, ga or exact)");
}

RollingHorizonConfig RollingHorizonConfig::for_preset(const std::string& name) {
  if (name.rfind("synth-XL", 0) == 0) return {40, 20};
  if (name.rfind("synth-L", 0) == 0) return {60, 30};
  if (name.rfind("synth-S", 0) == 0) return {20, 10};
  if (name.rfind("dhrd", 0) == 0 || name.rfind("log", 0) == 0) return {30, 15};
  return {};
}

void RollingHorizonConfig::validate() const {
  if (horizon < 1) throw ConfigError("rh.horizon must be at least 1");
  if (replan_interval < 1) throw ConfigError("rh.replan must be at least 1");
}

RollingHorizonPolicy::RollingHorizonPolicy(SolverKind solver, RollingHorizonConfig config,
                                           std::uint64_t seed, SAParams sa, GAParams ga,
                                           ExactLimits limits)
    : solver_(solver), config_(config), sa_(sa), ga_(ga), limits_(limits), rng_(seed) {
  config_.validate();
  sa_.validate();
  ga_.validate();
}

void RollingHorizonPolicy::replan(const WorldState& state) {
  const int window = std::min(config_.horizon, state.scene().horizon - state.t);
  WindowMapping mapping = build_static_window(state, window);
  switch (solver_) {
    case SolverKind::sa: plan_ = sa_solve(mapping.instance, sa_, rng_); break;
    case SolverKind::ga: plan_ = ga_solve(mapping.instance, ga_, rng_); break;
    case SolverKind::exact:
      try {
        plan_ = exact_solve(mapping.instance, limits_);
      } catch (const TooLarge& e) {
        plan_ = idle_plan(mapping.instance);
        degradations_.push_back(Degradation{state.t, -1, -1, e.what()});
      }
      break;
  }
  world_request_ = std::move(mapping.world_request);
  cursor_.assign(state.vehicles.size(), 0);
  planned_at_ = state.t;
  has_plan_ = true;
  ++solves_;
}

JointAction RollingHorizonPolicy::operator()(const WorldState& state) {
  if (!has_plan_ || state.t - planned_at_ >= config_.replan_interval) replan(state);

  JointAction action;
  for (int m : state.decidable_requests()) action.request_actions[m] = kDefer;
  std::vector<int> room(state.vehicles.size());
  for (std::size_t k = 0; k < room.size(); ++k) room[k] = state.vehicles[k].space;

  for (int k : state.decidable_vehicles()) {
    const int here = state.vehicles[k].destination;
    const auto& route = plan_.routes[k];
    std::size_t& c = cursor_[k];
    while (c < route.size() && route[c].station == here) {
      for (int idx : route[c].pickups) {
        const int m = world_request_[idx];
        const Request& r = state.scene().requests[m];
        if (!state.decidable_request(m)) {
          degradations_.push_back(Degradation{state.t, k, m, "planned pickup no longer available"});
        } else if (room[k] < r.volume) {
          degradations_.push_back(Degradation{state.t, k, m, "planned pickup exceeds remaining space"});
        } else {
          room[k] -= r.volume;
          action.request_actions[m] = k;
        }
      }
      ++c;
    }
    action.vehicle_actions[k] = c < route.size() ? route[c].station : here;
  }
  return action;
}

}  // namespace mvdp
