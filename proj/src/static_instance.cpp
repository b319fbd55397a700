#include "mvdp/static_instance.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace mvdp {

std::vector<int> StaticInstance::preload_owner() const {
  std::vector<int> owner(requests.size(), -1);
  for (int k = 0; k < vehicle_count(); ++k)
    for (int m : vehicles[k].preload) owner[m] = k;
  return owner;
}

WindowMapping build_static_window(const WorldState& state, int window) {
  const Scenario& s = state.scene();
  WindowMapping out;
  StaticInstance& inst = out.instance;
  inst.graph = s.graph;
  inst.window = std::max(1, window);
  inst.cost_rate = s.cost_rate;
  inst.vehicles.resize(state.vehicles.size());
  for (std::size_t k = 0; k < state.vehicles.size(); ++k) {
    const Vehicle& v = state.vehicles[k];
    inst.vehicles[k] = StaticVehicle{v.destination, v.capacity, v.remaining, {}};
  }
  for (int m = 0; m < static_cast<int>(state.requests.size()); ++m) {
    const RequestStatus& st = state.requests[m];
    const bool carried = st.state == RequestState::picked;
    if (!carried && !state.decidable_request(m)) continue;
    const Request& r = s.requests[m];
    const int index = static_cast<int>(inst.requests.size());
    inst.requests.push_back(StaticRequest{r.from, r.to, r.value, r.volume, 0, m});
    out.world_request.push_back(m);
    if (carried) inst.vehicles[st.carrier].preload.push_back(index);
  }
  return out;
}

Plan idle_plan(const StaticInstance& instance) {
  return *build_plan(instance, empty_assignment(instance));
}

double plan_objective(const StaticInstance& instance, const Plan& plan) {
  double total = 0.0;
  for (const auto& route : plan.routes) {
    for (std::size_t i = 0; i < route.size(); ++i) {
      for (int m : route[i].deliveries) total += instance.requests[m].value;
      if (i > 0) total -= instance.cost_rate * instance.graph(route[i - 1].station, route[i].station);
    }
  }
  return total;
}

namespace {

/// Replays one route: checks timing, pickups and capacity, and computes the
/// forced unloads at every stop. With `fill` the deliveries are written into
/// the stops, otherwise the listed deliveries must match.
std::optional<std::string> walk_route(const StaticInstance& inst, int k, std::vector<Stop>& stops,
                                      bool fill, std::vector<int>& picked_by,
                                      std::vector<char>& delivered) {
  const StaticVehicle& veh = inst.vehicles[k];
  const int horizon = inst.window;
  const std::string tag = "vehicle " + std::to_string(k);
  if (stops.empty()) return tag + ": route has no origin stop";
  if (stops[0].time != veh.join_time || stops[0].station != veh.start)
    return tag + ": first stop must be the origin at the join time";

  std::vector<int> onboard = veh.preload;
  int load = 0;
  for (int m : onboard) load += inst.requests[m].volume;

  for (std::size_t i = 0; i < stops.size(); ++i) {
    Stop& stop = stops[i];
    const std::string where = tag + " stop " + std::to_string(i);
    if (i > 0) {
      const Stop& prev = stops[i - 1];
      if (stop.time - prev.time < inst.graph(prev.station, stop.station) + 1)
        return where + ": not enough time to travel from the previous stop";
    }
    const bool has_work = !stop.pickups.empty() || !stop.deliveries.empty();
    if (stop.time > horizon && (i > 0 || has_work)) return where + ": beyond the window";

    // Unload on arrival. The origin stop is an arrival only for vehicles
    // that were en route at window start.
    std::vector<int> forced;
    if (i > 0 || (stop.time >= 1 && stop.time <= horizon)) {
      for (int m : onboard)
        if (inst.requests[m].to == stop.station) forced.push_back(m);
    }
    std::sort(forced.begin(), forced.end());
    if (fill) {
      stop.deliveries = forced;
    } else {
      std::vector<int> listed = stop.deliveries;
      std::sort(listed.begin(), listed.end());
      if (listed != forced) return where + ": deliveries differ from the cargo due here";
    }
    for (int m : forced) {
      if (delivered[m]) return where + ": request " + std::to_string(m) + " delivered twice";
      delivered[m] = 1;
      load -= inst.requests[m].volume;
      onboard.erase(std::find(onboard.begin(), onboard.end(), m));
    }

    for (int m : stop.pickups) {
      if (m < 0 || m >= inst.request_count()) return where + ": unknown request";
      const StaticRequest& r = inst.requests[m];
      if (picked_by[m] != -1) return where + ": request " + std::to_string(m) + " picked twice";
      if (r.from != stop.station) return where + ": pickup away from the request origin";
      if (r.appear > stop.time) return where + ": pickup before the request appears";
      if (stop.time >= horizon) return where + ": pickup outside the window";
      picked_by[m] = k;
      onboard.push_back(m);
      load += r.volume;
    }
    if (load > veh.capacity) return where + ": load exceeds capacity";
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> plan_violation(const StaticInstance& instance, const Plan& plan) {
  if (static_cast<int>(plan.routes.size()) != instance.vehicle_count())
    return std::string("plan has the wrong number of routes");
  std::vector<int> picked_by(instance.requests.size(), -1);
  std::vector<char> delivered(instance.requests.size(), 0);
  const auto owner = instance.preload_owner();
  for (std::size_t m = 0; m < owner.size(); ++m) picked_by[m] = owner[m];
  for (int k = 0; k < instance.vehicle_count(); ++k) {
    std::vector<Stop> stops = plan.routes[k];
    if (auto err = walk_route(instance, k, stops, false, picked_by, delivered)) return err;
  }
  const double expected = plan_objective(instance, plan);
  if (std::abs(expected - plan.objective) > 1e-9 * std::max(1.0, std::abs(expected)))
    return std::string("plan objective does not match its stops");
  return std::nullopt;
}

std::vector<Assignment> empty_assignment(const StaticInstance& instance) {
  std::vector<Assignment> genes(instance.requests.size());
  const auto owner = instance.preload_owner();
  for (std::size_t m = 0; m < owner.size(); ++m)
    if (owner[m] >= 0) genes[m] = Assignment{owner[m], -1, -1};
  return genes;
}

std::optional<Plan> build_plan(const StaticInstance& instance, std::span<const Assignment> genes) {
  const int requests = instance.request_count();
  if (static_cast<int>(genes.size()) != requests) return std::nullopt;
  const auto owner = instance.preload_owner();

  // (time, station, request) visit events per vehicle.
  std::vector<std::vector<std::tuple<int, int, int, bool>>> events(instance.vehicles.size());
  for (int m = 0; m < requests; ++m) {
    const Assignment& g = genes[m];
    const StaticRequest& r = instance.requests[m];
    if (owner[m] >= 0) {
      if (g.vehicle != owner[m] || g.pickup != -1) return std::nullopt;
    } else if (!g.assigned()) {
      continue;
    } else {
      if (g.vehicle >= instance.vehicle_count() || g.pickup < 0 || g.delivery < 0) return std::nullopt;
      events[g.vehicle].emplace_back(g.pickup, r.from, m, true);
    }
    if (g.delivery >= 0) events[g.vehicle].emplace_back(g.delivery, r.to, m, false);
  }

  Plan plan;
  plan.routes.resize(instance.vehicles.size());
  std::vector<int> picked_by(owner);
  std::vector<char> delivered(requests, 0);
  for (int k = 0; k < instance.vehicle_count(); ++k) {
    auto& ev = events[k];
    std::sort(ev.begin(), ev.end());
    const StaticVehicle& v = instance.vehicles[k];
    std::vector<Stop>& stops = plan.routes[k];
    stops.push_back(Stop{v.join_time, v.start, {}, {}});
    for (const auto& [time, station, m, is_pickup] : ev) {
      Stop& last = stops.back();
      if (time < last.time) return std::nullopt;
      if (time == last.time) {
        if (station != last.station) return std::nullopt;
      } else {
        stops.push_back(Stop{time, station, {}, {}});
      }
      if (is_pickup) stops.back().pickups.push_back(m);
    }
    if (walk_route(instance, k, stops, true, picked_by, delivered)) return std::nullopt;
  }
  for (int m = 0; m < requests; ++m)
    if (genes[m].assigned() && genes[m].delivery >= 0 && !delivered[m]) return std::nullopt;
  plan.objective = plan_objective(instance, plan);
  return plan;
}

}  // namespace mvdp
