#include "mvdp/nearest.hpp"

#include <limits>
#include <tuple>

#include "mvdp/simulator.hpp"

namespace mvdp {

JointAction nearest_act(const WorldState& state) {
  const Scenario& s = state.scene();
  JointAction action;
  std::vector<int> committed(state.vehicles.size(), 0);
  for (int m : state.decidable_requests()) {
    int chosen = kDefer;
    const Request& r = s.requests[m];
    for (int k = 0; k < static_cast<int>(state.vehicles.size()); ++k) {
      const Vehicle& v = state.vehicles[k];
      if (v.at_station() && v.destination == r.from && v.space - committed[k] >= r.volume) {
        chosen = k;
        break;
      }
    }
    action.request_actions[m] = chosen;
    if (chosen != kDefer) committed[chosen] += r.volume;
  }

  const WorldState after = apply_assignments(state, action.request_actions);
  for (int k : state.decidable_vehicles()) {
    const Vehicle& v = after.vehicles[k];
    // (distance, kind: 0 delivery / 1 pickup, station)
    std::tuple<int, int, int> best{std::numeric_limits<int>::max(), 2, v.destination};
    for (int m = 0; m < static_cast<int>(after.requests.size()); ++m) {
      const RequestStatus& st = after.requests[m];
      const Request& r = s.requests[m];
      std::tuple<int, int, int> candidate;
      if (st.state == RequestState::picked && st.carrier == k) {
        candidate = {s.graph(v.destination, r.to), 0, r.to};
      } else if (after.decidable_request(m) && v.space >= r.volume) {
        candidate = {s.graph(v.destination, r.from), 1, r.from};
      } else {
        continue;
      }
      if (candidate < best) best = candidate;
    }
    action.vehicle_actions[k] = std::get<2>(best);
  }
  return action;
}

}  // namespace mvdp
