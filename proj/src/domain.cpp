#include "mvdp/domain.hpp"

#include <string>

#include "mvdp/errors.hpp"

namespace mvdp {

namespace {

std::string request_tag(std::size_t m) { return "requests[" + std::to_string(m) + "]"; }

}  // namespace

void Scenario::validate() const {
  try {
    check_distance_matrix(graph.distance);
  } catch (const InvalidMatrix& e) {
    throw ValidationError(std::string("stations: ") + e.what());
  }
  const int stations = station_count();
  if (stations < 1) throw ValidationError("stations: count must be positive");
  if (fleet.empty()) throw ValidationError("fleet: at least one vehicle is required");
  if (horizon < 1) throw ValidationError("horizon: must be positive");
  if (!(cost_rate >= 0.0)) throw ValidationError("cost_rate: must be non-negative");
  for (std::size_t k = 0; k < fleet.size(); ++k) {
    const auto& slot = fleet[k];
    const std::string tag = "fleet[" + std::to_string(k) + "]";
    if (slot.station < 0 || slot.station >= stations)
      throw ValidationError(tag + ".station out of range");
    if (slot.capacity < 1) throw ValidationError(tag + ".capacity must be positive");
  }
  for (std::size_t m = 0; m < requests.size(); ++m) {
    const auto& r = requests[m];
    if (r.from < 0 || r.from >= stations) throw ValidationError(request_tag(m) + ".from out of range");
    if (r.to < 0 || r.to >= stations) throw ValidationError(request_tag(m) + ".to out of range");
    if (r.volume < 1) throw ValidationError(request_tag(m) + ".vol must be positive");
    if (!(r.value >= 0.0)) throw ValidationError(request_tag(m) + ".val must be non-negative");
    if (r.appear < 1 || r.appear > horizon)
      throw ValidationError(request_tag(m) + ".time outside [1, horizon]");
  }
}

std::vector<int> WorldState::decidable_requests() const {
  std::vector<int> out;
  for (int m = 0; m < static_cast<int>(requests.size()); ++m)
    if (decidable_request(m)) out.push_back(m);
  return out;
}

std::vector<int> WorldState::decidable_vehicles() const {
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(vehicles.size()); ++k)
    if (decidable_vehicle(k)) out.push_back(k);
  return out;
}

bool WorldState::operator==(const WorldState& other) const {
  return scenario == other.scenario && t == other.t && vehicles == other.vehicles &&
         requests == other.requests && objective == other.objective &&
         delivered == other.delivered;
}

std::vector<int> feasible_request_actions(const WorldState& state, int m) {
  if (m < 0 || m >= static_cast<int>(state.requests.size()) || !state.decidable_request(m))
    throw NotDecidable("request " + std::to_string(m) + " is not decidable at t=" +
                       std::to_string(state.t));
  const Request& r = state.scene().requests[m];
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(state.vehicles.size()); ++k) {
    const Vehicle& v = state.vehicles[k];
    if (v.at_station() && v.destination == r.from && v.space >= r.volume) out.push_back(k);
  }
  out.push_back(kDefer);
  return out;
}

std::vector<int> feasible_vehicle_destinations(const WorldState& state, int k) {
  if (k < 0 || k >= static_cast<int>(state.vehicles.size()))
    throw ValidationError("vehicle index " + std::to_string(k) + " out of range");
  std::vector<int> out;
  if (!state.vehicles[k].at_station()) return out;
  out.reserve(state.scene().station_count());
  for (int i = 0; i < state.scene().station_count(); ++i) out.push_back(i);
  return out;
}

double objective_value(std::span<const SliceRecord> history, double cost_rate) {
  double total = 0.0;
  for (const SliceRecord& slice : history) {
    double slice_total = 0.0;
    for (const VehicleSlice& v : slice) {
      double delivered = 0.0;
      for (double value : v.delivered_values) delivered += value;
      slice_total += delivered - cost_rate * v.leg;
    }
    total += slice_total;
  }
  return total;
}

std::optional<std::string> find_invariant_violation(const WorldState& state) {
  const Scenario& s = state.scene();
  std::vector<int> onboard(state.vehicles.size(), 0);
  int delivered = 0;
  for (int m = 0; m < static_cast<int>(state.requests.size()); ++m) {
    const RequestStatus& st = state.requests[m];
    if (st.state == RequestState::unassigned) {
      if (st.carrier != -1) return "request " + std::to_string(m) + " unassigned with carrier";
      continue;
    }
    if (st.carrier < 0 || st.carrier >= static_cast<int>(state.vehicles.size()))
      return "request " + std::to_string(m) + " has no valid carrier";
    if (s.requests[m].appear > state.t)
      return "request " + std::to_string(m) + " handled before it appeared";
    if (st.state == RequestState::picked) onboard[st.carrier] += s.requests[m].volume;
    if (st.state == RequestState::delivered) ++delivered;
  }
  if (delivered != state.delivered) return std::string("delivered count mismatch");
  for (std::size_t k = 0; k < state.vehicles.size(); ++k) {
    const Vehicle& v = state.vehicles[k];
    if (v.space < 0 || v.space > v.capacity)
      return "vehicle " + std::to_string(k) + " space outside [0, cap]";
    if (v.space + onboard[k] != v.capacity)
      return "vehicle " + std::to_string(k) + " space does not match onboard volume";
    if (v.remaining < 0) return "vehicle " + std::to_string(k) + " negative remaining distance";
  }
  return std::nullopt;
}

}  // namespace mvdp
