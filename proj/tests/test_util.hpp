#pragma once

// Test-only helpers: random feasible policies, tiny instance generation and
// an unpruned enumerator over the simulator used as the exact-solver oracle.

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "mvdp/domain.hpp"
#include "mvdp/sampling.hpp"
#include "mvdp/simulator.hpp"
#include "mvdp/static_instance.hpp"

namespace testutil {

using mvdp::Rng;

inline mvdp::StationGraph graph_of(std::vector<std::vector<int>> rows) {
  const int n = static_cast<int>(rows.size());
  mvdp::DistanceMatrixi d(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d(i, j) = rows[i][j];
  return mvdp::StationGraph{d};
}

/// Uniform over each request's feasible choices (respecting space already
/// committed this slice) and over all stations for each free vehicle.
inline mvdp::JointAction random_action(const mvdp::WorldState& state, Rng& rng, double defer_bias = 0.3) {
  const mvdp::Scenario& s = state.scene();
  mvdp::JointAction a;
  std::vector<int> room(state.vehicles.size());
  for (std::size_t k = 0; k < room.size(); ++k) room[k] = state.vehicles[k].space;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int m : state.decidable_requests()) {
    std::vector<int> options;
    for (int k : mvdp::feasible_request_actions(state, m))
      if (k != mvdp::kDefer && room[k] >= s.requests[m].volume) options.push_back(k);
    int choice = mvdp::kDefer;
    if (!options.empty() && unit(rng) >= defer_bias)
      choice = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    if (choice != mvdp::kDefer) room[choice] -= s.requests[m].volume;
    a.request_actions[m] = choice;
  }
  std::uniform_int_distribution<int> station(0, s.station_count() - 1);
  for (int k : state.decidable_vehicles()) a.vehicle_actions[k] = station(rng);
  return a;
}

struct TinyShape {
  int max_stations = 3;
  int max_vehicles = 2;
  int max_requests = 2;
  int max_window = 6;
  bool en_route = true;     // allow vehicles that join late and preloads
  bool exact_size = false;  // use the maxima instead of drawing sizes
};

/// Random consistent static instance. Distances are symmetric draws from
/// {1..3} closed under shortest paths; values have two decimals.
inline mvdp::StaticInstance random_instance(Rng& rng, const TinyShape& shape = {}) {
  auto pick = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  mvdp::StaticInstance inst;
  const int I = shape.exact_size ? shape.max_stations : pick(2, shape.max_stations);
  mvdp::DistanceMatrixi d = mvdp::DistanceMatrixi::Zero(I, I);
  for (int i = 0; i < I; ++i)
    for (int j = i + 1; j < I; ++j) d(i, j) = d(j, i) = pick(1, 3);
  inst.graph.distance = mvdp::shortest_path_closure(d);
  inst.window = shape.exact_size ? shape.max_window : pick(std::min(2, shape.max_window), shape.max_window);
  inst.cost_rate = pick(0, 1) ? 0.0 : 0.25 * pick(1, 3);
  const int K = shape.exact_size ? shape.max_vehicles : pick(1, shape.max_vehicles);
  for (int k = 0; k < K; ++k) {
    mvdp::StaticVehicle v;
    v.start = pick(0, I - 1);
    v.capacity = pick(1, 2);
    v.join_time = shape.en_route && pick(0, 3) == 0 ? pick(1, 3) : 0;
    inst.vehicles.push_back(v);
  }
  const int M = shape.exact_size ? shape.max_requests : (pick(0, 9) == 0 ? 0 : pick(1, shape.max_requests));
  std::vector<int> load(K, 0);
  for (int m = 0; m < M; ++m) {
    mvdp::StaticRequest r;
    r.from = pick(0, I - 1);
    r.to = pick(0, 5) == 0 ? r.from : (r.from + pick(1, I - 1)) % I;
    r.value = pick(50, 900) / 100.0;
    r.volume = 1;
    r.appear = pick(0, inst.window - 1);
    const int k = pick(0, K - 1);
    if (shape.en_route && pick(0, 4) == 0 && load[k] + r.volume <= inst.vehicles[k].capacity &&
        !(inst.vehicles[k].join_time == 0 && r.to == inst.vehicles[k].start)) {
      r.appear = 0;
      load[k] += r.volume;
      inst.vehicles[k].preload.push_back(m);
    }
    inst.requests.push_back(r);
  }
  return inst;
}

/// The same situation as a simulator state: a scenario of horizon H + 1
/// observed at t = 1, so that the remaining H slices match the window.
inline mvdp::WorldState world_of(const mvdp::StaticInstance& inst) {
  auto s = std::make_shared<mvdp::Scenario>();
  s->graph = inst.graph;
  s->horizon = inst.window + 1;
  s->cost_rate = inst.cost_rate;
  for (const auto& v : inst.vehicles) s->fleet.push_back({v.start, v.capacity});
  for (const auto& r : inst.requests) s->requests.push_back({r.from, r.to, r.value, r.volume, r.appear + 1});
  mvdp::WorldState state = mvdp::reset(s);
  state.t = 1;
  for (int k = 0; k < inst.vehicle_count(); ++k) {
    auto& v = state.vehicles[k];
    v.destination = inst.vehicles[k].start;
    v.remaining = inst.vehicles[k].join_time;
    for (int m : inst.vehicles[k].preload) {
      state.requests[m] = mvdp::RequestStatus{mvdp::RequestState::picked, k};
      v.space -= inst.requests[m].volume;
    }
  }
  return state;
}

/// All joint actions that pass the step preconditions, in no particular order.
inline std::vector<mvdp::JointAction> all_actions(const mvdp::WorldState& state) {
  const mvdp::Scenario& s = state.scene();
  const auto requests = state.decidable_requests();
  const auto vehicles = state.decidable_vehicles();
  std::vector<mvdp::JointAction> out;
  mvdp::JointAction cur;
  std::vector<int> room(state.vehicles.size());
  for (std::size_t k = 0; k < room.size(); ++k) room[k] = state.vehicles[k].space;
  auto rec_v = [&](auto&& self, std::size_t i) -> void {
    if (i == vehicles.size()) {
      out.push_back(cur);
      return;
    }
    for (int st : mvdp::feasible_vehicle_destinations(state, vehicles[i])) {
      cur.vehicle_actions[vehicles[i]] = st;
      self(self, i + 1);
    }
  };
  auto rec_r = [&](auto&& self, std::size_t i) -> void {
    if (i == requests.size()) {
      rec_v(rec_v, 0);
      return;
    }
    const int m = requests[i];
    for (int choice : mvdp::feasible_request_actions(state, m)) {
      if (choice != mvdp::kDefer && room[choice] < s.requests[m].volume) continue;
      if (choice != mvdp::kDefer) room[choice] -= s.requests[m].volume;
      cur.request_actions[m] = choice;
      self(self, i + 1);
      if (choice != mvdp::kDefer) room[choice] += s.requests[m].volume;
    }
  };
  rec_r(rec_r, 0);
  return out;
}

inline std::string state_key(const mvdp::WorldState& s) {
  std::string key = std::to_string(s.t) + "|";
  for (const auto& v : s.vehicles)
    key += std::to_string(v.destination) + "," + std::to_string(v.remaining) + "," + std::to_string(v.space) + ";";
  key += "|";
  for (const auto& r : s.requests)
    key += std::to_string(static_cast<int>(r.state)) + "," + std::to_string(r.carrier) + ";";
  return key;
}

/// Best achievable sum of rewards from `state` to the horizon, by plain
/// enumeration of every feasible joint action at every slice.
class Enumerator {
 public:
  double best(const mvdp::WorldState& state) {
    if (state.done()) return 0.0;
    const std::string key = state_key(state);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    double value = -std::numeric_limits<double>::infinity();
    for (const auto& a : all_actions(state)) {
      const mvdp::StepResult r = mvdp::step(state, a);
      value = std::max(value, r.reward + best(r.next_state));
    }
    memo_[key] = value;
    return value;
  }

 private:
  std::map<std::string, double> memo_;
};

inline double enumerate_optimum(const mvdp::StaticInstance& inst) {
  Enumerator e;
  return e.best(world_of(inst));
}

}  // namespace testutil
