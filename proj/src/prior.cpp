#include "mvdp/prior.hpp"

#include "mvdp/simulator.hpp"

namespace mvdp {

PriorConfig PriorConfig::for_scenario(const Scenario& scenario, double beta,
                                      double pickup_coefficient) {
  PriorConfig config;
  config.beta = beta;
  config.pickup_coefficient = pickup_coefficient;
  config.mean_distance = mvdp::mean_distance(scenario.graph.distance);
  return config;
}

std::vector<std::pair<int, double>> vehicle_selection_prior(const WorldState& state, int m,
                                                            std::span<const int> committed,
                                                            const PriorConfig& config) {
  const Request& r = state.scene().requests[m];
  std::vector<std::pair<int, double>> weights;
  for (int k = 0; k < static_cast<int>(state.vehicles.size()); ++k) {
    const Vehicle& v = state.vehicles[k];
    const int space = v.space - (committed.empty() ? 0 : committed[k]);
    if (v.at_station() && v.destination == r.from && space >= r.volume)
      weights.emplace_back(k, static_cast<double>(space) / v.capacity);
  }
  weights.emplace_back(kDefer, config.beta);
  return weights;
}

Eigen::VectorXd destination_prior(const WorldState& state, int k, const PriorConfig& config) {
  const Scenario& s = state.scene();
  const int n = s.station_count();
  const int here = state.vehicles[k].destination;
  Eigen::VectorXd weight = Eigen::VectorXd::Zero(n);
  Eigen::Array<bool, Eigen::Dynamic, 1> deliver = Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(n, false);
  Eigen::Array<bool, Eigen::Dynamic, 1> pickup = Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(n, false);
  for (int m = 0; m < static_cast<int>(state.requests.size()); ++m) {
    const RequestStatus& st = state.requests[m];
    if (st.state == RequestState::picked && st.carrier == k) deliver(s.requests[m].to) = true;
    else if (state.decidable_request(m)) pickup(s.requests[m].from) = true;
  }
  for (int i = 0; i < n; ++i) {
    if (deliver(i)) {
      weight(i) = 1.0;
    } else if (pickup(i)) {
      const int e = s.graph(here, i);
      weight(i) = e == 0 ? 1.0 : config.pickup_coefficient * config.mean_distance / e;
    }
  }
  if (weight.sum() <= 0.0) weight.setConstant(1.0 / n);
  return weight;
}

JointAction prior_act(const WorldState& state, const PriorConfig& config, Rng& rng) {
  JointAction action;
  std::vector<int> committed(state.vehicles.size(), 0);
  std::vector<double> w;
  for (int m : state.decidable_requests()) {
    const auto options = vehicle_selection_prior(state, m, committed, config);
    w.clear();
    for (const auto& [choice, weight] : options) w.push_back(weight);
    const int pick = sample_index(w, rng);
    const int choice = pick < 0 ? kDefer : options[pick].first;
    action.request_actions[m] = choice;
    if (choice != kDefer) committed[choice] += state.scene().requests[m].volume;
  }

  // Destinations see this slice's pickups as onboard cargo.
  const WorldState after = apply_assignments(state, action.request_actions);
  for (int k : state.decidable_vehicles()) {
    const Eigen::VectorXd prior = destination_prior(after, k, config);
    const int station = sample_index(std::span<const double>(prior.data(), prior.size()), rng);
    action.vehicle_actions[k] = station < 0 ? state.vehicles[k].destination : station;
  }
  return action;
}

}  // namespace mvdp
