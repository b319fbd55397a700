#pragma once

#include <Eigen/Core>

#include <span>
#include <utility>
#include <vector>

#include "mvdp/domain.hpp"
#include "mvdp/sampling.hpp"

namespace mvdp {

struct PriorConfig {
  double beta = 0.03;                // DEFER weight
  double pickup_coefficient = 0.1;
  double mean_distance = 1.0;        // mean of all distance-matrix entries

  static PriorConfig for_scenario(const Scenario& scenario, double beta = 0.03,
                                  double pickup_coefficient = 0.1);
};

/// (choice, weight) pairs: capacity-feasible co-located vehicles weighted by
/// remaining space / capacity, then kDefer weighted by beta. `committed`
/// holds the volume already assigned to each vehicle in this slice.
std::vector<std::pair<int, double>> vehicle_selection_prior(const WorldState& state, int m,
                                                            std::span<const int> committed,
                                                            const PriorConfig& config);

/// Unnormalized weight per station for vehicle k:
///   1                            if k carries cargo destined there,
///   coeff * mean_e / e           if a visible unassigned request starts there
///                                (1 when e = 0),
///   0                            otherwise;
/// uniform 1/I when every weight is zero.
Eigen::VectorXd destination_prior(const WorldState& state, int k, const PriorConfig& config);

/// Samples a joint action from the normalized priors alone.
JointAction prior_act(const WorldState& state, const PriorConfig& config, Rng& rng);

class PriorPolicy {
 public:
  PriorPolicy(PriorConfig config, std::uint64_t seed) : config_(config), rng_(seed) {}
  JointAction operator()(const WorldState& state) { return prior_act(state, config_, rng_); }

 private:
  PriorConfig config_;
  Rng rng_;
};

}  // namespace mvdp
