#pragma once

#include <vector>

#include "mvdp/sampling.hpp"
#include "mvdp/static_instance.hpp"

namespace mvdp {

struct SAParams {
  double initial_temp = 1000.0;
  double final_temp = 1.0;
  double cooling = 0.99;
  int max_iters = 5000;
  int placement_attempts = 20;  // random slots tried when reinserting a request

  /// Throws ConfigError on non-positive temperatures or cooling outside (0,1).
  void validate() const;
};

/// Simulated annealing over request assignments. The neighbor removes one
/// request and reinserts it on a random vehicle with random feasible times.
/// `best_trace`, if given, receives the best objective after each iteration.
Plan sa_solve(const StaticInstance& instance, const SAParams& params, Rng& rng,
              std::vector<double>* best_trace = nullptr);

}  // namespace mvdp
