#pragma once

#include <functional>
#include <vector>

#include "mvdp/sampling.hpp"
#include "mvdp/static_instance.hpp"

namespace mvdp {

struct GAParams {
  int population = 10;
  int generations = 500;
  double fitness_scale = 0.0;    // <= 0: max(1, mean request value)
  double mutation_rate = 0.5;
  int placement_attempts = 20;

  void validate() const;
};

/// Called once per generation with the plans of the whole population.
using GenerationObserver = std::function<void(int generation, const std::vector<Plan>& population)>;

/// Elitist genetic algorithm over request assignments. Selection is
/// roulette on exp(objective / scale); crossover copies one request's
/// assignment from the other parent, mutation reassigns a request or shifts
/// its times. Infeasible offspring fall back to the parent.
Plan ga_solve(const StaticInstance& instance, const GAParams& params, Rng& rng,
              std::vector<double>* best_trace = nullptr, const GenerationObserver& observer = {});

}  // namespace mvdp
