#include "mvdp/annealing.hpp"

#include <algorithm>
#include <cmath>

#include "mvdp/errors.hpp"
#include "search_moves.hpp"

namespace mvdp {

void SAParams::validate() const {
  if (!(initial_temp > 0.0) || !(final_temp > 0.0)) throw ConfigError("sa: temperatures must be positive");
  if (!(cooling > 0.0 && cooling < 1.0)) throw ConfigError("sa: cooling must lie in (0, 1)");
  if (max_iters < 0) throw ConfigError("sa: max_iters must be non-negative");
  if (placement_attempts < 1) throw ConfigError("sa: placement_attempts must be positive");
}

Plan sa_solve(const StaticInstance& instance, const SAParams& params, Rng& rng,
              std::vector<double>* best_trace) {
  params.validate();
  const auto owner = instance.preload_owner();
  auto [current, current_plan] = detail::random_solution(instance, owner, rng, params.placement_attempts);
  Plan best = current_plan;
  if (best_trace) best_trace->clear();
  if (instance.requests.empty()) return best;

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double temperature = params.initial_temp;
  for (int it = 0; it < params.max_iters; ++it) {
    std::vector<Assignment> candidate = current;
    const int m = detail::uniform_int(rng, 0, instance.request_count() - 1);
    auto plan = detail::reinsert(instance, owner, candidate, m, rng, params.placement_attempts);
    if (!plan) plan = build_plan(instance, candidate);

    const double delta = plan ? plan->objective - current_plan.objective : 0.0;
    if (plan && (delta >= 0.0 || unit(rng) < std::exp(delta / temperature))) {
      current = std::move(candidate);
      current_plan = std::move(*plan);
      if (current_plan.objective > best.objective) best = current_plan;
    }
    if (best_trace) best_trace->push_back(best.objective);
    temperature = std::max(params.final_temp, temperature * params.cooling);
  }
  return best;
}

}  // namespace mvdp
