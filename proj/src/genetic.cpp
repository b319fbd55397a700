#include "mvdp/genetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mvdp/errors.hpp"
#include "search_moves.hpp"

namespace mvdp {

void GAParams::validate() const {
  if (population < 2) throw ConfigError("ga: population must be at least 2");
  if (generations < 0) throw ConfigError("ga: generations must be non-negative");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) throw ConfigError("ga: mutation_rate must lie in [0, 1]");
  if (placement_attempts < 1) throw ConfigError("ga: placement_attempts must be positive");
}

namespace {

struct Individual {
  std::vector<Assignment> genes;
  Plan plan;
};

double default_scale(const StaticInstance& instance) {
  if (instance.requests.empty()) return 1.0;
  double total = 0.0;
  for (const StaticRequest& r : instance.requests) total += r.value;
  return std::max(1.0, total / static_cast<double>(instance.requests.size()));
}

/// Shifts the pickup and delivery of request m by a small random offset.
std::optional<Plan> perturb(const StaticInstance& inst, std::vector<Assignment>& genes, int m, Rng& rng) {
  Assignment& g = genes[m];
  if (!g.assigned()) return std::nullopt;
  const Assignment saved = g;
  const int shift = detail::uniform_int(rng, -2, 2);
  if (shift == 0) return std::nullopt;
  if (g.pickup >= 0) g.pickup += shift;
  if (g.delivery >= 0) g.delivery += shift;
  if (auto plan = build_plan(inst, genes)) return plan;
  g = saved;
  return std::nullopt;
}

}  // namespace

Plan ga_solve(const StaticInstance& instance, const GAParams& params, Rng& rng,
              std::vector<double>* best_trace, const GenerationObserver& observer) {
  params.validate();
  const auto owner = instance.preload_owner();
  const double scale = params.fitness_scale > 0.0 ? params.fitness_scale : default_scale(instance);
  const int requests = instance.request_count();

  std::vector<Individual> pop;
  for (int i = 0; i < params.population; ++i) {
    auto [genes, plan] = detail::random_solution(instance, owner, rng, params.placement_attempts);
    pop.push_back(Individual{std::move(genes), std::move(plan)});
  }
  auto best_of = [](const std::vector<Individual>& p) {
    return std::max_element(p.begin(), p.end(), [](const Individual& a, const Individual& b) {
      return a.plan.objective < b.plan.objective;
    });
  };
  Plan best = best_of(pop)->plan;
  if (best_trace) best_trace->clear();

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> weights(pop.size());
  for (int gen = 0; gen < params.generations; ++gen) {
    if (observer) {
      std::vector<Plan> plans;
      for (const Individual& ind : pop) plans.push_back(ind.plan);
      observer(gen, plans);
    }
    // Shift by the best objective so the exponentials stay finite.
    const double top = best_of(pop)->plan.objective;
    for (std::size_t i = 0; i < pop.size(); ++i)
      weights[i] = std::exp((pop[i].plan.objective - top) / scale);

    std::vector<Individual> next;
    next.push_back(*best_of(pop));
    while (static_cast<int>(next.size()) < params.population) {
      const Individual& a = pop[sample_index(weights, rng)];
      const Individual& b = pop[sample_index(weights, rng)];
      Individual child = a;
      if (requests > 0) {
        const int m = detail::uniform_int(rng, 0, requests - 1);
        if (child.genes[m] != b.genes[m]) {
          child.genes[m] = b.genes[m];
          if (auto plan = build_plan(instance, child.genes)) child.plan = std::move(*plan);
          else child = a;
        }
        if (unit(rng) < params.mutation_rate) {
          const int mm = detail::uniform_int(rng, 0, requests - 1);
          std::vector<Assignment> genes = child.genes;
          std::optional<Plan> plan;
          if (unit(rng) < 0.5) plan = perturb(instance, genes, mm, rng);
          else plan = detail::reinsert(instance, owner, genes, mm, rng, params.placement_attempts);
          if (plan) {
            child.genes = std::move(genes);
            child.plan = std::move(*plan);
          }
        }
      }
      next.push_back(std::move(child));
    }
    pop = std::move(next);
    const Plan& gen_best = best_of(pop)->plan;
    if (gen_best.objective > best.objective) best = gen_best;
    if (best_trace) best_trace->push_back(best.objective);
  }
  if (observer) {
    std::vector<Plan> plans;
    for (const Individual& ind : pop) plans.push_back(ind.plan);
    observer(params.generations, plans);
  }
  return best;
}

}  // namespace mvdp
