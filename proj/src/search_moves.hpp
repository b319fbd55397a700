#pragma once

#include <optional>
#include <random>
#include <vector>

#include "mvdp/sampling.hpp"
#include "mvdp/static_instance.hpp"

namespace mvdp::detail {

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Assignment removed_gene(const std::vector<int>& owner, int m) {
  return owner[m] >= 0 ? Assignment{owner[m], -1, -1} : Assignment{};
}

/// Draws a random placement for request m. The vehicle is uniform over the
/// fleet plus one "unassigned" choice (no delivery slot, for preloads), so a
/// request can also leave the plan. Returns nullopt for a draw that leaves
/// no room for the trip.
inline std::optional<Assignment> random_gene(const StaticInstance& inst, const std::vector<int>& owner,
                                             int m, Rng& rng) {
  const StaticRequest& r = inst.requests[m];
  const int horizon = inst.window;
  if (owner[m] >= 0) {
    const StaticVehicle& v = inst.vehicles[owner[m]];
    const int lo = v.join_time + (r.to == v.start ? 0 : inst.graph(v.start, r.to) + 1);
    if (lo > horizon) return removed_gene(owner, m);
    const int q = uniform_int(rng, lo, horizon + 1);
    return Assignment{owner[m], -1, q > horizon ? -1 : q};
  }
  const int k = uniform_int(rng, 0, inst.vehicle_count());
  if (k == inst.vehicle_count() || r.appear > horizon - 1) return Assignment{};
  const int leg = inst.graph(r.from, r.to) + 1;
  const int p = uniform_int(rng, r.appear, horizon - 1);
  if (p + leg > horizon) return std::nullopt;
  return Assignment{k, p, uniform_int(rng, p + leg, horizon)};
}

/// Removes request m and tries up to `attempts` random placements. On
/// success genes[m] holds the new placement and the plan is returned; on
/// failure m stays removed and nullopt is returned. The removed state itself
/// can be infeasible: an earlier stop at a preload's destination may have
/// been what freed the capacity.
inline std::optional<Plan> reinsert(const StaticInstance& inst, const std::vector<int>& owner,
                                    std::vector<Assignment>& genes, int m, Rng& rng, int attempts) {
  const Assignment removed = removed_gene(owner, m);
  for (int a = 0; a < attempts; ++a) {
    auto gene = random_gene(inst, owner, m, rng);
    if (!gene) continue;
    genes[m] = *gene;
    if (auto plan = build_plan(inst, genes)) return plan;
  }
  genes[m] = removed;
  return std::nullopt;
}

/// Random feasible starting point: requests in random order, each placed
/// if a feasible slot turns up.
inline std::pair<std::vector<Assignment>, Plan> random_solution(const StaticInstance& inst,
                                                                const std::vector<int>& owner,
                                                                Rng& rng, int attempts) {
  std::vector<Assignment> genes = empty_assignment(inst);
  std::vector<int> order(genes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::shuffle(order.begin(), order.end(), rng);
  for (int m : order) reinsert(inst, owner, genes, m, rng, attempts);
  return {genes, *build_plan(inst, genes)};
}

}  // namespace mvdp::detail
