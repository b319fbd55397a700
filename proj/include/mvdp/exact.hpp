#pragma once

#include "mvdp/static_instance.hpp"

namespace mvdp {

struct ExactLimits {
  int max_stations = 4;
  int max_vehicles = 2;
  int max_requests = 3;
  int max_window = 8;
};

/// Optimal plan by depth-first search over per-slice joint actions with
/// memoization and an optimistic bound (value of undelivered requests).
/// Follows the simulator's slice dynamics exactly. Throws TooLarge when the
/// instance exceeds `limits`.
Plan exact_solve(const StaticInstance& instance, const ExactLimits& limits = {});

}  // namespace mvdp
