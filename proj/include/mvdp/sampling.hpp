#pragma once

#include <random>
#include <span>

namespace mvdp {

using Rng = std::mt19937_64;

/// Draws an index with probability proportional to `weights`. Entries with
/// zero weight are never returned. Returns -1 if the total mass is zero.
inline int sample_index(std::span<const double> weights, Rng& rng) {
  double total = 0.0;
  int last_positive = -1;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0) {
      total += weights[i];
      last_positive = static_cast<int>(i);
    }
  }
  if (last_positive < 0) return -1;
  double u = std::uniform_real_distribution<double>(0.0, total)(rng);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    if (u < weights[i]) return static_cast<int>(i);
    u -= weights[i];
  }
  return last_positive;
}

}  // namespace mvdp
