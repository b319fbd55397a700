#pragma once

#include "mvdp/domain.hpp"

namespace mvdp {

/// Greedy baseline. Requests go to the lowest-index co-located vehicle with
/// room; each free vehicle heads to the closest station holding one of its
/// deliveries or a pickup it has room for. Deliveries win distance ties, then
/// the lower station index. Without a target the vehicle stays.
JointAction nearest_act(const WorldState& state);

}  // namespace mvdp
