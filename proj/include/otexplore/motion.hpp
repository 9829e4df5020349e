#pragma once

#include <functional>

#include "otexplore/vec2.hpp"

namespace otx {

struct FirstOrderParams {
  double u_max = 1.0;
  double dt = 1.0;
};

/// Pluggable low-level motion layer: maps (current position, goal) to the
/// next position. Implementations must return finite positions.
using MotionContract = std::function<Vec2(const Vec2&, const Vec2&)>;

/// Single-integrator step at maximum speed toward the goal; arrives exactly
/// when the goal is within u_max·dt, so near goals do not oscillate.
Vec2 first_order_step(const Vec2& current, const Vec2& goal,
                      const FirstOrderParams& params);

MotionContract make_first_order(const FirstOrderParams& params);

}  // namespace otx
