#include "otexplore/motion.hpp"

#include "otexplore/errors.hpp"

namespace otx {

Vec2 first_order_step(const Vec2& current, const Vec2& goal,
                      const FirstOrderParams& params) {
  if (!(params.u_max > 0.0) || !(params.dt > 0.0))
    throw InvalidMass("first_order_step: u_max and dt must be positive");
  const Vec2 delta = goal - current;
  const double dist = delta.norm();
  const double reach = params.u_max * params.dt;
  if (dist <= reach) return goal;
  return current + delta * (reach / dist);
}

MotionContract make_first_order(const FirstOrderParams& params) {
  return [params](const Vec2& current, const Vec2& goal) {
    return first_order_step(current, goal, params);
  };
}

}  // namespace otx
