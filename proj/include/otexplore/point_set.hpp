#pragma once

#include <cstddef>
#include <vector>

#include "otexplore/vec2.hpp"

namespace otx {

/// Weight below this threshold counts as depleted and is clamped to zero.
inline constexpr double kMassEps = 1e-12;

/// A set of planar points with nonnegative masses. Represents both the
/// robot-point history and the sample ensemble.
struct WeightedPointSet {
  std::vector<Vec2> points;
  std::vector<double> masses;

  std::size_t size() const { return points.size(); }
  double total_mass() const {
    double s = 0.0;
    for (double m : masses) s += m;
    return s;
  }
};

struct PlanEntry {
  std::size_t source = 0;
  std::size_t sink = 0;
  double mass = 0.0;
};

/// Sparse mass shipments between two weighted point sets. Zero entries are
/// omitted.
struct TransportPlan {
  std::vector<PlanEntry> entries;
  std::size_t source_size = 0;
  std::size_t sink_size = 0;
};

/// Running sum of per-step optimal deposit costs. Enables O(N) upper-bound
/// evaluation per step.
struct BoundLedger {
  double accumulated_deposit_cost = 0.0;
  std::size_t step_count = 0;

  void append(double deposit_cost) {
    accumulated_deposit_cost += deposit_cost;
    ++step_count;
  }
};

}  // namespace otx
