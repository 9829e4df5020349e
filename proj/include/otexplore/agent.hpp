#pragma once

#include <cstddef>
#include <vector>

#include "otexplore/point_set.hpp"
#include "otexplore/vec2.hpp"

namespace otx {

/// One agent's private state: position, weight view of the ensemble, bound
/// ledger, and trajectory history.
struct AgentView {
  std::size_t id = 0;
  Vec2 position;
  std::vector<double> weights;
  BoundLedger ledger;
  std::vector<Vec2> trajectory;
  std::size_t steps_taken = 0;
  bool shortfall = false;
  bool halted = false;

  /// Latest known accumulated deposit cost per agent, merged on exchange.
  /// known_ledger_costs[id] mirrors ledger.accumulated_deposit_cost.
  std::vector<double> known_ledger_costs;

  bool has_positive_weight() const {
    for (double w : weights)
      if (w > kMassEps) return true;
    return false;
  }
};

inline AgentView make_agent(std::size_t id, const Vec2& start,
                            std::vector<double> initial_weights,
                            std::size_t n_agents) {
  AgentView v;
  v.id = id;
  v.position = start;
  v.weights = std::move(initial_weights);
  v.trajectory.push_back(start);
  v.known_ledger_costs.assign(n_agents, 0.0);
  return v;
}

}  // namespace otx
