#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "otexplore/agent.hpp"
#include "otexplore/density.hpp"
#include "otexplore/motion.hpp"
#include "otexplore/planner.hpp"

namespace otx {

struct CommConfig {
  double r_comm = 0.0;
  std::size_t n_agents = 1;
  std::size_t effective_steps = 1;  // t_e; M = n_agents * t_e centralized
};

/// Componentwise minimum of all agents' weight vectors (the supervisory
/// fusion rule).
std::vector<double> fuse_common_weights(const std::vector<AgentView>& views);

/// Replaces every agent's weight view with the fused common vector.
void broadcast_common(std::vector<AgentView>& views,
                      const std::vector<double>& common);

/// All unordered agent pairs within communication range, lexicographic
/// order; the range boundary is inclusive.
std::vector<std::pair<std::size_t, std::size_t>> comm_pairs(
    const std::vector<AgentView>& views, double r_comm);

/// Range-limited exchange: both weight vectors become the componentwise
/// minimum, and both agents merge their known ledger histories.
void pairwise_exchange(AgentView& a, AgentView& b);

/// One centralized round: every active agent plans against the round-start
/// common snapshot and deposits into its private copy, then the supervisor
/// fuses and broadcasts. Throws Exhausted when the common weights are all
/// depleted at round start.
void centralized_round(std::vector<AgentView>& views, SampleEnsemble& ens_common,
                       const PlannerParams& params, const MotionContract& motion);

/// One decentralized round: in-range pairs exchange first, then each
/// non-halted agent runs the single-agent pipeline on its private view.
/// Agents halt once their view is depleted or their budget is spent.
/// Returns whether any agent moved this round.
bool decentralized_round(std::vector<AgentView>& views,
                         SampleEnsemble& ens_points,
                         const PlannerParams& params,
                         const MotionContract& motion, double r_comm);

inline bool all_halted(const std::vector<AgentView>& views) {
  for (const AgentView& v : views)
    if (!v.halted) return false;
  return true;
}

}  // namespace otx
