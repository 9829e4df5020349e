#pragma once

#include <cstddef>
#include <vector>

#include "otexplore/agent.hpp"
#include "otexplore/density.hpp"
#include "otexplore/motion.hpp"
#include "otexplore/transport.hpp"

namespace otx {

/// Receding-horizon planner parameters. The horizon is hard-capped at 6
/// because candidate enumeration is factorial in it.
struct PlannerParams {
  std::size_t horizon = 3;
  double r0 = 1.0;
  double delta = 1.0;
  std::size_t budget = 1;  // total robot points M

  double deposit_mass() const { return 1.0 / static_cast<double>(budget); }
  void validate() const;
};

inline constexpr std::size_t kMaxHorizon = 6;

/// Sample-point indices inside the final selection circle, nearest first.
struct Neighborhood {
  std::vector<std::size_t> indices;
  double radius = 0.0;
};

/// One visit order over the neighborhood with its weighted-distance cost.
struct CandidatePath {
  std::vector<std::size_t> indices;
  double cost = 0.0;
};

/// Grows the circle radius from r0 by delta until it holds min(horizon, P)
/// positive-weight points, P being how many remain; returns the nearest
/// min(horizon, P) of them. Throws Exhausted when no positive weight exists.
Neighborhood find_neighborhood(const Vec2& pos, const SampleEnsemble& ens,
                               const PlannerParams& params);

/// All k! visit orders of the neighborhood. Cost of an order: distance of
/// each leg divided by the destination weight.
std::vector<CandidatePath> enumerate_candidates(const Vec2& pos,
                                                const Neighborhood& nbhd,
                                                const SampleEnsemble& ens);

/// First point of the minimum-cost candidate; ties go to the
/// lexicographically smallest index sequence.
Vec2 select_goal(const std::vector<CandidatePath>& candidates,
                 const SampleEnsemble& ens);
std::size_t select_goal_index(const std::vector<CandidatePath>& candidates);

struct DepositResult {
  double deposit_cost = 0.0;  // the per-step optimal cost W~
  TransportPlan plan;
  bool shortfall = false;
};

/// Deposits deposit_mass at the arrived position into the nearest remaining
/// weights (the analytic single-row transport solution) and applies the
/// weight update in place.
DepositResult deposit_weight(const Vec2& arrived_pos, SampleEnsemble& ens,
                             double deposit_mass);

/// One full planning step: neighborhood, candidate enumeration, goal
/// selection, motion, deposit. Appends the deposit cost to the agent's
/// ledger and advances its trajectory. Returns the selected goal's sample
/// index.
///
/// claimed_goals, when given, marks points already chosen as goals by peer
/// agents this round; they are skipped during goal selection (but remain
/// valid deposit sinks) unless nothing else is left.
std::size_t plan_step(AgentView& agent, SampleEnsemble& ens,
                      const PlannerParams& params,
                      const MotionContract& motion,
                      const std::vector<char>* claimed_goals = nullptr);

}  // namespace otx
