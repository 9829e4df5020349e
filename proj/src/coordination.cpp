#include "otexplore/coordination.hpp"

#include <algorithm>
#include <cstdint>

#include "otexplore/errors.hpp"

namespace otx {

std::vector<double> fuse_common_weights(const std::vector<AgentView>& views) {
  if (views.empty()) throw InvalidViews("fuse_common_weights: no views");
  std::vector<double> common = views.front().weights;
  for (const AgentView& v : views) {
    if (v.weights.size() != common.size())
      throw InvalidViews("fuse_common_weights: ensemble dimension mismatch");
    for (std::size_t j = 0; j < common.size(); ++j)
      common[j] = std::min(common[j], v.weights[j]);
  }
  return common;
}

void broadcast_common(std::vector<AgentView>& views,
                      const std::vector<double>& common) {
  for (AgentView& v : views) v.weights = common;
}

std::vector<std::pair<std::size_t, std::size_t>> comm_pairs(
    const std::vector<AgentView>& views, double r_comm) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t k = 0; k + 1 < views.size(); ++k)
    for (std::size_t q = k + 1; q < views.size(); ++q)
      if (distance(views[k].position, views[q].position) <= r_comm)
        pairs.emplace_back(k, q);
  return pairs;
}

void pairwise_exchange(AgentView& a, AgentView& b) {
  if (a.weights.size() != b.weights.size())
    throw InvalidViews("pairwise_exchange: ensemble dimension mismatch");
  for (std::size_t j = 0; j < a.weights.size(); ++j) {
    const double w = std::min(a.weights[j], b.weights[j]);
    a.weights[j] = w;
    b.weights[j] = w;
  }
  // Ledgers are monotone, so the larger known total is the newer one.
  const std::size_t n =
      std::min(a.known_ledger_costs.size(), b.known_ledger_costs.size());
  for (std::size_t k = 0; k < n; ++k) {
    const double c = std::max(a.known_ledger_costs[k], b.known_ledger_costs[k]);
    a.known_ledger_costs[k] = c;
    b.known_ledger_costs[k] = c;
  }
}

namespace {

/// Runs plan_step on the agent's private weight view against the shared
/// sample positions, moving the point buffer in and out to avoid copies.
std::size_t plan_on_private_view(AgentView& agent, SampleEnsemble& shared,
                                 const PlannerParams& params,
                                 const MotionContract& motion,
                                 const std::vector<char>* claimed = nullptr) {
  SampleEnsemble view;
  view.points = std::move(shared.points);
  view.weights = std::move(agent.weights);
  view.epoch = shared.epoch;
  const std::size_t goal = plan_step(agent, view, params, motion, claimed);
  shared.points = std::move(view.points);
  agent.weights = std::move(view.weights);
  return goal;
}

}  // namespace

void centralized_round(std::vector<AgentView>& views, SampleEnsemble& ens_common,
                       const PlannerParams& params,
                       const MotionContract& motion) {
  if (views.empty()) throw InvalidViews("centralized_round: no views");
  if (!ens_common.any_positive())
    throw Exhausted("centralized_round: common weights depleted");

  // Each agent starts the round holding the broadcast snapshot and deposits
  // into its own copy. Goals picked earlier in the round are claimed so two
  // agents never converge on the same point and lock step.
  std::vector<char> claimed(ens_common.size(), 0);
  for (AgentView& agent : views)
    claimed[plan_on_private_view(agent, ens_common, params, motion,
                                 &claimed)] = 1;

  const std::vector<double> common = fuse_common_weights(views);
  broadcast_common(views, common);
  ens_common.weights = common;
  ++ens_common.epoch;
}

bool decentralized_round(std::vector<AgentView>& views,
                         SampleEnsemble& ens_points,
                         const PlannerParams& params,
                         const MotionContract& motion, double r_comm) {
  for (const auto& [k, q] : comm_pairs(views, r_comm))
    pairwise_exchange(views[k], views[q]);

  bool any_moved = false;
  std::vector<std::size_t> round_goals(views.size(), SIZE_MAX);
  for (std::size_t k = 0; k < views.size(); ++k) {
    AgentView& agent = views[k];
    if (agent.halted) continue;
    if (!agent.has_positive_weight() || agent.steps_taken >= params.budget) {
      agent.halted = true;
      continue;
    }
    // Within communication range the goals picked earlier this round are
    // known, so they are avoided just like in the centralized scheme.
    std::vector<char> claimed(ens_points.size(), 0);
    bool any_claim = false;
    for (std::size_t q = 0; q < k; ++q) {
      if (round_goals[q] != SIZE_MAX &&
          distance(agent.position, views[q].position) <= r_comm) {
        claimed[round_goals[q]] = 1;
        any_claim = true;
      }
    }
    round_goals[k] = plan_on_private_view(agent, ens_points, params, motion,
                                          any_claim ? &claimed : nullptr);
    any_moved = true;
    if (!agent.has_positive_weight() || agent.steps_taken >= params.budget)
      agent.halted = true;
  }
  ++ens_points.epoch;
  return any_moved;
}

}  // namespace otx
