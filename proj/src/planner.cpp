#include "otexplore/planner.hpp"

#include <algorithm>
#include <cmath>

#include "otexplore/errors.hpp"

namespace otx {

void PlannerParams::validate() const {
  if (horizon < 1 || horizon > kMaxHorizon)
    throw InvalidNeighborhood("horizon must be in [1, 6]");
  if (!(r0 > 0.0) || !(delta > 0.0))
    throw InvalidNeighborhood("r0 and delta must be positive");
  if (budget < 1) throw InvalidMass("budget M must be at least 1");
}

Neighborhood find_neighborhood(const Vec2& pos, const SampleEnsemble& ens,
                               const PlannerParams& params) {
  params.validate();
  std::vector<std::pair<double, std::size_t>> dists;
  dists.reserve(ens.size());
  for (std::size_t j = 0; j < ens.size(); ++j)
    if (ens.weights[j] > kMassEps)
      dists.emplace_back(distance(pos, ens.points[j]), j);
  if (dists.empty())
    throw Exhausted("find_neighborhood: no positive-weight sample points");

  const std::size_t k = std::min<std::size_t>(params.horizon, dists.size());
  std::sort(dists.begin(), dists.end());
  const double needed = dists[k - 1].first;

  // Smallest radius in the r0, r0+delta, ... schedule covering the k-th
  // nearest point.
  double r = params.r0;
  if (needed > r) {
    const double steps = std::ceil((needed - params.r0) / params.delta);
    r = params.r0 + steps * params.delta;
  }

  Neighborhood nbhd;
  nbhd.radius = r;
  nbhd.indices.reserve(k);
  for (std::size_t i = 0; i < k; ++i) nbhd.indices.push_back(dists[i].second);
  return nbhd;
}

std::vector<CandidatePath> enumerate_candidates(const Vec2& pos,
                                                const Neighborhood& nbhd,
                                                const SampleEnsemble& ens) {
  if (nbhd.indices.empty())
    throw InvalidNeighborhood("enumerate_candidates: empty neighborhood");
  for (std::size_t j : nbhd.indices)
    if (ens.weights[j] <= kMassEps)
      throw InvalidNeighborhood("enumerate_candidates: zero-weight point");

  std::vector<std::size_t> order = nbhd.indices;
  std::sort(order.begin(), order.end());

  std::vector<CandidatePath> candidates;
  do {
    CandidatePath path;
    path.indices = order;
    Vec2 prev = pos;
    for (std::size_t j : order) {
      path.cost += distance(prev, ens.points[j]) / ens.weights[j];
      prev = ens.points[j];
    }
    candidates.push_back(std::move(path));
  } while (std::next_permutation(order.begin(), order.end()));
  return candidates;
}

std::size_t select_goal_index(const std::vector<CandidatePath>& candidates) {
  if (candidates.empty())
    throw InvalidNeighborhood("select_goal: no candidates");
  const CandidatePath* best = &candidates.front();
  for (const CandidatePath& c : candidates) {
    if (c.cost < best->cost ||
        (c.cost == best->cost && c.indices < best->indices))
      best = &c;
  }
  return best->indices.front();
}

Vec2 select_goal(const std::vector<CandidatePath>& candidates,
                 const SampleEnsemble& ens) {
  return ens.points[select_goal_index(candidates)];
}

DepositResult deposit_weight(const Vec2& arrived_pos, SampleEnsemble& ens,
                             double deposit_mass) {
  if (!(deposit_mass > 0.0))
    throw InvalidMass("deposit_weight: deposit mass must be positive");
  WeightedPointSet sinks{ens.points, ens.weights};
  GreedyDepositResult greedy =
      single_source_greedy_plan(arrived_pos, deposit_mass, sinks);
  ens.weights = std::move(greedy.updated_sink_masses);
  DepositResult res;
  res.deposit_cost = greedy.cost;
  res.plan = std::move(greedy.plan);
  res.shortfall = greedy.shortfall;
  return res;
}

std::size_t plan_step(AgentView& agent, SampleEnsemble& ens,
                      const PlannerParams& params,
                      const MotionContract& motion,
                      const std::vector<char>* claimed_goals) {
  // Goal selection runs on a view with claimed points masked out, so peers
  // that already picked a goal this round are not chased to the same spot.
  // Deposits below still see the unmasked weights.
  const SampleEnsemble* goal_view = &ens;
  SampleEnsemble masked;
  if (claimed_goals) {
    masked.points = ens.points;
    masked.weights = ens.weights;
    for (std::size_t j = 0; j < masked.weights.size(); ++j)
      if ((*claimed_goals)[j]) masked.weights[j] = 0.0;
    if (masked.any_positive()) goal_view = &masked;
  }
  Neighborhood nbhd = find_neighborhood(agent.position, *goal_view, params);
  const std::vector<CandidatePath> candidates =
      enumerate_candidates(agent.position, nbhd, *goal_view);
  const std::size_t goal_index = select_goal_index(candidates);
  const Vec2 goal = ens.points[goal_index];
  const Vec2 arrived = motion(agent.position, goal);
  const DepositResult dep = deposit_weight(arrived, ens, params.deposit_mass());

  agent.position = arrived;
  agent.trajectory.push_back(arrived);
  agent.ledger.append(dep.deposit_cost);
  ++agent.steps_taken;
  if (dep.shortfall) agent.shortfall = true;
  if (agent.id < agent.known_ledger_costs.size())
    agent.known_ledger_costs[agent.id] = agent.ledger.accumulated_deposit_cost;
  return goal_index;
}

}  // namespace otx
