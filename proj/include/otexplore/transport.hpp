#pragma once

#include <vector>

#include "otexplore/point_set.hpp"

namespace otx {

struct ExactSolution {
  TransportPlan plan;
  double cost = 0.0;
};

/// Solves the balanced discrete transportation problem exactly with ground
/// cost ||x_i - y_j||^p. Uses successive shortest augmenting paths on the
/// bipartite residual graph.
ExactSolution solve_transportation_exact(const WeightedPointSet& mu,
                                         const WeightedPointSet& nu,
                                         double p = 1.0);

/// Same solver on an explicit nonnegative cost matrix (cost[i][j], row per
/// source). Totals must balance within 1e-9.
ExactSolution solve_transportation_exact_matrix(
    const std::vector<std::vector<double>>& cost,
    const std::vector<double>& supplies, const std::vector<double>& demands);

struct GreedyDepositResult {
  TransportPlan plan;
  double cost = 0.0;
  std::vector<double> updated_sink_masses;
  /// Set when the sinks could not absorb the full source mass; everything
  /// available was shipped.
  bool shortfall = false;
};

/// Analytic single-source plan: repeatedly ships the maximum permissible
/// mass to the nearest positive-mass sink until the source is exhausted.
/// Equidistant sinks resolve to the lowest index.
GreedyDepositResult single_source_greedy_plan(const Vec2& source_pos,
                                              double source_mass,
                                              const WeightedPointSet& sinks);

/// Cost of an explicit plan between two point sets, Σ mass·||x_i - y_j||^p.
double plan_cost(const TransportPlan& plan, const WeightedPointSet& mu,
                 const WeightedPointSet& nu, double p = 1.0);

/// Single-agent Wasserstein upper bound: accumulated deposit costs plus the
/// residual term Σ_j n_t(y_j)·||x_t - y_j||.
double upper_bound_single(const BoundLedger& ledger, const Vec2& current_pos,
                          const WeightedPointSet& remaining_sinks);

/// Centralized multi-agent upper bound over the fused common weights. When
/// tighten_residual is set the residual term is divided by the agent count;
/// the default reproduces the looser printed form.
double upper_bound_centralized(const std::vector<BoundLedger>& ledgers,
                               const std::vector<Vec2>& positions,
                               const WeightedPointSet& common_weights,
                               bool tighten_residual = false);

/// Decentralized per-agent upper bound over the neighbor set (which includes
/// the querying agent). neighbor_ledger_costs are the accumulated deposit
/// totals known for each neighbor; the residual uses the querying agent's
/// own weight view.
double upper_bound_decentralized(const std::vector<double>& neighbor_ledger_costs,
                                 const std::vector<Vec2>& neighbor_positions,
                                 const WeightedPointSet& agent_weights,
                                 bool tighten_residual = false);

}  // namespace otx
