#include "otexplore/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "otexplore/errors.hpp"

namespace otx {

namespace {

double ground_cost(const Vec2& a, const Vec2& b, double p) {
  const double d = distance(a, b);
  return p == 1.0 ? d : std::pow(d, p);
}

}  // namespace

ExactSolution solve_transportation_exact_matrix(
    const std::vector<std::vector<double>>& cost,
    const std::vector<double>& supplies, const std::vector<double>& demands) {
  if (supplies.empty() || demands.empty())
    throw EmptyInput("solve_transportation_exact: empty point set");
  double total_mu = 0.0, total_nu = 0.0;
  for (double s : supplies) total_mu += s;
  for (double d : demands) total_nu += d;
  if (std::abs(total_mu - total_nu) > 1e-9)
    throw MassMismatch("solve_transportation_exact: marginal totals differ by " +
                       std::to_string(std::abs(total_mu - total_nu)));

  const std::size_t m = supplies.size();
  const std::size_t n = demands.size();
  std::vector<double> supply = supplies;
  std::vector<double> demand = demands;
  std::vector<std::vector<double>> flow(m, std::vector<double>(n, 0.0));

  // Successive shortest paths with node potentials (reduced-cost Dijkstra)
  // on the bipartite residual graph. Nodes: 0..m-1 sources, m..m+n-1 sinks.
  // Potentials keep residual costs nonnegative, so the search always
  // terminates; tiny negative reduced costs from rounding are clamped.
  const std::size_t nodes = m + n;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> pot(nodes, 0.0);

  const std::size_t max_iters = 50 * (m + n) + 1000;
  std::size_t iters = 0;
  for (;;) {
    double remaining = 0.0;
    for (double s : supply) remaining += s;
    if (remaining <= 1e-12) break;
    if (++iters > max_iters)
      throw InvalidPlan("solve_transportation_exact: augmentation did not converge");

    std::vector<double> dist(nodes, inf);
    std::vector<int> prev(nodes, -1);
    std::vector<char> done(nodes, 0);
    for (std::size_t i = 0; i < m; ++i)
      if (supply[i] > 1e-12) dist[i] = 0.0;

    for (;;) {
      int u = -1;
      double best = inf;
      for (std::size_t v = 0; v < nodes; ++v)
        if (!done[v] && dist[v] < best) {
          best = dist[v];
          u = static_cast<int>(v);
        }
      if (u < 0) break;
      done[u] = 1;
      if (static_cast<std::size_t>(u) < m) {
        for (std::size_t j = 0; j < n; ++j) {
          double rc = cost[u][j] + pot[u] - pot[m + j];
          if (rc < 0.0) rc = 0.0;
          if (dist[u] + rc < dist[m + j]) {
            dist[m + j] = dist[u] + rc;
            prev[m + j] = u;
          }
        }
      } else {
        const std::size_t j = static_cast<std::size_t>(u) - m;
        for (std::size_t i = 0; i < m; ++i) {
          if (flow[i][j] > 1e-12) {
            double rc = -cost[i][j] + pot[u] - pot[i];
            if (rc < 0.0) rc = 0.0;
            if (dist[u] + rc < dist[i]) {
              dist[i] = dist[u] + rc;
              prev[i] = u;
            }
          }
        }
      }
    }

    // Nearest sink with unmet demand.
    int target = -1;
    double best = inf;
    for (std::size_t j = 0; j < n; ++j) {
      if (demand[j] > 1e-12 && dist[m + j] < best) {
        best = dist[m + j];
        target = static_cast<int>(m + j);
      }
    }
    if (target < 0)
      throw MassMismatch("solve_transportation_exact: no augmenting path");

    for (std::size_t v = 0; v < nodes; ++v)
      pot[v] += std::min(dist[v], best);

    // Bottleneck along the path back to a source.
    double push = demand[target - static_cast<int>(m)];
    int node = target;
    while (prev[node] >= 0) {
      const int pr = prev[node];
      if (node >= static_cast<int>(m)) {
        // forward edge pr -> node: capacity unbounded
      } else {
        push = std::min(push, flow[node][pr - static_cast<int>(m)]);
      }
      node = pr;
    }
    push = std::min(push, supply[node]);

    node = target;
    while (prev[node] >= 0) {
      const int pr = prev[node];
      if (node >= static_cast<int>(m)) {
        flow[pr][node - static_cast<int>(m)] += push;
      } else {
        double& f = flow[node][pr - static_cast<int>(m)];
        f -= push;
        if (f < 1e-12) f = 0.0;
      }
      node = pr;
    }
    supply[node] -= push;
    if (supply[node] < 1e-12) supply[node] = 0.0;
    double& d = demand[target - static_cast<int>(m)];
    d -= push;
    if (d < 1e-12) d = 0.0;
  }

  ExactSolution sol;
  sol.plan.source_size = m;
  sol.plan.sink_size = n;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (flow[i][j] > kMassEps) {
        sol.plan.entries.push_back({i, j, flow[i][j]});
        sol.cost += flow[i][j] * cost[i][j];
      }
    }
  }
  return sol;
}

ExactSolution solve_transportation_exact(const WeightedPointSet& mu,
                                         const WeightedPointSet& nu, double p) {
  if (mu.size() == 0 || nu.size() == 0)
    throw EmptyInput("solve_transportation_exact: empty point set");
  std::vector<std::vector<double>> cost(mu.size(),
                                        std::vector<double>(nu.size()));
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < nu.size(); ++j)
      cost[i][j] = ground_cost(mu.points[i], nu.points[j], p);
  return solve_transportation_exact_matrix(cost, mu.masses, nu.masses);
}

GreedyDepositResult single_source_greedy_plan(const Vec2& source_pos,
                                              double source_mass,
                                              const WeightedPointSet& sinks) {
  if (source_mass < 0.0)
    throw InvalidMass("single_source_greedy_plan: negative source mass");
  for (double w : sinks.masses)
    if (w < 0.0) throw InvalidMass("single_source_greedy_plan: negative sink mass");

  GreedyDepositResult res;
  res.plan.source_size = 1;
  res.plan.sink_size = sinks.size();
  res.updated_sink_masses = sinks.masses;

  std::vector<double> dist(sinks.size());
  for (std::size_t j = 0; j < sinks.size(); ++j)
    dist[j] = distance(source_pos, sinks.points[j]);

  double remaining = source_mass;
  while (remaining > kMassEps) {
    std::size_t best = sinks.size();
    for (std::size_t j = 0; j < sinks.size(); ++j) {
      if (res.updated_sink_masses[j] > kMassEps &&
          (best == sinks.size() || dist[j] < dist[best]))
        best = j;
    }
    if (best == sinks.size()) {
      res.shortfall = true;
      break;
    }
    const double ship = std::min(remaining, res.updated_sink_masses[best]);
    res.plan.entries.push_back({0, best, ship});
    res.cost += ship * dist[best];
    res.updated_sink_masses[best] -= ship;
    if (res.updated_sink_masses[best] <= kMassEps)
      res.updated_sink_masses[best] = 0.0;
    remaining -= ship;
  }
  return res;
}

double plan_cost(const TransportPlan& plan, const WeightedPointSet& mu,
                 const WeightedPointSet& nu, double p) {
  double total = 0.0;
  for (const PlanEntry& e : plan.entries) {
    if (e.source >= mu.size() || e.sink >= nu.size())
      throw InvalidPlan("plan_cost: entry index out of range");
    total += e.mass * ground_cost(mu.points[e.source], nu.points[e.sink], p);
  }
  return total;
}

double upper_bound_single(const BoundLedger& ledger, const Vec2& current_pos,
                          const WeightedPointSet& remaining_sinks) {
  double residual = 0.0;
  for (std::size_t j = 0; j < remaining_sinks.size(); ++j)
    residual += remaining_sinks.masses[j] *
                distance(current_pos, remaining_sinks.points[j]);
  return ledger.accumulated_deposit_cost + residual;
}

double upper_bound_centralized(const std::vector<BoundLedger>& ledgers,
                               const std::vector<Vec2>& positions,
                               const WeightedPointSet& common_weights,
                               bool tighten_residual) {
  if (ledgers.empty() || positions.size() != ledgers.size())
    throw EmptyInput("upper_bound_centralized: empty or mismatched agent list");
  double total = 0.0;
  double residual = 0.0;
  for (std::size_t k = 0; k < ledgers.size(); ++k) {
    total += ledgers[k].accumulated_deposit_cost;
    for (std::size_t j = 0; j < common_weights.size(); ++j)
      residual += common_weights.masses[j] *
                  distance(positions[k], common_weights.points[j]);
  }
  if (tighten_residual) residual /= static_cast<double>(ledgers.size());
  return total + residual;
}

double upper_bound_decentralized(const std::vector<double>& neighbor_ledger_costs,
                                 const std::vector<Vec2>& neighbor_positions,
                                 const WeightedPointSet& agent_weights,
                                 bool tighten_residual) {
  double total = 0.0;
  double residual = 0.0;
  for (std::size_t k = 0; k < neighbor_ledger_costs.size(); ++k) {
    total += neighbor_ledger_costs[k];
    for (std::size_t j = 0; j < agent_weights.size(); ++j)
      residual += agent_weights.masses[j] *
                  distance(neighbor_positions[k], agent_weights.points[j]);
  }
  if (tighten_residual && !neighbor_ledger_costs.empty())
    residual /= static_cast<double>(neighbor_ledger_costs.size());
  return total + residual;
}

}  // namespace otx
