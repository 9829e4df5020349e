// End-to-end acceptance checks. Each check prints a single [PASS]/[FAIL]
// line; the process exits nonzero if any check fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "otexplore/config_io.hpp"
#include "otexplore/coordination.hpp"
#include "otexplore/sim.hpp"
#include "otexplore/transport.hpp"
#include "oracles.hpp"

using namespace otx;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int g_failures = 0;

void report(int index, const std::string& name, bool ok, double secs,
            const std::string& detail = "") {
  std::printf("[%s] %d %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", index,
              name.c_str(), secs, detail.empty() ? "" : " ",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

// Exact optimum of the capacitated single-source deposit problem, posed as a
// balanced transportation instance with a zero-cost slack source absorbing
// the surplus sink capacity.
double single_row_lp_cost(const Vec2& source_pos, double source_mass,
                          const WeightedPointSet& sinks) {
  std::vector<std::vector<double>> cost(2,
                                        std::vector<double>(sinks.size(), 0.0));
  for (std::size_t j = 0; j < sinks.size(); ++j)
    cost[0][j] = distance(source_pos, sinks.points[j]);
  const double total = sinks.total_mass();
  const auto sol = solve_transportation_exact_matrix(
      cost, {source_mass, total - source_mass}, sinks.masses);
  double c = 0.0;
  for (const PlanEntry& e : sol.plan.entries)
    if (e.source == 0) c += e.mass * cost[0][e.sink];
  return c;
}

// Survey-scale four-component scenario used by several checks.
ScenarioConfig survey_config() {
  ScenarioConfig cfg;
  cfg.mode = Mode::Centralized;
  cfg.domain = {0, 1800, 0, 1600};
  cfg.mixture.components = {
      {0.25, {300, 1200}, {8000, 0, 0, 4800}},
      {0.25, {1000, 900}, {3200, 0, 0, 4800}},
      {0.25, {700, 300}, {6000, 0, 0, 4800}},
      {0.25, {1500, 1000}, {1500, 0, 0, 5000}},
  };
  cfg.num_samples = 2000;
  cfg.num_robot_points = 5000;
  cfg.num_agents = 5;
  cfg.effective_steps = 1000;
  cfg.initial_positions = {
      {1000, 1200}, {1600, 800}, {1400, 1300}, {300, 800}, {600, 1200}};
  cfg.u_max = 100.0;
  cfg.snapshot_every = 1000;
  return cfg;
}

ScenarioConfig two_agent_relay_config() {
  ScenarioConfig cfg;
  cfg.mode = Mode::Decentralized;
  cfg.domain = {0, 1500, 0, 1200};
  cfg.mixture.components = {
      {1.0 / 3.0, {300, 700}, {8000, 0, 0, 4800}},
      {1.0 / 3.0, {1200, 900}, {3200, 0, 0, 4800}},
      {1.0 / 3.0, {700, 250}, {6000, 0, 0, 4800}},
  };
  cfg.num_samples = 1200;
  cfg.num_robot_points = 2000;
  cfg.num_agents = 2;
  cfg.initial_positions = {{1000, 200}, {400, 1000}};
  cfg.u_max = 100.0;
  cfg.r_comm = 100.0;
  cfg.snapshot_every = 2000;
  return cfg;
}

ScenarioConfig bimodal_tracking_config(double v, bool time_varying) {
  ScenarioConfig cfg;
  cfg.mode = Mode::Centralized;
  cfg.domain = {-1000, 1000, -1000, 1000};
  cfg.mixture.components = {
      {0.5, {600, 600}, {40, 0, 0, 24}},
      {0.5, {-50, 0}, {320, 0, 0, 480}},
  };
  cfg.num_samples = 1000;
  cfg.num_robot_points = 2000;
  cfg.num_agents = 2;
  cfg.effective_steps = 1000;
  cfg.initial_positions = {{0, 100}, {100, -50}};
  cfg.u_max = 100.0;
  cfg.num_targets = 500;
  cfg.r_sensing = 15.0;
  cfg.diffusion_rate = v;
  cfg.time_varying = time_varying;
  cfg.snapshot_every = 1000;
  return cfg;
}

ScenarioConfig desk_single(std::uint64_t seed) {
  ScenarioConfig cfg;
  cfg.mode = Mode::Single;
  cfg.domain = {0, 100, 0, 100};
  cfg.mixture.components = {
      {0.5, {30, 30}, {200, 0, 0, 150}},
      {0.5, {70, 65}, {120, 0, 0, 220}},
  };
  cfg.num_samples = 30;
  cfg.num_robot_points = 20;
  cfg.u_max = 10.0;
  cfg.seed = seed;
  cfg.snapshot_every = 1;
  return cfg;
}

void check_greedy_matches_lp() {
  const auto start = Clock::now();
  Rng rng(1001);
  bool ok = true;
  std::string detail;
  for (int rep = 0; rep < 200 && ok; ++rep) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0.0, 20.0));
    WeightedPointSet sinks;
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      sinks.points.push_back({rng.uniform(-100, 100), rng.uniform(-100, 100)});
      sinks.masses.push_back(rng.uniform(0.001, 1.0));
      total += sinks.masses.back();
    }
    const Vec2 src{rng.uniform(-100, 100), rng.uniform(-100, 100)};
    const double mass = rng.uniform(0.0, 1.0) * total;

    const auto greedy = single_source_greedy_plan(src, mass, sinks);
    const double lp = single_row_lp_cost(src, mass, sinks);
    if (std::abs(greedy.cost - lp) > 1e-9) {
      ok = false;
      detail = "greedy " + std::to_string(greedy.cost) + " vs lp " +
               std::to_string(lp);
    }
  }
  const double secs = seconds_since(start);
  report(1, "single-source greedy cost equals the exact transport LP",
         ok && secs < 10.0, secs, detail);
}

struct SingleRunAudit {
  bool bound_ok = true;
  bool conservation_ok = true;
};

SingleRunAudit audit_single_runs() {
  SingleRunAudit audit;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const ScenarioConfig cfg = desk_single(seed);
    const RunResult result = run_scenario(cfg);

    Rng sample_rng = make_stream(cfg.seed, "samples");
    const SampleEnsemble initial =
        sample_mixture(cfg.mixture, cfg.num_samples, sample_rng);
    WeightedPointSet reference{initial.points, initial.weights};

    const std::vector<Vec2>& traj = result.trajectories[0];
    for (const SnapshotRecord& rec : result.snapshots) {
      const std::size_t t = rec.steps_taken[0];
      const WeightedPointSet robot =
          oracle::stacked_robot_measure(traj, t, cfg.num_robot_points);
      if (robot.total_mass() > 1e-9) {
        const double exact =
            solve_transportation_exact(robot, reference).cost;
        if (exact > rec.wub[0] + 1e-9) audit.bound_ok = false;
      }
      if (!rec.shortfall[0]) {
        double total = 0.0;
        for (double w : rec.weights[0]) total += w;
        const double want =
            1.0 - static_cast<double>(t) /
                      static_cast<double>(cfg.num_robot_points);
        if (std::abs(total - want) > 1e-9) audit.conservation_ok = false;
      }
    }
  }
  return audit;
}

void check_bound_and_conservation() {
  const auto start = Clock::now();
  const SingleRunAudit audit = audit_single_runs();
  const double secs = seconds_since(start);
  report(2, "exact Wasserstein never exceeds the logged upper bound",
         audit.bound_ok && secs < 60.0, secs);
  report(3, "remaining weight equals 1 - t/M at every pre-shortfall step",
         audit.conservation_ok, 0.0);
}

void check_centralized_decay() {
  const auto desk_start = Clock::now();
  ScenarioConfig desk = survey_config();
  desk.effective_steps = 200;
  desk.num_samples = 400;
  desk.num_robot_points = desk.num_agents * desk.effective_steps;
  desk.seed = 2001;
  const RunResult desk_run = run_scenario(desk);
  const double desk_secs = seconds_since(desk_start);
  const bool desk_ok =
      desk_run.metrics.final_wub <= 0.02 * desk_run.metrics.initial_wub &&
      desk_secs < 30.0;

  ScenarioConfig full = survey_config();
  full.seed = 2002;
  const RunResult full_run = run_scenario(full);
  const bool full_ok =
      full_run.metrics.final_wub <= 0.01 * full_run.metrics.initial_wub;

  char detail[128];
  std::snprintf(detail, sizeof(detail), "decay %.3g -> %.3g (desk %.3g -> %.3g)",
                full_run.metrics.initial_wub, full_run.metrics.final_wub,
                desk_run.metrics.initial_wub, desk_run.metrics.final_wub);
  report(4, "centralized upper bound decays below 1% of its initial value",
         desk_ok && full_ok, seconds_since(desk_start), detail);
}

void check_detection_rate() {
  const auto start = Clock::now();
  std::vector<double> rates;
  for (std::uint64_t seed = 11; seed <= 20; ++seed) {
    ScenarioConfig cfg = survey_config();
    cfg.num_targets = 300;
    cfg.r_sensing = 15.0;
    cfg.seed = seed;
    const RunResult result = run_scenario(cfg);
    rates.push_back(result.metrics.detection_rate.value_or(0.0));
  }
  std::sort(rates.begin(), rates.end());
  const double mean =
      std::accumulate(rates.begin(), rates.end(), 0.0) / rates.size();
  const double median = (rates[4] + rates[5]) / 2.0;
  const double secs = seconds_since(start);
  char detail[96];
  std::snprintf(detail, sizeof(detail), "mean %.4f median %.4f", mean, median);
  report(5, "survey detection rate over 10 seeds",
         mean >= 0.80 && median >= 0.80 && median <= 0.97 && secs < 600.0,
         secs, detail);
}

void check_decentralized_termination() {
  const auto start = Clock::now();
  std::size_t t_min = SIZE_MAX, t_max = 0;
  double worst_ratio = 0.0;
  std::uint64_t worst_seed = 0;
  for (std::uint64_t seed = 21; seed <= 30; ++seed) {
    ScenarioConfig cfg = two_agent_relay_config();
    cfg.seed = seed;
    const RunResult result = run_scenario(cfg);
    t_min = std::min(t_min, result.metrics.termination_step);
    t_max = std::max(t_max, result.metrics.termination_step);
    const double ratio = result.metrics.final_wub / result.metrics.initial_wub;
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      worst_seed = seed;
    }
  }
  const bool ok = t_min >= 1000 && t_max <= 2000 && worst_ratio <= 0.01;
  char detail[96];
  std::snprintf(detail, sizeof(detail),
                "T in [%zu, %zu], worst decay %.2f%% (seed %llu)", t_min, t_max,
                100.0 * worst_ratio, static_cast<unsigned long long>(worst_seed));
  report(6, "decentralized runs finish within [1000, 2000] rounds and decay",
         ok, seconds_since(start), detail);
}

void check_full_range_consistency() {
  const auto start = Clock::now();
  bool ok = true;

  ScenarioConfig base = desk_single(3001);
  base.num_samples = 60;
  base.num_robot_points = 40;

  Rng sample_rng = make_stream(base.seed, "samples");
  const SampleEnsemble initial =
      sample_mixture(base.mixture, base.num_samples, sample_rng);
  const std::vector<Vec2> starts{{10, 10}, {90, 85}};

  SampleEnsemble cens = initial;
  SampleEnsemble dens = initial;
  std::vector<AgentView> cviews, dviews;
  for (std::size_t k = 0; k < 2; ++k) {
    cviews.push_back(make_agent(k, starts[k], cens.weights, 2));
    dviews.push_back(make_agent(k, starts[k], dens.weights, 2));
  }
  base.apply_defaults();
  const PlannerParams params = base.planner_params();
  const MotionContract motion = make_first_order({base.u_max, base.dt});
  const double full_range = base.domain.diagonal() + 1.0;

  for (std::size_t round = 1; round <= 20 && cens.any_positive(); ++round) {
    centralized_round(cviews, cens, params, motion);
    decentralized_round(dviews, dens, params, motion, full_range);
    const std::vector<double> fused = fuse_common_weights(dviews);
    for (std::size_t j = 0; j < fused.size(); ++j)
      if (std::abs(fused[j] - cens.weights[j]) > 1e-9) ok = false;
    for (std::size_t k = 0; k < 2; ++k)
      if (distance(cviews[k].position, dviews[k].position) > 1e-9) ok = false;
  }
  report(7, "full-range decentralized run tracks the centralized fusion", ok,
         seconds_since(start));
}

void check_time_varying_advantage() {
  const auto start = Clock::now();
  bool ok = true;
  std::string detail;
  for (double v : {3.0, 7.0}) {
    double mean_tv = 0.0, mean_ti = 0.0;
    for (std::uint64_t seed = 41; seed <= 50; ++seed) {
      ScenarioConfig tv = bimodal_tracking_config(v, true);
      tv.seed = seed;
      ScenarioConfig ti = bimodal_tracking_config(v, false);
      ti.seed = seed;
      mean_tv += run_scenario(tv).metrics.detection_rate.value_or(0.0);
      mean_ti += run_scenario(ti).metrics.detection_rate.value_or(0.0);
    }
    mean_tv /= 10.0;
    mean_ti /= 10.0;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%sv=%g: %.4f vs %.4f",
                  detail.empty() ? "" : "; ", v, mean_tv, mean_ti);
    detail += buf;
    if (mean_tv < mean_ti) ok = false;
  }
  report(8, "tracking the moving density beats the stationary plan", ok,
         seconds_since(start), detail);
}

void check_property_suite() {
  const auto start = Clock::now();
  Rng rng(4001);
  bool ok = true;

  // Fusion is a componentwise lower bound of every view.
  for (int rep = 0; rep < 500 && ok; ++rep) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform(0.0, 4.0));
    const std::size_t dim = 3 + static_cast<std::size_t>(rng.uniform(0.0, 6.0));
    std::vector<AgentView> views;
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> w(dim);
      for (double& x : w) x = rng.uniform(0.0, 0.5);
      views.push_back(make_agent(k, {0, 0}, w, n));
    }
    const auto common = fuse_common_weights(views);
    for (const AgentView& v : views)
      for (std::size_t j = 0; j < dim; ++j)
        if (common[j] > v.weights[j]) ok = false;
  }

  // Exchange is symmetric: both agents end with identical state.
  for (int rep = 0; rep < 500 && ok; ++rep) {
    const std::size_t dim = 2 + static_cast<std::size_t>(rng.uniform(0.0, 8.0));
    std::vector<double> wa(dim), wb(dim);
    for (double& x : wa) x = rng.uniform(0.0, 0.5);
    for (double& x : wb) x = rng.uniform(0.0, 0.5);
    AgentView a = make_agent(0, {0, 0}, wa, 2);
    AgentView b = make_agent(1, {1, 1}, wb, 2);
    a.known_ledger_costs = {rng.uniform(0.0, 5.0), rng.uniform(0.0, 5.0)};
    b.known_ledger_costs = {rng.uniform(0.0, 5.0), rng.uniform(0.0, 5.0)};
    pairwise_exchange(a, b);
    if (a.weights != b.weights) ok = false;
    if (a.known_ledger_costs != b.known_ledger_costs) ok = false;
    for (std::size_t j = 0; j < dim; ++j)
      if (a.weights[j] != std::min(wa[j], wb[j])) ok = false;
  }

  // Candidate enumeration yields exactly k! orders.
  for (int rep = 0; rep < 500 && ok; ++rep) {
    const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform(0.0, 5.0));
    SampleEnsemble ens;
    Neighborhood nbhd;
    for (std::size_t j = 0; j < k; ++j) {
      ens.points.push_back({rng.uniform(-10, 10), rng.uniform(-10, 10)});
      ens.weights.push_back(rng.uniform(0.01, 1.0));
      nbhd.indices.push_back(j);
    }
    nbhd.radius = 100.0;
    std::size_t want = 1;
    for (std::size_t i = 2; i <= k; ++i) want *= i;
    if (enumerate_candidates({0, 0}, nbhd, ens).size() != want) ok = false;
  }

  // Motion never exceeds the speed limit.
  for (int rep = 0; rep < 500 && ok; ++rep) {
    const FirstOrderParams p{rng.uniform(0.1, 20.0), rng.uniform(0.1, 2.0)};
    const Vec2 cur{rng.uniform(-100, 100), rng.uniform(-100, 100)};
    const Vec2 goal{rng.uniform(-100, 100), rng.uniform(-100, 100)};
    if (distance(first_order_step(cur, goal, p), cur) > p.u_max * p.dt + 1e-12)
      ok = false;
  }

  // Deposits never increase a weight.
  for (int rep = 0; rep < 500 && ok; ++rep) {
    const std::size_t n = 3 + static_cast<std::size_t>(rng.uniform(0.0, 15.0));
    SampleEnsemble ens;
    for (std::size_t j = 0; j < n; ++j) {
      ens.points.push_back({rng.uniform(-10, 10), rng.uniform(-10, 10)});
      ens.weights.push_back(rng.uniform(0.0, 0.2));
    }
    const auto before = ens.weights;
    deposit_weight({rng.uniform(-10, 10), rng.uniform(-10, 10)}, ens,
                   rng.uniform(0.001, 0.1));
    for (std::size_t j = 0; j < n; ++j)
      if (ens.weights[j] > before[j]) ok = false;
  }

  // Snapshot records survive serialization byte for byte.
  for (int rep = 0; rep < 500 && ok; ++rep) {
    SnapshotRecord rec;
    rec.step = static_cast<std::size_t>(rng.uniform(0.0, 5000.0));
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0.0, 4.0));
    for (std::size_t k = 0; k < n; ++k) {
      rec.positions.push_back({rng.uniform(-1000, 1000),
                               rng.uniform(-1000, 1000)});
      rec.steps_taken.push_back(
          static_cast<std::size_t>(rng.uniform(0.0, 2000.0)));
      rec.ledger_costs.push_back(rng.uniform(0.0, 100.0));
      rec.wub.push_back(rng.uniform(0.0, 4000.0));
      rec.shortfall.push_back(rng.uniform01() < 0.5 ? 1 : 0);
      std::vector<double> w;
      for (int j = 0; j < 6; ++j) w.push_back(rng.uniform(0.0, 0.1));
      rec.weights.push_back(std::move(w));
    }
    rec.detected_count = static_cast<std::size_t>(rng.uniform(0.0, 300.0));
    const std::string line = serialize_snapshot(rec);
    if (serialize_snapshot(parse_snapshot(line)) != line) ok = false;
  }

  report(9, "randomized invariants hold across all modules", ok,
         seconds_since(start));
}

}  // namespace

int main() {
  check_greedy_matches_lp();
  check_bound_and_conservation();
  check_centralized_decay();
  check_detection_rate();
  check_decentralized_termination();
  check_full_range_consistency();
  check_time_varying_advantage();
  check_property_suite();
  std::printf("%s\n", g_failures == 0 ? "all acceptance checks passed"
                                      : "acceptance checks FAILED");
  return g_failures == 0 ? 0 : 1;
}
