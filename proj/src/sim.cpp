#include "otexplore/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "otexplore/errors.hpp"
#include "otexplore/transport.hpp"

namespace otx {

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Single: return "single";
    case Mode::Centralized: return "centralized";
    case Mode::Decentralized: return "decentralized";
  }
  return "single";
}

Mode mode_from_string(const std::string& s) {
  if (s == "single") return Mode::Single;
  if (s == "centralized") return Mode::Centralized;
  if (s == "decentralized") return Mode::Decentralized;
  throw ConfigError("mode", "expected single|centralized|decentralized, got '" + s + "'");
}

void ScenarioConfig::apply_defaults() {
  const double diag = domain.diagonal();
  if (r0 <= 0.0) r0 = diag / 100.0;
  if (delta <= 0.0) delta = diag / 100.0;
  if (mode == Mode::Centralized && effective_steps == 0 && num_agents > 0)
    effective_steps = num_robot_points / num_agents;
}

void ScenarioConfig::validate() const {
  if (!domain.valid()) throw ConfigError("domain", "empty interval");
  try {
    validate_mixture(mixture);
  } catch (const InvalidMixture& e) {
    throw ConfigError("mixture", e.what());
  }
  if (num_samples < 1) throw ConfigError("num_samples", "must be >= 1");
  if (num_robot_points < 1) throw ConfigError("num_robot_points", "must be >= 1");
  if (num_agents < 1) throw ConfigError("num_agents", "must be >= 1");
  if (mode == Mode::Single && num_agents != 1)
    throw ConfigError("num_agents", "single mode requires exactly one agent");
  if (mode == Mode::Centralized &&
      num_robot_points != num_agents * effective_steps)
    throw ConfigError("effective_steps",
                      "centralized mode requires num_robot_points = "
                      "num_agents * effective_steps");
  if (mode == Mode::Decentralized && !(r_comm > 0.0))
    throw ConfigError("r_comm", "decentralized mode requires a positive range");
  if (!initial_positions.empty() && initial_positions.size() != num_agents)
    throw ConfigError("initial_positions",
                      "must list one position per agent or be omitted");
  if (!(u_max > 0.0)) throw ConfigError("u_max", "must be positive");
  if (!(dt > 0.0)) throw ConfigError("dt", "must be positive");
  if (horizon < 1 || horizon > kMaxHorizon)
    throw ConfigError("horizon", "must be in [1, 6]");
  if (!(r0 > 0.0)) throw ConfigError("r0", "must be positive");
  if (!(delta > 0.0)) throw ConfigError("delta", "must be positive");
  if (diffusion_rate < 0.0) throw ConfigError("diffusion_rate", "must be >= 0");
  if (num_targets > 0 && !(r_sensing > 0.0))
    throw ConfigError("r_sensing", "must be positive when targets exist");
}

PlannerParams ScenarioConfig::planner_params() const {
  PlannerParams p;
  p.horizon = horizon;
  p.r0 = r0;
  p.delta = delta;
  p.budget = num_robot_points;
  return p;
}

void detect_targets(const std::vector<Vec2>& agent_positions,
                    std::vector<Target>& targets, double r_sensing,
                    std::size_t step) {
  for (Target& t : targets) {
    if (t.detected) continue;
    for (const Vec2& pos : agent_positions) {
      if (distance(pos, t.position) <= r_sensing) {
        t.detected = true;
        t.detection_step = step;
        break;
      }
    }
  }
}

namespace {

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.x * ab.x + ab.y * ab.y;
  if (len2 <= 0.0) return distance(p, a);
  const double t =
      std::clamp(((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

void detect_targets_segments(const std::vector<Vec2>& from,
                             const std::vector<Vec2>& to,
                             std::vector<Target>& targets, double r_sensing,
                             std::size_t step) {
  for (Target& t : targets) {
    if (t.detected) continue;
    for (std::size_t k = 0; k < to.size(); ++k) {
      if (point_segment_distance(t.position, from[k], to[k]) <= r_sensing) {
        t.detected = true;
        t.detection_step = step;
        break;
      }
    }
  }
}

}  // namespace

double detection_rate(const std::vector<Target>& targets) {
  if (targets.empty())
    throw Undefined("detection_rate: no targets configured");
  std::size_t detected = 0;
  for (const Target& t : targets)
    if (t.detected) ++detected;
  return static_cast<double>(detected) / static_cast<double>(targets.size());
}

namespace {

std::size_t count_detected(const std::vector<Target>& targets) {
  std::size_t n = 0;
  for (const Target& t : targets)
    if (t.detected) ++n;
  return n;
}

struct WubEvaluator {
  Mode mode;
  double r_comm;

  std::vector<double> eval(const std::vector<AgentView>& views,
                           const SampleEnsemble& ens) const {
    std::vector<Vec2> positions;
    positions.reserve(views.size());
    for (const AgentView& v : views) positions.push_back(v.position);

    if (mode == Mode::Single) {
      return {upper_bound_single(views[0].ledger, views[0].position,
                                 {ens.points, views[0].weights})};
    }
    if (mode == Mode::Centralized) {
      std::vector<BoundLedger> ledgers;
      for (const AgentView& v : views) ledgers.push_back(v.ledger);
      return {upper_bound_centralized(ledgers, positions,
                                      {ens.points, ens.weights})};
    }
    // Decentralized: each agent bounds over itself plus in-range neighbors.
    std::vector<double> out;
    for (std::size_t k = 0; k < views.size(); ++k) {
      std::vector<double> costs{views[k].ledger.accumulated_deposit_cost};
      std::vector<Vec2> npos{views[k].position};
      for (std::size_t q = 0; q < views.size(); ++q) {
        if (q != k &&
            distance(views[k].position, views[q].position) <= r_comm) {
          costs.push_back(views[q].ledger.accumulated_deposit_cost);
          npos.push_back(views[q].position);
        }
      }
      out.push_back(upper_bound_decentralized(costs, npos,
                                              {ens.points, views[k].weights}));
    }
    return out;
  }
};

}  // namespace

RunResult run_scenario(const ScenarioConfig& cfg_in) {
  ScenarioConfig cfg = cfg_in;
  cfg.apply_defaults();
  cfg.validate();

  const auto wall_start = std::chrono::steady_clock::now();

  Rng sample_rng = make_stream(cfg.seed, "samples");
  Rng target_rng = make_stream(cfg.seed, "targets");
  Rng init_rng = make_stream(cfg.seed, "init-positions");
  Rng sample_walk_rng = make_stream(cfg.seed, "sample-walk");
  Rng target_walk_rng = make_stream(cfg.seed, "target-walk");

  SampleEnsemble ens = sample_mixture(cfg.mixture, cfg.num_samples, sample_rng);

  std::vector<Target> targets;
  if (cfg.num_targets > 0) {
    const SampleEnsemble drawn =
        sample_mixture(cfg.mixture, cfg.num_targets, target_rng);
    targets.reserve(cfg.num_targets);
    for (const Vec2& p : drawn.points) targets.push_back({p});
  }

  std::vector<Vec2> starts = cfg.initial_positions;
  if (starts.empty()) {
    for (std::size_t k = 0; k < cfg.num_agents; ++k)
      starts.push_back({init_rng.uniform(cfg.domain.x_min, cfg.domain.x_max),
                        init_rng.uniform(cfg.domain.y_min, cfg.domain.y_max)});
  }

  std::vector<AgentView> views;
  for (std::size_t k = 0; k < cfg.num_agents; ++k)
    views.push_back(make_agent(k, starts[k], ens.weights, cfg.num_agents));

  const PlannerParams params = cfg.planner_params();
  const MotionContract motion =
      make_first_order({cfg.u_max, cfg.dt});
  const WubEvaluator wub{cfg.mode, cfg.r_comm};

  RunResult result;
  const auto record = [&](std::size_t step) {
    SnapshotRecord rec;
    rec.step = step;
    for (const AgentView& v : views) {
      rec.positions.push_back(v.position);
      rec.steps_taken.push_back(v.steps_taken);
      rec.ledger_costs.push_back(v.ledger.accumulated_deposit_cost);
      rec.shortfall.push_back(v.shortfall ? 1 : 0);
    }
    if (cfg.mode == Mode::Decentralized) {
      for (const AgentView& v : views) rec.weights.push_back(v.weights);
    } else {
      rec.weights.push_back(ens.weights);
    }
    rec.wub = wub.eval(views, ens);
    rec.detected_count = count_detected(targets);
    result.snapshots.push_back(std::move(rec));
  };

  std::vector<Vec2> positions_before(starts);
  const auto sense = [&](std::size_t step) {
    if (targets.empty()) return;
    std::vector<Vec2> now;
    for (const AgentView& v : views) now.push_back(v.position);
    if (cfg.segment_sensing)
      detect_targets_segments(positions_before, now, targets, cfg.r_sensing,
                              step);
    else
      detect_targets(now, targets, cfg.r_sensing, step);
  };

  const auto walk_world = [&]() {
    if (cfg.diffusion_rate <= 0.0) return;
    if (cfg.time_varying)
      random_walk_step_samples(ens, cfg.diffusion_rate, sample_walk_rng);
    if (!targets.empty()) {
      std::vector<Vec2> tpos;
      std::vector<char> frozen;
      for (const Target& t : targets) {
        tpos.push_back(t.position);
        frozen.push_back(t.detected ? 1 : 0);
      }
      random_walk_step_positions(tpos, frozen, cfg.diffusion_rate,
                                 target_walk_rng);
      for (std::size_t i = 0; i < targets.size(); ++i)
        targets[i].position = tpos[i];
    }
  };

  sense(0);
  record(0);
  const double initial_wub =
      *std::max_element(result.snapshots[0].wub.begin(),
                        result.snapshots[0].wub.end());

  std::size_t termination = 0;
  if (cfg.mode == Mode::Single) {
    for (std::size_t t = 1; t <= cfg.num_robot_points; ++t) {
      if (!ens.any_positive()) break;
      positions_before[0] = views[0].position;
      plan_step(views[0], ens, params, motion);
      views[0].weights = ens.weights;
      termination = t;
      sense(t);
      walk_world();
      if (t % cfg.snapshot_every == 0) record(t);
    }
  } else if (cfg.mode == Mode::Centralized) {
    for (std::size_t t = 1; t <= cfg.effective_steps; ++t) {
      for (std::size_t k = 0; k < views.size(); ++k)
        positions_before[k] = views[k].position;
      try {
        centralized_round(views, ens, params, motion);
      } catch (const Exhausted&) {
        break;
      }
      termination = t;
      sense(t);
      walk_world();
      if (t % cfg.snapshot_every == 0) record(t);
    }
  } else {
    for (std::size_t t = 1; t <= cfg.num_robot_points; ++t) {
      if (all_halted(views)) break;
      for (std::size_t k = 0; k < views.size(); ++k)
        positions_before[k] = views[k].position;
      const bool moved =
          decentralized_round(views, ens, params, motion, cfg.r_comm);
      if (!moved) break;
      termination = t;
      sense(t);
      walk_world();
      if (t % cfg.snapshot_every == 0) record(t);
    }
  }

  if (result.snapshots.back().step != termination) record(termination);

  Metrics& m = result.metrics;
  m.termination_step = termination;
  m.initial_wub = initial_wub;
  const std::vector<double>& final_wub = result.snapshots.back().wub;
  m.final_wub = *std::max_element(final_wub.begin(), final_wub.end());
  if (!targets.empty()) m.detection_rate = detection_rate(targets);
  m.wall_ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - wall_start)
                  .count();
  for (const AgentView& v : views) result.trajectories.push_back(v.trajectory);
  result.final_sample_points = ens.points;
  return result;
}

}  // namespace otx
