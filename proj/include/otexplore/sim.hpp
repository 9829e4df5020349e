#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "otexplore/coordination.hpp"
#include "otexplore/density.hpp"

namespace otx {

enum class Mode { Single, Centralized, Decentralized };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& s);

struct Target {
  Vec2 position;
  bool detected = false;
  std::optional<std::size_t> detection_step;
};

/// Full experiment description. Optional fields fall back to scale-aware
/// defaults (see apply_defaults / validate).
struct ScenarioConfig {
  Mode mode = Mode::Single;
  Domain domain;
  GaussianMixture mixture;
  std::size_t num_samples = 100;       // N
  std::size_t num_robot_points = 100;  // M
  std::size_t num_agents = 1;          // n_a
  std::size_t effective_steps = 0;     // t_e; centralized requires M = n_a*t_e
  std::vector<Vec2> initial_positions;  // empty -> uniform random per seed
  double u_max = 1.0;
  double dt = 1.0;
  double r_sensing = 0.0;
  double r_comm = 0.0;
  std::size_t horizon = 3;
  double r0 = 0.0;     // 0 -> domain diagonal / 100
  double delta = 0.0;  // 0 -> domain diagonal / 100
  double diffusion_rate = 0.0;  // v
  std::size_t num_targets = 0;  // N_h
  bool time_varying = false;
  /// Endpoint sensing by default; enables sweep sensing along the motion
  /// segment for sensitivity studies.
  bool segment_sensing = false;
  std::uint64_t seed = 0;
  std::size_t snapshot_every = 10;

  void apply_defaults();
  /// Throws ConfigError naming the offending field.
  void validate() const;
  PlannerParams planner_params() const;
};

/// State logged at a configured cadence; one record reproduces everything
/// the bound and conservation checks need at that step.
struct SnapshotRecord {
  std::size_t step = 0;
  std::vector<Vec2> positions;
  std::vector<std::size_t> steps_taken;
  std::vector<double> ledger_costs;
  /// One weight vector for single/centralized (the fused view), one per
  /// agent for decentralized.
  std::vector<std::vector<double>> weights;
  std::vector<double> wub;
  std::vector<char> shortfall;
  std::size_t detected_count = 0;
};

struct Metrics {
  std::size_t termination_step = 0;
  std::optional<double> detection_rate;
  double initial_wub = 0.0;
  double final_wub = 0.0;
  double wall_ms = 0.0;
};

struct RunResult {
  std::vector<SnapshotRecord> snapshots;
  Metrics metrics;
  std::vector<std::vector<Vec2>> trajectories;
  std::vector<Vec2> final_sample_points;
};

/// Marks every undetected target within r_sensing of any agent as detected
/// at the given step; the range boundary is inclusive.
void detect_targets(const std::vector<Vec2>& agent_positions,
                    std::vector<Target>& targets, double r_sensing,
                    std::size_t step);

/// Detected fraction. Throws Undefined when there are no targets.
double detection_rate(const std::vector<Target>& targets);

RunResult run_scenario(const ScenarioConfig& cfg);

}  // namespace otx
