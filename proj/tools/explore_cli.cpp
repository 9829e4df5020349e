#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "otexplore/config_io.hpp"
#include "otexplore/errors.hpp"
#include "otexplore/sim.hpp"
#include "otexplore/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct SeedRange {
  std::uint64_t first = 0;
  std::uint64_t last = 0;
};

SeedRange parse_seed_range(const std::string& spec) {
  const auto dots = spec.find("..");
  if (dots == std::string::npos) {
    const std::uint64_t s = std::stoull(spec);
    return {s, s};
  }
  SeedRange r;
  r.first = std::stoull(spec.substr(0, dots));
  r.last = std::stoull(spec.substr(dots + 2));
  if (r.last < r.first) throw otx::ConfigError("--seeds", "range end before start");
  return r;
}

int run_command(const std::string& config_path, const std::string& seeds_spec,
                const std::string& out_dir, std::size_t snapshot_every,
                bool emit_svg) {
  otx::ScenarioConfig base = otx::load_config(config_path);
  if (snapshot_every > 0) base.snapshot_every = snapshot_every;

  SeedRange seeds{base.seed, base.seed};
  if (!seeds_spec.empty()) seeds = parse_seed_range(seeds_spec);

  fs::create_directories(out_dir);
  std::vector<std::string> emitted;

  std::ofstream metrics(fs::path(out_dir) / "metrics.csv");
  metrics << otx::metrics_csv_header() << "\n";
  emitted.push_back("metrics.csv");

  std::vector<std::uint64_t> seed_list;
  for (std::uint64_t seed = seeds.first; seed <= seeds.last; ++seed) {
    otx::ScenarioConfig cfg = base;
    cfg.seed = seed;
    seed_list.push_back(seed);

    const otx::RunResult result = otx::run_scenario(cfg);

    const std::string snap_name = "snapshots_" + std::to_string(seed) + ".jsonl";
    {
      std::ofstream snap(fs::path(out_dir) / snap_name);
      json header;
      header["config"] = json::parse(otx::serialize_config(cfg));
      snap << header.dump() << "\n";
      for (const otx::SnapshotRecord& rec : result.snapshots)
        snap << otx::serialize_snapshot(rec) << "\n";
    }
    emitted.push_back(snap_name);

    if (emit_svg) {
      const std::string svg_name =
          "trajectories_" + std::to_string(seed) + ".svg";
      otx::write_trajectories_svg(fs::path(out_dir) / svg_name, cfg.domain,
                                  result.final_sample_points,
                                  result.trajectories);
      emitted.push_back(svg_name);
    }

    metrics << otx::metrics_csv_row(seed, cfg.mode, result.metrics) << "\n";
  }
  metrics.close();

  {
    std::ofstream cfg_copy(fs::path(out_dir) / "config.json");
    cfg_copy << otx::serialize_config(base) << "\n";
    emitted.push_back("config.json");
  }

  json manifest;
  {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(otx::config_hash(base)));
    manifest["config_hash"] = buf;
  }
  manifest["seeds"] = seed_list;
  manifest["output_dir"] = out_dir;
  manifest["files"] = emitted;
  std::ofstream(fs::path(out_dir) / "manifest.json") << manifest.dump(2) << "\n";
  return 0;
}

int replay_command(const std::string& snapshot_path) {
  std::ifstream in(snapshot_path);
  if (!in) {
    std::cerr << "error: cannot open " << snapshot_path << "\n";
    return 1;
  }
  const otx::ReplayReport report = otx::replay_snapshots(in);
  const auto line = [](const char* name, bool ok) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
  };
  std::cout << "replayed " << report.records << " records\n";
  line("wub consistency", report.wub_consistent);
  line("steps strictly increasing", report.steps_increasing);
  line("weight monotonicity", report.weights_monotone);
  line("mass conservation", report.conservation_ok);
  if (!report.detail.empty()) std::cout << report.detail << "\n";
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal-transport multi-robot exploration simulator"};

  std::string config_path;
  std::string seeds_spec;
  std::string out_dir = "out";
  std::size_t snapshot_every = 0;
  bool emit_svg = false;
  std::string replay_path;
  std::uint64_t single_seed = 0;
  bool seed_set = false;

  app.add_option("--config", config_path, "Scenario config file (JSON)");
  auto* seed_opt = app.add_option("--seed", single_seed, "Single seed override");
  app.add_option("--seeds", seeds_spec, "Seed range N..M (inclusive)");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--snapshot-every", snapshot_every,
                 "Snapshot cadence override (steps)");
  app.add_flag("--svg", emit_svg, "Emit trajectory SVGs");
  app.add_option("--replay", replay_path,
                 "Verify a snapshots_<seed>.jsonl stream instead of running");

  CLI11_PARSE(app, argc, argv);
  seed_set = seed_opt->count() > 0;

  try {
    if (!replay_path.empty()) return replay_command(replay_path);
    if (config_path.empty()) {
      std::cerr << "error: --config is required\n";
      return 2;
    }
    if (seed_set && seeds_spec.empty())
      seeds_spec = std::to_string(single_seed);
    return run_command(config_path, seeds_spec, out_dir, snapshot_every,
                       emit_svg);
  } catch (const otx::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
