#include "otexplore/config_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "otexplore/errors.hpp"
#include "otexplore/rng.hpp"
#include "otexplore/transport.hpp"

namespace otx {

using nlohmann::json;

namespace {

const std::set<std::string> kKnownKeys = {
    "mode",          "domain_x",          "domain_y",
    "mixture_alphas", "mixture_means",    "mixture_covariances",
    "num_samples",   "num_robot_points",  "num_agents",
    "effective_steps", "initial_positions", "u_max",
    "dt",            "r_sensing",         "r_comm",
    "horizon",       "r0",                "delta",
    "diffusion_rate", "num_targets",      "time_varying",
    "segment_sensing", "seed",            "snapshot_every"};

const json& require(const json& j, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(key, "required field is missing");
  return *it;
}

double as_number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ConfigError(key, "expected a number");
  return j.get<double>();
}

Vec2 as_vec2(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigError(key, "expected a 2-element number array");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", e.what());
  }
  if (!j.is_object()) throw ConfigError("<document>", "expected a JSON object");
  for (const auto& [key, _] : j.items())
    if (!kKnownKeys.count(key)) throw ConfigError(key, "unknown field");

  ScenarioConfig cfg;
  cfg.mode = mode_from_string(require(j, "mode").get<std::string>());

  const Vec2 dx = as_vec2(require(j, "domain_x"), "domain_x");
  const Vec2 dy = as_vec2(require(j, "domain_y"), "domain_y");
  cfg.domain = {dx.x, dx.y, dy.x, dy.y};

  const json& alphas = require(j, "mixture_alphas");
  const json& means = require(j, "mixture_means");
  const json& covs = require(j, "mixture_covariances");
  if (!alphas.is_array() || !means.is_array() || !covs.is_array() ||
      alphas.size() != means.size() || alphas.size() != covs.size())
    throw ConfigError("mixture_alphas",
                      "alphas, means, and covariances must be equal-length arrays");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    GaussianComponent c;
    c.alpha = as_number(alphas[i], "mixture_alphas[" + std::to_string(i) + "]");
    c.mean = as_vec2(means[i], "mixture_means[" + std::to_string(i) + "]");
    const json& cov = covs[i];
    if (!cov.is_array() || cov.size() != 4)
      throw ConfigError("mixture_covariances[" + std::to_string(i) + "]",
                        "expected a 4-element row-major array");
    for (std::size_t k = 0; k < 4; ++k)
      c.cov[k] = as_number(cov[k], "mixture_covariances[" + std::to_string(i) +
                                       "][" + std::to_string(k) + "]");
    cfg.mixture.components.push_back(c);
  }

  cfg.num_samples = static_cast<std::size_t>(
      as_number(require(j, "num_samples"), "num_samples"));
  cfg.num_robot_points = static_cast<std::size_t>(
      as_number(require(j, "num_robot_points"), "num_robot_points"));

  if (cfg.mode != Mode::Single && !j.contains("num_agents"))
    throw ConfigError("num_agents", "required field is missing");
  if (j.contains("num_agents"))
    cfg.num_agents =
        static_cast<std::size_t>(as_number(j["num_agents"], "num_agents"));
  if (j.contains("effective_steps"))
    cfg.effective_steps = static_cast<std::size_t>(
        as_number(j["effective_steps"], "effective_steps"));
  if (j.contains("initial_positions")) {
    const json& ip = j["initial_positions"];
    if (!ip.is_array()) throw ConfigError("initial_positions", "expected an array");
    for (std::size_t k = 0; k < ip.size(); ++k)
      cfg.initial_positions.push_back(
          as_vec2(ip[k], "initial_positions[" + std::to_string(k) + "]"));
  }
  if (j.contains("u_max")) cfg.u_max = as_number(j["u_max"], "u_max");
  if (j.contains("dt")) cfg.dt = as_number(j["dt"], "dt");
  if (j.contains("r_sensing")) cfg.r_sensing = as_number(j["r_sensing"], "r_sensing");
  if (j.contains("r_comm")) cfg.r_comm = as_number(j["r_comm"], "r_comm");
  if (j.contains("horizon"))
    cfg.horizon = static_cast<std::size_t>(as_number(j["horizon"], "horizon"));
  if (j.contains("r0")) cfg.r0 = as_number(j["r0"], "r0");
  if (j.contains("delta")) cfg.delta = as_number(j["delta"], "delta");
  if (j.contains("diffusion_rate"))
    cfg.diffusion_rate = as_number(j["diffusion_rate"], "diffusion_rate");
  if (j.contains("num_targets"))
    cfg.num_targets =
        static_cast<std::size_t>(as_number(j["num_targets"], "num_targets"));
  if (j.contains("time_varying")) {
    if (!j["time_varying"].is_boolean())
      throw ConfigError("time_varying", "expected a boolean");
    cfg.time_varying = j["time_varying"].get<bool>();
  }
  if (j.contains("segment_sensing")) {
    if (!j["segment_sensing"].is_boolean())
      throw ConfigError("segment_sensing", "expected a boolean");
    cfg.segment_sensing = j["segment_sensing"].get<bool>();
  }
  if (j.contains("seed"))
    cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("snapshot_every"))
    cfg.snapshot_every = static_cast<std::size_t>(
        as_number(j["snapshot_every"], "snapshot_every"));
  if (cfg.snapshot_every == 0)
    throw ConfigError("snapshot_every", "must be >= 1");
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("<document>", "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
  json j;
  j["mode"] = to_string(cfg.mode);
  j["domain_x"] = {cfg.domain.x_min, cfg.domain.x_max};
  j["domain_y"] = {cfg.domain.y_min, cfg.domain.y_max};
  json alphas = json::array(), means = json::array(), covs = json::array();
  for (const GaussianComponent& c : cfg.mixture.components) {
    alphas.push_back(c.alpha);
    means.push_back({c.mean.x, c.mean.y});
    covs.push_back({c.cov[0], c.cov[1], c.cov[2], c.cov[3]});
  }
  j["mixture_alphas"] = alphas;
  j["mixture_means"] = means;
  j["mixture_covariances"] = covs;
  j["num_samples"] = cfg.num_samples;
  j["num_robot_points"] = cfg.num_robot_points;
  j["num_agents"] = cfg.num_agents;
  j["effective_steps"] = cfg.effective_steps;
  if (!cfg.initial_positions.empty()) {
    json ip = json::array();
    for (const Vec2& p : cfg.initial_positions) ip.push_back({p.x, p.y});
    j["initial_positions"] = ip;
  }
  j["u_max"] = cfg.u_max;
  j["dt"] = cfg.dt;
  j["r_sensing"] = cfg.r_sensing;
  j["r_comm"] = cfg.r_comm;
  j["horizon"] = cfg.horizon;
  j["r0"] = cfg.r0;
  j["delta"] = cfg.delta;
  j["diffusion_rate"] = cfg.diffusion_rate;
  j["num_targets"] = cfg.num_targets;
  j["time_varying"] = cfg.time_varying;
  j["segment_sensing"] = cfg.segment_sensing;
  j["seed"] = cfg.seed;
  j["snapshot_every"] = cfg.snapshot_every;
  return j.dump();
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
  return detail::fnv1a(serialize_config(cfg));
}

std::string serialize_snapshot(const SnapshotRecord& rec) {
  json j;
  j["step"] = rec.step;
  json pos = json::array();
  for (const Vec2& p : rec.positions) pos.push_back({p.x, p.y});
  j["positions"] = pos;
  j["steps_taken"] = rec.steps_taken;
  j["ledger_costs"] = rec.ledger_costs;
  j["weights"] = rec.weights;
  j["wub"] = rec.wub;
  json sf = json::array();
  for (char f : rec.shortfall) sf.push_back(static_cast<bool>(f));
  j["shortfall"] = sf;
  j["detected_count"] = rec.detected_count;
  return j.dump();
}

SnapshotRecord parse_snapshot(const std::string& line) {
  const json j = json::parse(line);
  SnapshotRecord rec;
  rec.step = j.at("step").get<std::size_t>();
  for (const json& p : j.at("positions"))
    rec.positions.push_back({p[0].get<double>(), p[1].get<double>()});
  rec.steps_taken = j.at("steps_taken").get<std::vector<std::size_t>>();
  rec.ledger_costs = j.at("ledger_costs").get<std::vector<double>>();
  rec.weights = j.at("weights").get<std::vector<std::vector<double>>>();
  rec.wub = j.at("wub").get<std::vector<double>>();
  for (const json& f : j.at("shortfall"))
    rec.shortfall.push_back(f.get<bool>() ? 1 : 0);
  rec.detected_count = j.at("detected_count").get<std::size_t>();
  return rec;
}

std::string metrics_csv_header() {
  return "seed,mode,termination_step,detection_rate,final_wub,initial_wub,wall_ms";
}

std::string metrics_csv_row(std::uint64_t seed, Mode mode, const Metrics& m) {
  char buf[256];
  std::string rate;
  if (m.detection_rate) {
    std::snprintf(buf, sizeof(buf), "%.12g", *m.detection_rate);
    rate = buf;
  }
  std::string row = std::to_string(seed) + "," + to_string(mode) + "," +
                    std::to_string(m.termination_step) + "," + rate + ",";
  std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g", m.final_wub,
                m.initial_wub, m.wall_ms);
  return row + buf;
}

ReplayReport replay_snapshots(std::istream& in) {
  ReplayReport report;
  std::string line;
  if (!std::getline(in, line))
    throw ConfigError("<stream>", "empty snapshot stream");

  ScenarioConfig cfg;
  try {
    const json header = json::parse(line);
    cfg = parse_config(header.at("config").dump());
  } catch (const json::exception& e) {
    throw ConfigError("<stream>", std::string("bad header line: ") + e.what());
  }
  cfg.apply_defaults();

  // Rebuild the sample positions from the seed; for time-varying runs the
  // walk stream is advanced to each record's step.
  Rng sample_rng = make_stream(cfg.seed, "samples");
  Rng walk_rng = make_stream(cfg.seed, "sample-walk");
  SampleEnsemble ens = sample_mixture(cfg.mixture, cfg.num_samples, sample_rng);
  std::size_t walked = 0;

  const double M = static_cast<double>(cfg.num_robot_points);
  SnapshotRecord prev;
  bool have_prev = false;

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    SnapshotRecord rec;
    try {
      rec = parse_snapshot(line);
    } catch (const json::exception& e) {
      throw ConfigError("<stream>", std::string("corrupt record: ") + e.what());
    }
    ++report.records;

    if (cfg.time_varying && cfg.diffusion_rate > 0.0) {
      while (walked < rec.step) {
        random_walk_step_samples(ens, cfg.diffusion_rate, walk_rng);
        ++walked;
      }
    }

    // W_UB recomputation from the logged state.
    std::vector<double> expect;
    if (cfg.mode == Mode::Single) {
      BoundLedger led{rec.ledger_costs[0], rec.steps_taken[0]};
      expect = {upper_bound_single(led, rec.positions[0],
                                   {ens.points, rec.weights[0]})};
    } else if (cfg.mode == Mode::Centralized) {
      std::vector<BoundLedger> ledgers;
      for (std::size_t k = 0; k < rec.ledger_costs.size(); ++k)
        ledgers.push_back({rec.ledger_costs[k], rec.steps_taken[k]});
      expect = {upper_bound_centralized(ledgers, rec.positions,
                                        {ens.points, rec.weights[0]})};
    } else {
      for (std::size_t k = 0; k < rec.positions.size(); ++k) {
        std::vector<double> costs{rec.ledger_costs[k]};
        std::vector<Vec2> npos{rec.positions[k]};
        for (std::size_t q = 0; q < rec.positions.size(); ++q)
          if (q != k &&
              distance(rec.positions[k], rec.positions[q]) <= cfg.r_comm) {
            costs.push_back(rec.ledger_costs[q]);
            npos.push_back(rec.positions[q]);
          }
        expect.push_back(upper_bound_decentralized(
            costs, npos, {ens.points, rec.weights[k]}));
      }
    }
    if (expect.size() != rec.wub.size()) {
      report.wub_consistent = false;
    } else {
      for (std::size_t k = 0; k < expect.size(); ++k)
        if (std::abs(expect[k] - rec.wub[k]) > 1e-9) {
          report.wub_consistent = false;
          report.detail = "wub mismatch at step " + std::to_string(rec.step);
        }
    }

    if (cfg.mode == Mode::Single && !rec.shortfall[0]) {
      double total = 0.0;
      for (double w : rec.weights[0]) total += w;
      const double want = 1.0 - static_cast<double>(rec.steps_taken[0]) / M;
      if (std::abs(total - want) > 1e-9) report.conservation_ok = false;
    }

    if (have_prev) {
      if (rec.step <= prev.step) report.steps_increasing = false;
      for (std::size_t v = 0; v < rec.weights.size() &&
                              v < prev.weights.size(); ++v)
        for (std::size_t i = 0; i < rec.weights[v].size(); ++i)
          if (rec.weights[v][i] > prev.weights[v][i] + 1e-12)
            report.weights_monotone = false;
    }
    prev = std::move(rec);
    have_prev = true;
  }
  return report;
}

}  // namespace otx
