#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "otexplore/sim.hpp"

namespace otx {

/// Parses the flat key-value config document (JSON). Unknown keys and
/// missing required fields raise ConfigError with the field path.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

/// Canonical serialization; parse(serialize(cfg)) reproduces cfg exactly.
std::string serialize_config(const ScenarioConfig& cfg);

/// Stable FNV-1a hash of the canonical serialization.
std::uint64_t config_hash(const ScenarioConfig& cfg);

std::string serialize_snapshot(const SnapshotRecord& rec);
SnapshotRecord parse_snapshot(const std::string& line);

std::string metrics_csv_header();
std::string metrics_csv_row(std::uint64_t seed, Mode mode, const Metrics& m);

struct ReplayReport {
  std::size_t records = 0;
  bool wub_consistent = true;
  bool steps_increasing = true;
  bool weights_monotone = true;
  bool conservation_ok = true;  // single mode only, pre-shortfall
  std::string detail;

  bool ok() const {
    return wub_consistent && steps_increasing && weights_monotone &&
           conservation_ok;
  }
};

/// Re-derives W_UB and the bookkeeping invariants from a logged snapshot
/// stream. The stream's first line must be the header object written by
/// write_run_outputs.
ReplayReport replay_snapshots(std::istream& in);

}  // namespace otx
