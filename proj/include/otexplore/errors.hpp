#pragma once

#include <stdexcept>
#include <string>

namespace otx {

struct MassMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidMass : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidPlan : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidMixture : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidNeighborhood : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// No sample point with positive weight remains; the run is over.
struct Exhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidViews : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Carries the dotted path of the offending config field.
struct ConfigError : std::runtime_error {
  std::string field;
  ConfigError(std::string field_path, const std::string& msg)
      : std::runtime_error(field_path + ": " + msg), field(std::move(field_path)) {}
};

struct Undefined : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace otx
