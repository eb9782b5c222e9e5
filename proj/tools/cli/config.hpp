#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "supint/coords.hpp"
#include "supint/dynamics.hpp"
#include "supint/errors.hpp"
#include "supint/potentials.hpp"

namespace supint::cli {

using nlohmann::json;

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitTruncated = 3,
  kExitEmptySection = 4,
};

/// Invalid configuration or arguments (exit code 2).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Rejects keys of `j` outside `allowed`; `where` names the object in messages.
void require_object(const json& j, const std::vector<std::string>& allowed, const std::string& where);

struct SystemSpec {
  std::string id;
  potentials::ParamMap params;
  coords::Chart chart = coords::Chart::kCartesianLine;
  int dim = 0;
};

/// Default chart per catalog entry: three-body entries integrate on the line,
/// polar-form entries in polar-2, Evans entries in spherical-cylindrical-4,
/// sphere entries on sphere-2.
coords::Chart default_chart(const std::string& id);

struct InitialSpec {
  std::string label;
  std::vector<double> q;
  std::vector<double> p;
  /// > 0: q and p are centres of a uniform box of this half-width.
  double spread = 0.0;
};

/// Resolves an initial condition; random ones draw from `rng_seed`.
coords::PhaseState make_state(const SystemSpec& sys, const InitialSpec& init, std::uint64_t rng_seed);

struct OutputSpec {
  std::string trajectory;
  std::string drift;
  std::string csv;
  std::string svg;
  std::string zeros;
};

struct SimulateConfig {
  SystemSpec system;
  InitialSpec initial;
  std::optional<dynamics::Scheme> scheme;
  double dt = 0.0;
  double t_end = 0.0;
  int record_every = 1;
  bool integrals = true;
  OutputSpec output;
  std::uint64_t seed = 1;
};

struct SectionSpec {
  std::string coordinate;
  double value = 0.0;
  dynamics::Direction direction = dynamics::Direction::kPositive;
  std::string record_q;
  std::string record_p;
  double period = 0.0;
};

struct PoincareConfig {
  SystemSpec system;
  std::vector<InitialSpec> sets;
  std::optional<dynamics::Scheme> scheme;
  double dt = 0.0;
  double t_end = 0.0;
  SectionSpec section;
  OutputSpec output;
  std::string title;
  std::uint64_t seed = 1;
};

struct IsopotentialConfig {
  SystemSpec system;
  int levels = 8;
  int grid_phi = 360;
  int grid_theta = 180;
  OutputSpec output;
  std::string title;
};

SimulateConfig parse_simulate(const json& j);
PoincareConfig parse_poincare(const json& j);
IsopotentialConfig parse_isopotential(const json& j);

/// Reads and parses a JSON file; parse errors become UsageError.
json load_json(const std::string& path);

/// Index of `name` among the chart's coordinate names.
int coordinate_index(const SystemSpec& sys, const std::string& name);

}  // namespace supint::cli
