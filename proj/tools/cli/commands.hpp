#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "cli/svg.hpp"
#include "supint/dynamics.hpp"

namespace supint::cli {

struct Context {
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;  // overrides the config seed
  int jobs = 1;
};

int cmd_catalog(bool as_json, std::ostream& os);
int cmd_simulate(const SimulateConfig& cfg, const Context& ctx, std::ostream& os);
int cmd_poincare(const PoincareConfig& cfg, const Context& ctx, std::ostream& os);
int cmd_isopotential(const IsopotentialConfig& cfg, const Context& ctx, std::ostream& os);

/// Section points of a poincare config, one job per initial-condition set.
dynamics::SectionSet compute_section(const PoincareConfig& cfg, std::uint64_t seed, int jobs);

struct ContourLevel {
  double level = 0.0;
  std::string color;
  std::vector<std::vector<Point2>> lines;  // (phi, theta)
};

struct IsopotentialMap {
  /// Zero sets of the wall functions, i.e. where the potential is infinite.
  std::vector<std::vector<Point2>> zero_lines;
  std::vector<ContourLevel> levels;
};

/// Contours of 1/V on the sphere in the equirectangular (phi, theta) plane.
IsopotentialMap compute_isopotential(const IsopotentialConfig& cfg);

SvgPlot isopotential_svg(const IsopotentialMap& map, const std::string& title);

/// Joins `file` onto the output directory, creating parent directories.
std::string output_path(const Context& ctx, const std::string& file);

}  // namespace supint::cli
