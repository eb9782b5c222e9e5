#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/cfg/helpers.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "cli/checks.hpp"
#include "cli/commands.hpp"
#include "cli/config.hpp"

namespace {

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("supint");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("SUPINT_LOG")) spdlog::cfg::helpers::load_levels(env);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace supint::cli;
  setup_logging();

  CLI::App app{"Superintegrable few-body laboratory"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  std::uint64_t seed = 0;
  Context ctx;
  app.add_option("--config", config_path, "JSON run configuration");
  auto* seed_opt = app.add_option("--seed", seed, "Override the configuration seed");
  app.add_option("--jobs", ctx.jobs, "Worker threads for batch runs")->check(CLI::PositiveNumber);
  app.add_option("--out", ctx.out_dir, "Output directory");

  auto* catalog = app.add_subcommand("catalog", "List catalog potentials");
  bool as_json = false;
  catalog->add_flag("--json", as_json, "Machine-readable listing");
  auto* simulate = app.add_subcommand("simulate", "Integrate one trajectory");
  auto* poincare = app.add_subcommand("poincare", "Poincare section of several initial conditions");
  auto* iso = app.add_subcommand("isopotential", "Isopotential map on the sphere");
  int levels = -1;
  iso->add_option("--levels", levels, "Number of contour levels (0: zero set only)");
  auto* check = app.add_subcommand("check", "Run a verification suite");
  std::string suite;
  check->add_option("suite", suite, "integrals | symmetry | extensions")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (*seed_opt) ctx.seed = seed;

  auto need_config = [&]() {
    if (config_path.empty()) throw UsageError("--config is required for this command");
    return load_json(config_path);
  };
  try {
    if (*catalog) return cmd_catalog(as_json, std::cout);
    if (*simulate) return cmd_simulate(parse_simulate(need_config()), ctx, std::cout);
    if (*poincare) return cmd_poincare(parse_poincare(need_config()), ctx, std::cout);
    if (*iso) {
      auto cfg = parse_isopotential(need_config());
      if (levels >= 0) cfg.levels = levels;
      return cmd_isopotential(cfg, ctx, std::cout);
    }
    if (*check) return cmd_check(suite, ctx.seed.value_or(1), std::cout);
  } catch (const UsageError& e) {
    spdlog::error("{}", e.what());
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const supint::Error& e) {
    spdlog::error("{}", e.what());
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
