#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace supint::cli {

struct CheckResult {
  std::string name;
  double value = 0.0;
  std::string relation;  // "<=", ">=" or "=="
  double threshold = 0.0;
  bool pass = false;
};

/// Suites: integrals, symmetry, extensions. Throws UsageError for others.
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed);

/// Prints one line per check; exit code 0 iff every check passed, else 1.
int cmd_check(const std::string& suite, std::uint64_t seed, std::ostream& os);

}  // namespace supint::cli
