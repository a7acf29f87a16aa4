#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dilatox/beltrami.hpp"
#include "dilatox/verifier.hpp"

namespace dilatox::cli {

enum ExitCode : int {
  kAllHold = 0,
  kViolated = 1,
  kConfigError = 2,
  kNumericalFailure = 3,
};

struct RunConfig {
  std::string command;
  std::string map = "identity";
  std::string map_file;
  std::string coef_file;
  std::map<std::string, double> params;
  double p = 2.0;
  std::optional<double> s;
  RadiusLadder ladder;
  QuadratureConfig quad;
  SolveOptions solve;
  std::optional<double> anchor_value;
  std::vector<std::string> checks;
  std::string out_dir = ".";
  std::string format;  // empty: csv for eval, json otherwise
};

/// Full command line in, process exit code out. Reports go to files under
/// --out; a short summary goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dilatox::cli
