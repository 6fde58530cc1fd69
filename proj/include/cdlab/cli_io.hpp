#pragma once
// Command implementations behind the CLI: solve, analyze, converge.
// Exit codes: 0 success, 1 config/parse error, 2 step failure or a violated
// stability gate (partial results still written).

#include <cstdint>
#include <string>

#include "cdlab/config.hpp"

namespace cdlab {

struct CliOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  bool quiet = false;
};

int cmd_solve(const CliOptions& opts);
int cmd_analyze(const CliOptions& opts);
int cmd_converge(const CliOptions& opts);

}  // namespace cdlab
