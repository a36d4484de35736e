#pragma once

#include <optional>
#include <string>

namespace carleson {

// Batch front door shared by the CLI binary and in-process tests.
struct RunConfig {
  std::string subcommand;  // certify | expand | check-lemmas | kernel-scan | vdc-scan
  std::string config_path;
  std::string out_dir;
  uint64_t seed = 1;
  std::optional<double> quad_rel_tol;  // env/flag override
  std::optional<int> threads;          // env/flag override
};

// exit status: 0 success, 1 gate rejection or config error, 2 internal
// invariant violation
int run(const RunConfig& cfg);

}  // namespace carleson
