#pragma once

#include "carleson/oscint.hpp"

namespace carleson {

struct ConfigError : std::runtime_error {
  int line;
  ConfigError(int line_, const std::string& msg)
      : std::runtime_error("config line " + std::to_string(line_) + ": " + msg),
        line(line_) {}
};

// Line-based "key = value" config with '#' comments.  Phase lines use the
// key form "phase <degree>".  Duplicate keys are rejected with the line of
// the second occurrence.
struct ParsedConfig {
  std::map<std::string, std::pair<int, std::string>> values;  // key -> (line, value)
  std::string raw;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  const std::string& get(const std::string& key) const;
  int line_of(const std::string& key) const;
};

ParsedConfig parse_config_text(const std::string& text);

struct FamilySpec {
  PhaseFamily family;
  int l = 0;  // distinguished coordinate, defaults to n
  std::optional<StoppingValue> nu;
  std::optional<CongruenceResult> congruence;  // present when qmatrix was given
  bool gate_disabled = false;                  // scan-only escape hatch
};

// Family fields: n, theta (or qmatrix), phase <j> lines, optional l, r, nu.
// A qmatrix is diagonalized exactly; the phases are transformed by the
// rational congruence and the run proceeds only if the diagonal is already
// +-1 (otherwise the residual scales are irrational and symbolic work would
// be unsound; they are reported in the error).
FamilySpec family_from_config(const ParsedConfig& cfg);

KernelScanConfig scan_from_config(const ParsedConfig& cfg, const FamilySpec& fs,
                                  uint64_t seed);

struct VdcSpec {
  Poly base;       // scaled by each lambda in the grid
  int nvars = 1;
  int degree = 2;
  std::vector<double> lambdas;
  VdcBump bump = VdcBump::One;
  AdaptiveOptions quad;
};
VdcSpec vdc_from_config(const ParsedConfig& cfg);

}  // namespace carleson
