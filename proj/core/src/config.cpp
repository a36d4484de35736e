#include "carleson/config.hpp"

#include <sstream>

#include "carleson/poly_io.hpp"

namespace carleson {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  size_t b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

int parse_int(const std::string& s, int line, const std::string& what) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (...) {
    throw ConfigError(line, "bad integer for " + what + ": '" + s + "'");
  }
}

double parse_double(const std::string& s, int line, const std::string& what) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (...) {
    throw ConfigError(line, "bad number for " + what + ": '" + s + "'");
  }
}

}  // namespace

const std::string& ParsedConfig::get(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end())
    throw ConfigError(0, "missing required key '" + key + "'");
  return it->second.second;
}

int ParsedConfig::line_of(const std::string& key) const {
  auto it = values.find(key);
  return it == values.end() ? 0 : it->second.first;
}

ParsedConfig parse_config_text(const std::string& text) {
  ParsedConfig cfg;
  cfg.raw = text;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(lineno, "expected 'key = value', got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(lineno, "empty key");
    // normalize inner whitespace of "phase  3" style keys
    std::vector<std::string> parts = split_ws(key);
    std::string norm;
    for (size_t i = 0; i < parts.size(); ++i) norm += (i ? " " : "") + parts[i];
    if (cfg.values.count(norm))
      throw ConfigError(lineno, "duplicate key '" + norm + "' (first at line " +
                                    std::to_string(cfg.values[norm].first) + ")");
    cfg.values[norm] = {lineno, value};
  }
  return cfg;
}

namespace {

std::map<int, Rational> parse_degree_rationals(const std::string& s, int line,
                                               const std::string& what) {
  std::map<int, Rational> out;
  for (const std::string& tok : split_ws(s)) {
    size_t colon = tok.find(':');
    if (colon == std::string::npos)
      throw ConfigError(line, what + " entries need the form degree:value, got '" + tok + "'");
    int j = parse_int(tok.substr(0, colon), line, what + " degree");
    try {
      out[j] = rational_from_string(tok.substr(colon + 1));
    } catch (const std::exception& e) {
      throw ConfigError(line, what + ": " + e.what());
    }
  }
  return out;
}

}  // namespace

FamilySpec family_from_config(const ParsedConfig& cfg) {
  if (!cfg.has("n")) throw ConfigError(0, "missing required key 'n'");
  const int n = parse_int(cfg.get("n"), cfg.line_of("n"), "n");
  if (n < 1) throw ConfigError(cfg.line_of("n"), "n must be >= 1");

  QuadForm q;
  std::optional<CongruenceResult> congruence;
  std::vector<std::vector<Rational>> transform;
  if (cfg.has("qmatrix")) {
    if (cfg.has("theta"))
      throw ConfigError(cfg.line_of("qmatrix"), "give either theta or qmatrix, not both");
    const int line = cfg.line_of("qmatrix");
    std::vector<std::vector<Rational>> mat;
    std::istringstream rows(cfg.get("qmatrix"));
    std::string rowtext;
    while (std::getline(rows, rowtext, ';')) {
      std::vector<Rational> row;
      for (const std::string& tok : split_ws(rowtext)) {
        try {
          row.push_back(rational_from_string(tok));
        } catch (const std::exception& e) {
          throw ConfigError(line, std::string("qmatrix: ") + e.what());
        }
      }
      mat.push_back(row);
    }
    if (static_cast<int>(mat.size()) != n)
      throw ConfigError(line, "qmatrix needs " + std::to_string(n) + " rows");
    try {
      congruence = normalize_quadratic_form(mat);
    } catch (const std::exception& e) {
      throw ConfigError(line, std::string("qmatrix: ") + e.what());
    }
    for (const Rational& a : congruence->diag) {
      if (a != 1 && a != -1) {
        std::string scales;
        for (double sc : congruence->scales) scales += " " + std::to_string(sc);
        throw ConfigError(line,
                          "qmatrix diagonalizes to non-unit entries; residual scales are" +
                              scales + "; rescale the form to +-1 before symbolic runs");
      }
    }
    q = congruence->form;
    transform = congruence->transform;
  } else {
    const int line = cfg.line_of("theta");
    if (!cfg.has("theta")) throw ConfigError(0, "missing required key 'theta' (or qmatrix)");
    std::vector<int> theta;
    for (const std::string& tok : split_ws(cfg.get("theta")))
      theta.push_back(parse_int(tok, line, "theta"));
    if (static_cast<int>(theta.size()) != n)
      throw ConfigError(line, "theta needs exactly n entries");
    for (int t : theta)
      if (t != 1 && t != -1) throw ConfigError(line, "theta entries must be +1 or -1");
    q = QuadForm(n, theta);
  }

  std::map<int, Poly> phases;
  for (const auto& [key, lv] : cfg.values) {
    if (key.rfind("phase ", 0) != 0) continue;
    int j = parse_int(key.substr(6), lv.first, "phase degree");
    Poly p;
    try {
      p = poly_from_text(lv.second, n);
    } catch (const std::exception& e) {
      throw ConfigError(lv.first, std::string("phase: ") + e.what());
    }
    if (!transform.empty()) {
      std::vector<Poly> args;
      for (int i = 0; i < n; ++i) {
        Poly ai(n);
        for (int k = 0; k < n; ++k)
          ai += Poly::variable(n, k).scaled(transform[i][k]);
        args.push_back(ai);
      }
      p = poly_at_polys(p, args);
    }
    phases.emplace(j, std::move(p));
  }
  if (phases.empty()) throw ConfigError(0, "no 'phase <degree>' lines present");

  FamilySpec out;
  try {
    out.family = PhaseFamily(q, std::move(phases));
  } catch (const std::exception& e) {
    throw ConfigError(0, e.what());
  }
  out.congruence = congruence;
  out.l = cfg.has("l") ? parse_int(cfg.get("l"), cfg.line_of("l"), "l") : n;
  if (out.l < 1 || out.l > n)
    throw ConfigError(cfg.line_of("l"), "l must lie in [1, n]");
  if (cfg.has("gate_disabled")) {
    const std::string& v = cfg.get("gate_disabled");
    out.gate_disabled = (v == "true" || v == "1");
  }
  if (cfg.has("r") || cfg.has("nu")) {
    if (!cfg.has("r") || !cfg.has("nu"))
      throw ConfigError(cfg.line_of(cfg.has("r") ? "r" : "nu"), "r and nu come together");
    StoppingValue sv;
    try {
      sv.r = rational_from_string(cfg.get("r"));
    } catch (const std::exception& e) {
      throw ConfigError(cfg.line_of("r"), std::string("r: ") + e.what());
    }
    sv.nu = parse_degree_rationals(cfg.get("nu"), cfg.line_of("nu"), "nu");
    out.nu = sv;
  }
  return out;
}

KernelScanConfig scan_from_config(const ParsedConfig& cfg, const FamilySpec& fs,
                                  uint64_t seed) {
  KernelScanConfig sc;
  sc.seed = seed;
  if (!cfg.has("r_grid")) throw ConfigError(0, "kernel-scan needs r_grid");
  for (const std::string& tok : split_ws(cfg.get("r_grid")))
    sc.r_grid.push_back(parse_double(tok, cfg.line_of("r_grid"), "r_grid"));
  if (sc.r_grid.size() < 2) throw ConfigError(cfg.line_of("r_grid"), "r_grid needs >= 2 values");
  if (!cfg.has("nu_pattern")) throw ConfigError(0, "kernel-scan needs nu_pattern");
  for (const auto& [j, v] :
       parse_degree_rationals(cfg.get("nu_pattern"), cfg.line_of("nu_pattern"), "nu_pattern"))
    sc.nu_pattern[j] = to_double(v);
  auto opt_int = [&](const char* key, int& dst) {
    if (cfg.has(key)) dst = parse_int(cfg.get(key), cfg.line_of(key), key);
  };
  auto opt_double = [&](const char* key, double& dst) {
    if (cfg.has(key)) dst = parse_double(cfg.get(key), cfg.line_of(key), key);
  };
  opt_int("mu_samples", sc.mu_samples);
  opt_int("u_grid", sc.u_grid);
  opt_int("tau_grid", sc.tau_grid);
  opt_double("eps1", sc.eps1);
  opt_double("eps2", sc.eps2);
  opt_double("c0", sc.c0);
  opt_double("quad_rel_tol", sc.quad.rel_tol);
  opt_double("quad_abs_tol", sc.quad.abs_tol);
  if (cfg.has("negative_control"))
    sc.negative_control = cfg.get("negative_control") == "true" || cfg.get("negative_control") == "1";
  if (cfg.has("mu_equals_nu"))
    sc.mu_equals_nu = cfg.get("mu_equals_nu") == "true" || cfg.get("mu_equals_nu") == "1";
  if (sc.negative_control && !fs.gate_disabled && !check_admissibility(fs.family).ok)
    throw ConfigError(0, "negative-control scan on an inadmissible family needs gate_disabled = true");
  return sc;
}

VdcSpec vdc_from_config(const ParsedConfig& cfg) {
  VdcSpec spec;
  spec.nvars = cfg.has("vdc_nvars")
                   ? parse_int(cfg.get("vdc_nvars"), cfg.line_of("vdc_nvars"), "vdc_nvars")
                   : 1;
  if (!cfg.has("vdc_phase")) throw ConfigError(0, "vdc-scan needs vdc_phase");
  try {
    spec.base = poly_from_text(cfg.get("vdc_phase"), spec.nvars, "x");
  } catch (const std::exception& e) {
    throw ConfigError(cfg.line_of("vdc_phase"), std::string("vdc_phase: ") + e.what());
  }
  spec.degree = cfg.has("vdc_degree")
                    ? parse_int(cfg.get("vdc_degree"), cfg.line_of("vdc_degree"), "vdc_degree")
                    : std::max(1, spec.base.total_degree());
  if (!cfg.has("vdc_lambda")) throw ConfigError(0, "vdc-scan needs vdc_lambda");
  for (const std::string& tok : split_ws(cfg.get("vdc_lambda")))
    spec.lambdas.push_back(parse_double(tok, cfg.line_of("vdc_lambda"), "vdc_lambda"));
  if (spec.lambdas.size() < 2)
    throw ConfigError(cfg.line_of("vdc_lambda"), "vdc_lambda needs >= 2 values");
  if (cfg.has("vdc_bump")) {
    const std::string& b = cfg.get("vdc_bump");
    if (b == "one")
      spec.bump = VdcBump::One;
    else if (b == "c1")
      spec.bump = VdcBump::C1;
    else
      throw ConfigError(cfg.line_of("vdc_bump"), "vdc_bump must be 'one' or 'c1'");
  }
  if (cfg.has("quad_rel_tol"))
    spec.quad.rel_tol = parse_double(cfg.get("quad_rel_tol"), cfg.line_of("quad_rel_tol"),
                                     "quad_rel_tol");
  return spec;
}

}  // namespace carleson
