#include "carleson/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "carleson/checks.hpp"
#include "carleson/config.hpp"
#include "carleson/poly_io.hpp"
#include "carleson/scan_io.hpp"

namespace carleson {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

int run_certify(const ParsedConfig& cfg, const std::filesystem::path& out) {
  FamilySpec fs = family_from_config(cfg);
  if (!fs.nu) throw ConfigError(0, "certify needs r and nu");
  ChangeOfVars cov(fs.family.n, fs.l, fs.family.q);
  Certificate cert = certify(fs.family, *fs.nu, cov);
  std::string doc = certificate_to_text(cert, fs.family);
  RecheckReport rep = recheck_certificate(cert, fs.family);
  doc += "config_hash = " + fnv1a_hex(cfg.raw) + "\n";
  doc += "recheck_digest = " + rep.digest() + "\n";
  write_file(out / "certificate.txt", doc);
  write_file(out / "recheck.txt", rep.to_text());
  std::cout << "case " << to_string(cert.label);
  if (cert.subcase) std::cout << " subcase " << static_cast<int>(*cert.subcase);
  std::cout << ", m0 = " << cert.m0 << ", d0 = " << cert.d0 << ", gamma = "
            << cert.gamma.str() << "\n";
  std::cout << "witness " << (rep.ok() ? "re-check PASS" : "re-check FAIL") << ", digest "
            << rep.digest() << "\n";
  return rep.ok() ? 0 : 2;
}

int run_expand(const ParsedConfig& cfg, const std::filesystem::path& out) {
  FamilySpec fs = family_from_config(cfg);
  ChangeOfVars cov(fs.family.n, fs.l, fs.family.q);
  SigmaExpansion exp = expand_phase_in_sigma(fs.family, cov, fs.gate_disabled);
  std::ostringstream os;
  os << "carleson-sigma-expansion v1\n";
  os << "family_hash = " << fnv1a_hex(fs.family.canonical_text()) << "\n";
  os << "config_hash = " << fnv1a_hex(cfg.raw) << "\n";
  os << "n = " << fs.family.n << "\nl = " << fs.l << "\n";
  std::vector<std::string> names = homo_var_names(fs.family.n);
  for (const auto& [gamma, parts] : exp.coeffs) {
    os << "gamma " << gamma.str() << "\n";
    for (const auto& [j, e] : parts.bpart)
      os << "  B j=" << j << " : " << homo_to_text(e, names) << "\n";
    for (const auto& [j, e] : parts.dpart)
      os << "  D j=" << j << " : " << homo_to_text(e, names) << "\n";
    for (const auto& [j, e] : parts.epart)
      os << "  E j=" << j << " : " << homo_to_text(e, names) << "\n";
  }
  write_file(out / "expansion.txt", os.str());
  std::cout << "expanded " << exp.coeffs.size() << " sigma exponents\n";
  return 0;
}

int run_check_lemmas(const ParsedConfig& cfg, const std::filesystem::path& out,
                     uint64_t seed) {
  std::vector<CheckResult> results = run_all_checks(seed);
  std::ostringstream os;
  os << "carleson-lemma-checks v1\n";
  os << "seed = " << seed << "\n";
  os << "config_hash = " << fnv1a_hex(cfg.raw) << "\n";
  bool all_ok = true;
  for (const auto& r : results) {
    os << (r.ok() ? "PASS" : "FAIL") << " " << r.name << " instances=" << r.instances
       << " failures=" << r.failures;
    if (!r.detail.empty()) os << " (" << r.detail << ")";
    os << "\n";
    all_ok = all_ok && r.ok();
  }
  write_file(out / "lemmas.txt", os.str());
  std::cout << os.str();
  return all_ok ? 0 : 2;
}

int run_kernel_scan(const ParsedConfig& cfg, const std::filesystem::path& out,
                    const RunConfig& rc) {
  FamilySpec fs = family_from_config(cfg);
  KernelScanConfig sc = scan_from_config(cfg, fs, rc.seed);
  if (rc.quad_rel_tol) sc.quad.rel_tol = *rc.quad_rel_tol;
  if (rc.threads) sc.threads = *rc.threads;

  std::optional<Certificate> cert;
  if (!sc.negative_control) {
    // certify once with nu = r0 * pattern; the symbolic certificate is
    // reused across the whole r grid
    auto exact_from_double = [](double d, const std::string& what) {
      if (d != std::floor(d) || std::fabs(d) > 1e15)
        throw ConfigError(0, what + " must be integral for exact certification");
      return Rational(static_cast<long>(d));
    };
    StoppingValue sv;
    sv.r = exact_from_double(sc.r_grid.front(), "r_grid[0]");
    for (const auto& [j, v] : sc.nu_pattern)
      sv.nu[j] = exact_from_double(v * sc.r_grid.front(), "nu_pattern * r_grid[0]");
    ChangeOfVars cov(fs.family.n, fs.l, fs.family.q);
    cert = certify(fs.family, sv, cov);
    write_file(out / "certificate.txt", certificate_to_text(*cert, fs.family));
  }
  ScanReport report = kernel_decay_scan(fs.family, sc, cert ? &*cert : nullptr);
  std::ofstream csv(out / "scan.csv", std::ios::binary);
  write_scan_csv(report, fs.family.n, csv);
  nlohmann::json j = scan_summary_json(report, sc, fnv1a_hex(cfg.raw));
  write_file(out / "summary.json", j.dump(2) + "\n");
  std::cout << "kernel scan: slope_outside = " << report.fitted_slope
            << ", slope_all = " << report.fitted_slope_all << "\n";
  return 0;
}

int run_vdc_scan(const ParsedConfig& cfg, const std::filesystem::path& out,
                 const RunConfig& rc) {
  VdcSpec spec = vdc_from_config(cfg);
  if (rc.quad_rel_tol) spec.quad.rel_tol = *rc.quad_rel_tol;
  VdcScanReport report;
  report.degree = spec.degree;
  std::vector<double> lo(spec.nvars, spec.nvars == 1 ? 0.0 : -1.0);
  std::vector<double> hi(spec.nvars, 1.0);
  AdaptiveOptions opt = spec.quad;
  std::vector<double> lx, ly;
  for (double lam : spec.lambdas) {
    Poly scaled(spec.nvars);
    for (const auto& [a, c] : spec.base.terms())
      scaled.add_term(a, c * rational_from_string(std::to_string(static_cast<long>(lam))));
    opt.base_panels = std::max(spec.quad.base_panels,
                               static_cast<int>(std::ceil(std::sqrt(lam))));
    VdcResult res = vdc_integral_check(scaled, spec.degree, spec.bump, lo, hi, opt);
    report.rows.push_back({res.lambda_norm, res.integral_abs, res.bound, res.converged});
    lx.push_back(std::log(res.lambda_norm));
    ly.push_back(std::log(std::max(res.integral_abs, 1e-300)));
  }
  report.fitted_slope = fit_slope(lx, ly);

  // built-in sublevel fixtures with closed-form expectations
  {
    Poly x1 = Poly::variable(1, 0);
    SublevelResult a = sublevel_measure(x1, 0.1);
    report.sublevels.push_back({"x", 0.1, a.measure, 0.2});
    Poly x10 = x1.scaled(Rational(10));
    SublevelResult b = sublevel_measure(x10, 0.1);
    report.sublevels.push_back({"10x", 0.1, b.measure, 0.02});
    Poly xsq = Poly::monomial(MultiIndex{2}, Rational(1));
    SublevelResult c = sublevel_measure(xsq, 0.04);
    report.sublevels.push_back({"x^2", 0.04, c.measure, 0.4});
  }

  std::ofstream csv(out / "vdc.csv", std::ios::binary);
  write_vdc_csv(report, csv);
  nlohmann::json j = vdc_summary_json(report, fnv1a_hex(cfg.raw));
  write_file(out / "summary.json", j.dump(2) + "\n");
  std::cout << "vdc scan: fitted slope = " << report.fitted_slope << " (target -1/"
            << spec.degree << ")\n";
  return 0;
}

}  // namespace

int run(const RunConfig& rc) {
  try {
    std::filesystem::path out(rc.out_dir);
    std::filesystem::create_directories(out);
    ParsedConfig cfg = parse_config_text(read_file(rc.config_path));
    if (rc.subcommand == "certify") return run_certify(cfg, out);
    if (rc.subcommand == "expand") return run_expand(cfg, out);
    if (rc.subcommand == "check-lemmas") return run_check_lemmas(cfg, out, rc.seed);
    if (rc.subcommand == "kernel-scan") return run_kernel_scan(cfg, out, rc);
    if (rc.subcommand == "vdc-scan") return run_vdc_scan(cfg, out, rc);
    std::cerr << "unknown subcommand '" << rc.subcommand << "'\n";
    return 1;
  } catch (const GateRejection& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    std::cerr << "reason_code = " << to_string(e.reason) << "\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const InternalInvariantError& e) {
    std::cerr << "internal invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace carleson
