#include "carleson/scan_io.hpp"

#include <cstdio>

namespace carleson {

namespace {

std::string fmt(double v) {
  char buf[40];
  snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

void write_scan_csv(const ScanReport& report, int n, std::ostream& os) {
  os << "r";
  for (int i = 1; i <= n; ++i) os << ",u" << i;
  os << ",tau,re,im,abs,in_Gnu,in_Fu,mu_sample_id\n";
  for (const auto& row : report.rows) {
    os << fmt(row.r);
    for (double ui : row.u) os << "," << fmt(ui);
    os << "," << fmt(row.tau) << "," << fmt(row.re) << "," << fmt(row.im) << ","
       << fmt(row.abs) << "," << (row.in_gnu ? 1 : 0) << "," << (row.in_fu ? 1 : 0) << ","
       << row.mu_id << "\n";
  }
}

nlohmann::json scan_summary_json(const ScanReport& report, const KernelScanConfig& cfg,
                                 const std::string& config_hash) {
  nlohmann::json j;
  j["config_hash"] = config_hash;
  j["fitted_slope_outside"] = report.fitted_slope;
  j["fitted_slope_all"] = report.fitted_slope_all;
  j["calibrated_C0"] = report.calibrated_C0;
  j["eps1"] = cfg.eps1;
  j["eps2"] = cfg.eps2;
  j["negative_control"] = cfg.negative_control;
  nlohmann::json per = nlohmann::json::array();
  for (const auto& p : report.per_r) {
    nlohmann::json row;
    row["r"] = p.r;
    row["max_abs_outside"] = p.max_abs_outside;
    row["max_abs_all"] = p.max_abs_all;
    row["gnu_fraction"] = p.gnu_fraction;
    row["fu_fraction"] = p.fu_fraction;
    row["points"] = p.points;
    row["quad_failures"] = p.quad_failures;
    per.push_back(row);
  }
  j["per_r"] = per;
  return j;
}

void write_vdc_csv(const VdcScanReport& report, std::ostream& os) {
  os << "lambda_norm,integral_abs,bound,converged\n";
  for (const auto& row : report.rows)
    os << fmt(row.lambda_norm) << "," << fmt(row.integral_abs) << "," << fmt(row.bound)
       << "," << (row.converged ? 1 : 0) << "\n";
}

nlohmann::json vdc_summary_json(const VdcScanReport& report, const std::string& config_hash) {
  nlohmann::json j;
  j["config_hash"] = config_hash;
  j["fitted_slope"] = report.fitted_slope;
  j["degree"] = report.degree;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"lambda_norm", row.lambda_norm},
                    {"integral_abs", row.integral_abs},
                    {"bound", row.bound},
                    {"converged", row.converged}});
  }
  j["rows"] = rows;
  nlohmann::json subs = nlohmann::json::array();
  for (const auto& s : report.sublevels) {
    subs.push_back({{"name", s.name},
                    {"rho", s.rho},
                    {"measure", s.measure},
                    {"expected", s.expected}});
  }
  j["sublevel_checks"] = subs;
  return j;
}

}  // namespace carleson
