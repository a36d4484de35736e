#pragma once

#include <ostream>

#include <json.hpp>

#include "carleson/oscint.hpp"

namespace carleson {

// CSV columns: r, u1..un, tau, re, im, abs, in_Gnu, in_Fu, mu_sample_id
void write_scan_csv(const ScanReport& report, int n, std::ostream& os);
nlohmann::json scan_summary_json(const ScanReport& report, const KernelScanConfig& cfg,
                                 const std::string& config_hash);

struct VdcScanReport {
  struct Row {
    double lambda_norm = 0;
    double integral_abs = 0;
    double bound = 0;
    bool converged = false;
  };
  std::vector<Row> rows;
  double fitted_slope = 0;
  int degree = 2;

  struct SublevelRow {
    std::string name;
    double rho = 0;
    double measure = 0;
    double expected = 0;
  };
  std::vector<SublevelRow> sublevels;
};

void write_vdc_csv(const VdcScanReport& report, std::ostream& os);
nlohmann::json vdc_summary_json(const VdcScanReport& report, const std::string& config_hash);

}  // namespace carleson
