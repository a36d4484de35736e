#pragma once

#include "carleson/certificate_io.hpp"
#include "carleson/quadrature.hpp"

namespace carleson {

// C^1 bump machinery: eta(x) = max(0, 1-|x|^2)^2 supported in B_1, and
// Psi(u,z) = eta(u+z) eta(z) supported in B_2 x B_1.  The paper leaves Psi
// generic; this is the default used everywhere.
struct BumpSpec {
  double c0 = 0.25;  // sector constant
  static double eta(std::span<const double> x);
  double psi(std::span<const double> u, std::span<const double> z) const;
};

double default_c0(int n);  // 1/(2 sqrt n)
// sector selection: smallest l (1-based) among arg max |u_l|
int sector_of(std::span<const double> u);

struct KernelEval {
  std::complex<double> value{0.0, 0.0};
  bool converged = false;
  int refinements = 0;
};

// Numeric kernel evaluator for one (family, l).  The sigma-expansion is
// compiled once; per (u, tau) the B/D/E pieces collapse to numbers, so each
// (nu, mu) pair costs a dense polynomial in sigma plus the quadrature loop.
class KernelEvaluator {
 public:
  KernelEvaluator(const PhaseFamily& f, const ChangeOfVars& cov,
                  bool allow_inadmissible = false);

  const PhaseFamily& family() const { return f_; }
  const ChangeOfVars& cov() const { return cov_; }
  const std::vector<MultiIndex>& gammas() const { return gammas_; }

  struct PointCoeffs {
    std::vector<double> b, d, e;  // [gamma * L + k]
    std::vector<double> a0, z0;   // constant sigma term: p_j(u + u~ tau/|u|), p_j(u~ tau/|u|)
  };
  PointCoeffs compile_point(std::span<const double> u, double tau) const;

  // sigma-polynomial coefficients for given stopping values (lambda order)
  void coefficients(const PointCoeffs& pc, std::span<const double> nu,
                    std::span<const double> mu, std::vector<double>& c_out,
                    double& c0_out) const;

  double phase_compiled(const PointCoeffs& pc, std::span<const double> nu,
                        std::span<const double> mu, std::span<const double> sigma) const;
  // direct evaluation of P_nu(u+z) - P_mu(z); independent of the expansion
  double phase_direct(std::span<const double> u, double tau, std::span<const double> sigma,
                      std::span<const double> nu, std::span<const double> mu) const;

  KernelEval eval_K_sharp(std::span<const double> u, double tau, std::span<const double> nu,
                          std::span<const double> mu, const BumpSpec& bump,
                          const AdaptiveOptions& opt) const;

 private:
  PhaseFamily f_;
  ChangeOfVars cov_;
  std::vector<int> lambda_;
  std::vector<MultiIndex> gammas_;
  std::vector<HomoElem> bent_, dent_, eent_;  // flattened [gamma * L + k]
};

// K_flat: n-dimensional analogue without the change of variables.
KernelEval eval_K_flat(const PhaseFamily& f, std::span<const double> u,
                       std::span<const double> nu, std::span<const double> mu,
                       const BumpSpec& bump, const AdaptiveOptions& opt);

// van der Corput oscillatory-integral check: quadrature of e^{i Q} psi over a
// box against the bound |lambda|^{-1/d}.
enum class VdcBump { One, C1 };
struct VdcResult {
  double integral_abs = 0;
  double bound = 0;
  double lambda_norm = 0;  // sum |coeff| over non-constant terms
  bool converged = false;
};
VdcResult vdc_integral_check(const Poly& q, int degree, VdcBump bump,
                             std::span<const double> lo, std::span<const double> hi,
                             const AdaptiveOptions& opt);

// Sublevel measure |{x in B_1(R^m): |Q(x)| <= rho}| by midpoint-grid counting.
struct SublevelResult {
  double measure = 0;
  int cells_per_dim = 0;
};
SublevelResult sublevel_measure(const Poly& q, double rho, int cells_per_dim = 1000);

// Kernel decay scan driven by a certificate.
struct KernelScanConfig {
  std::vector<double> r_grid;
  std::map<int, double> nu_pattern;  // nu(r) = r * pattern, |pattern|_1 in [1,2]
  int mu_samples = 10;
  int u_grid = 12;
  int tau_grid = 8;
  double eps1 = 0.2;
  double eps2 = 0.6;
  double c0 = 0.0;  // 0 = default_c0(n)
  AdaptiveOptions quad;
  uint64_t seed = 1;
  bool negative_control = false;  // no exclusions, mu == nu resonant direction
  bool mu_equals_nu = false;
  int threads = 0;  // 0 = hardware_concurrency
};

struct ScanRow {
  double r;
  std::vector<double> u;
  double tau;
  double re, im, abs;
  bool in_gnu, in_fu;
  int mu_id;
};

struct ScanPerR {
  double r = 0;
  double max_abs_outside = 0;  // max |K#| off both bad sets, over all mu
  double max_abs_all = 0;
  double gnu_fraction = 0, fu_fraction = 0;
  double c0_threshold = 0;  // C0 r^{eps1}
  int points = 0;
  int quad_failures = 0;
};

struct ScanReport {
  std::vector<ScanRow> rows;
  std::vector<ScanPerR> per_r;
  double fitted_slope = 0;      // log max-outside vs log r
  double fitted_slope_all = 0;  // log max-all vs log r
  double calibrated_C0 = 0;
};

// cert may be null only in negative-control mode.
ScanReport kernel_decay_scan(const PhaseFamily& f, const KernelScanConfig& cfg,
                             const Certificate* cert);

// evaluate a (u,tau,s,...) HomoElem at doubles; extras follow layout order
double homo_eval_double(const HomoElem& e, std::span<const double> u, double tau,
                        std::span<const double> extras);

}  // namespace carleson
