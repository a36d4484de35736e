#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "carleson/checks.hpp"
#include "carleson/oscint.hpp"

using namespace carleson;

namespace {

PhaseFamily family_yy() {  // n=2, theta=(1,-1), p2 = y1 y2
  QuadForm q(2, {1, -1});
  std::map<int, Poly> ph;
  Poly p2(2);
  p2.add_term(MultiIndex{1, 1}, Rational(1));
  ph.emplace(2, p2);
  return PhaseFamily(q, ph);
}

Certificate certify_yy(const PhaseFamily& f, long r) {
  StoppingValue sv;
  sv.r = r;
  sv.nu[2] = Rational(r);
  return certify(f, sv, ChangeOfVars(2, 2, f.q));
}

}  // namespace

TEST_CASE("gauss-legendre integrates low-degree polynomials exactly") {
  const GLRule& rule = gl_rule(8);
  double s0 = 0, s2 = 0, s6 = 0;
  for (int i = 0; i < 8; ++i) {
    s0 += rule.w[i];
    s2 += rule.w[i] * rule.x[i] * rule.x[i];
    s6 += rule.w[i] * std::pow(rule.x[i], 6);
  }
  CHECK(s0 == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s2 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(s6 == doctest::Approx(2.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("fresnel decay: slope -1/2 against reference quadrature") {
  std::vector<double> lx, ly;
  std::vector<double> lo = {0.0}, hi = {1.0};
  for (double lam : {100.0, 1000.0, 10000.0}) {
    Poly q(1);
    q.add_term(MultiIndex{2}, Rational(static_cast<long>(lam)));
    AdaptiveOptions opt;
    opt.base_panels = std::max(4, static_cast<int>(std::ceil(std::sqrt(lam))));
    VdcResult r = vdc_integral_check(q, 2, VdcBump::One, lo, hi, opt);
    CHECK(r.converged);
    CHECK(r.integral_abs <= 1.2 * r.bound);
    // high-resolution reference: doubled base panels, no adaptivity needed
    AdaptiveOptions ref = opt;
    ref.base_panels *= 4;
    VdcResult rr = vdc_integral_check(q, 2, VdcBump::One, lo, hi, ref);
    CHECK(r.integral_abs == doctest::Approx(rr.integral_abs).epsilon(1e-6));
    lx.push_back(std::log(r.lambda_norm));
    ly.push_back(std::log(r.integral_abs));
  }
  double slope = fit_slope(lx, ly);
  CHECK(slope < -0.45);
  CHECK(slope > -0.55);
}

TEST_CASE("vdc small-lambda limit and constant-phase invariance") {
  std::vector<double> lo = {-1.0}, hi = {1.0};
  AdaptiveOptions opt;
  // lambda -> 0: integral tends to the bump mass
  Poly q(1);
  q.add_term(MultiIndex{2}, make_rational(1, 1000000));
  VdcResult r = vdc_integral_check(q, 2, VdcBump::C1, lo, hi, opt);
  // integral of (1-x^2)^2 over [-1,1] = 16/15
  CHECK(r.integral_abs == doctest::Approx(16.0 / 15.0).epsilon(1e-4));

  // adding a constant never changes the modulus (and the norm ignores it)
  Poly base(1);
  base.add_term(MultiIndex{2}, Rational(37));
  Poly shifted = base + Poly::constant(1, Rational(5));
  VdcResult a = vdc_integral_check(base, 2, VdcBump::C1, lo, hi, opt);
  VdcResult b = vdc_integral_check(shifted, 2, VdcBump::C1, lo, hi, opt);
  CHECK(a.lambda_norm == b.lambda_norm);
  CHECK(a.integral_abs == doctest::Approx(b.integral_abs).epsilon(1e-9));

  // constant-only phase rejected: no non-constant coefficient to measure
  CHECK_THROWS_AS(vdc_integral_check(Poly::constant(1, Rational(3)), 2, VdcBump::One, lo,
                                     hi, opt),
                  std::invalid_argument);
}

TEST_CASE("sublevel measures: closed forms and refinement stability") {
  Poly x = Poly::variable(1, 0);
  CHECK(sublevel_measure(x, 0.1).measure == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(sublevel_measure(x.scaled(Rational(10)), 0.1).measure ==
        doctest::Approx(0.02).epsilon(1e-6));
  // min(2, 2 rho / lambda) saturates for tiny lambda
  CHECK(sublevel_measure(x.scaled(make_rational(1, 100)), 0.1).measure ==
        doctest::Approx(2.0).epsilon(1e-9));
  Poly xsq = Poly::monomial(MultiIndex{2}, Rational(1));
  CHECK(sublevel_measure(xsq, 0.04).measure == doctest::Approx(0.4).epsilon(1e-2));

  // x^2 - y^2 on the unit disk: grid vs 10x finer grid within 10%, and both
  // near the closed form via the rotated coordinates
  Poly hyp(2);
  hyp.add_term(MultiIndex{2, 0}, Rational(1));
  hyp.add_term(MultiIndex{0, 2}, Rational(-1));
  SublevelResult coarse = sublevel_measure(hyp, 0.05, 200);
  SublevelResult fine = sublevel_measure(hyp, 0.05, 2000);
  CHECK(std::fabs(coarse.measure - fine.measure) <= 0.1 * fine.measure);
  const double c = 0.025;  // |uv| <= c after rotation
  auto F = [](double u) { return 0.5 * (u * std::sqrt(1 - u * u) + std::asin(u)); };
  double up = std::sqrt((1 + std::sqrt(1 - 4 * c * c)) / 2);
  double um = std::sqrt((1 - std::sqrt(1 - 4 * c * c)) / 2);
  double analytic = 4.0 * (M_PI / 4.0 - (F(up) - F(um) - c * std::log(up / um)));
  CHECK(fine.measure == doctest::Approx(analytic).epsilon(1e-3));
}

TEST_CASE("bump: C1 cutoff with unit sup norm and ball support") {
  std::vector<double> origin = {0.0, 0.0};
  CHECK(BumpSpec::eta(origin) == 1.0);
  std::vector<double> edge = {1.0, 0.0};
  CHECK(BumpSpec::eta(edge) == 0.0);
  std::vector<double> outside = {0.9, 0.9};
  CHECK(BumpSpec::eta(outside) == 0.0);
  BumpSpec bump;
  std::vector<double> u = {0.5, 0.0}, z = {-0.25, 0.1};
  std::vector<double> upz = {0.25, 0.1};
  CHECK(bump.psi(u, z) == doctest::Approx(BumpSpec::eta(upz) * BumpSpec::eta(z)));
  std::vector<double> far = {3.0, 0.0};
  CHECK(bump.psi(far, z) == 0.0);
  CHECK(default_c0(4) == doctest::Approx(0.25));
  std::vector<double> pick = {0.3, -0.9, 0.9};
  CHECK(sector_of(pick) == 2);  // smallest index among the argmax set
}

TEST_CASE("K# trivial bound, positivity at zero modulation, sector support") {
  PhaseFamily f = family_yy();
  ChangeOfVars cov(2, 2, f.q);
  KernelEvaluator eval(f, cov);
  BumpSpec bump;
  bump.c0 = default_c0(2);
  AdaptiveOptions opt;
  const double vol = 2.0 / bump.c0;  // 1-d sigma domain length

  std::vector<double> zero = {0.0};
  Rng rng(5);
  std::uniform_real_distribution<double> ud(-1.5, 1.5), td(-0.9, 0.9), nd(-50, 50);
  int evaluated = 0;
  for (int it = 0; it < 40; ++it) {
    std::vector<double> u = {ud(rng), ud(rng)};
    double norm = std::hypot(u[0], u[1]);
    if (norm < 0.2) continue;
    double tau = td(rng);
    std::vector<double> nu = {nd(rng)}, mu = {nd(rng)};
    KernelEval ke = eval.eval_K_sharp(u, tau, nu, mu, bump, opt);
    CHECK(std::abs(ke.value) <= vol + 1e-9);
    if (std::fabs(u[1]) / norm < bump.c0) CHECK(std::abs(ke.value) == 0.0);
    ++evaluated;
  }
  CHECK(evaluated >= 30);

  // nu = mu = 0: the integral of a nonnegative bump, real and positive
  std::vector<double> u = {0.3, 0.8};
  KernelEval k0 = eval.eval_K_sharp(u, 0.2, zero, zero, bump, opt);
  CHECK(k0.converged);
  CHECK(k0.value.imag() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(k0.value.real() > 0.1);
}

TEST_CASE("K# self-convergence across two grid doublings") {
  PhaseFamily f = family_yy();
  ChangeOfVars cov(2, 2, f.q);
  KernelEvaluator eval(f, cov);
  BumpSpec bump;
  bump.c0 = default_c0(2);
  std::vector<double> u = {0.4, 0.9};
  std::vector<double> nu = {10.0}, mu = {4.0};
  auto fixed_eval = [&](int panels) {
    AdaptiveOptions opt;
    opt.base_panels = panels;
    opt.max_refinements = 0;
    opt.abs_tol = 0;
    opt.rel_tol = 0;
    return eval.eval_K_sharp(u, 0.25, nu, mu, bump, opt).value;
  };
  auto v1 = fixed_eval(32);
  auto v2 = fixed_eval(64);
  auto v3 = fixed_eval(128);
  CHECK(std::abs(v2 - v1) < 1e-6);
  CHECK(std::abs(v3 - v2) < 1e-6);
}

TEST_CASE("compiled sigma-coefficients match direct phase evaluation") {
  Rng rng(43);
  for (int it = 0; it < 4; ++it) {
    const int n = 2 + (it % 2);
    PhaseFamily f = random_admissible_family(rng, n, 4);
    ChangeOfVars cov(n, n, f.q);
    KernelEvaluator eval(f, cov);
    std::uniform_real_distribution<double> ud(-1.2, 1.2), sd(-1.5, 1.5), nd(-20, 20);
    const int L = static_cast<int>(f.lambda().size());
    for (int pt = 0; pt < 8; ++pt) {
      std::vector<double> u(n);
      double norm = 0;
      do {
        norm = 0;
        for (double& x : u) {
          x = ud(rng);
          norm += x * x;
        }
        norm = std::sqrt(norm);
      } while (norm < 0.3);
      double tau = 0.5 * sd(rng);
      auto pc = eval.compile_point(u, tau);
      std::vector<double> nu(L), mu(L), sigma(n - 1);
      for (double& x : nu) x = nd(rng);
      for (double& x : mu) x = nd(rng);
      for (double& x : sigma) x = sd(rng);
      double a = eval.phase_compiled(pc, nu, mu, sigma);
      double b = eval.phase_direct(u, tau, sigma, nu, mu);
      CHECK(a == doctest::Approx(b).epsilon(1e-9));
    }
  }
}

TEST_CASE("K_flat: positivity, trivial bound, decay in r") {
  PhaseFamily f = family_yy();
  BumpSpec bump;
  AdaptiveOptions opt;
  std::vector<double> u = {0.25, 0.4};
  std::vector<double> zero = {0.0};
  KernelEval k0 = eval_K_flat(f, u, zero, zero, bump, opt);
  CHECK(k0.converged);
  CHECK(k0.value.imag() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(k0.value.real() > 0.0);
  // trivial bound: |K_flat| <= integral of |Psi| <= (16/15)^2 (product bump mass)
  const double mass = (16.0 / 15.0) * (16.0 / 15.0);
  std::vector<double> lx, ly;
  for (double r : {10.0, 40.0, 160.0, 640.0}) {
    std::vector<double> nu = {r}, mu = {1.5 * r};
    AdaptiveOptions o2 = opt;
    o2.base_panels = std::max(4, static_cast<int>(std::ceil(std::sqrt(r) / 2)));
    KernelEval ke = eval_K_flat(f, u, nu, mu, bump, o2);
    CHECK(std::abs(ke.value) <= mass + 1e-9);
    lx.push_back(std::log(r));
    ly.push_back(std::log(std::max(std::abs(ke.value), 1e-300)));
  }
  CHECK(fit_slope(lx, ly) < 0.0);
}

TEST_CASE("kernel decay scan: smoke test with monotone bad sets") {
  PhaseFamily f = family_yy();
  Certificate cert = certify_yy(f, 10);
  KernelScanConfig cfg;
  cfg.r_grid = {10.0, 100.0};
  cfg.nu_pattern[2] = 1.0;
  cfg.mu_samples = 3;
  cfg.u_grid = 8;
  cfg.tau_grid = 4;
  cfg.seed = 7;
  ScanReport rep = kernel_decay_scan(f, cfg, &cert);
  REQUIRE(rep.per_r.size() == 2);
  CHECK(rep.per_r[0].points >= 50);
  CHECK(rep.rows.size() ==
        static_cast<size_t>(rep.per_r[0].points + rep.per_r[1].points) * 3);
  CHECK(rep.per_r[1].gnu_fraction <= rep.per_r[0].gnu_fraction);
  CHECK(rep.per_r[1].fu_fraction <= rep.per_r[0].fu_fraction);
  CHECK(rep.per_r[1].max_abs_outside < rep.per_r[0].max_abs_outside);
  // mu-independence is structural: flags are constant across mu ids
  std::map<std::pair<double, size_t>, std::pair<bool, bool>> flags;
  size_t idx = 0;
  for (const auto& row : rep.rows) {
    size_t point_id = idx / 3;  // 3 mu samples per point, consecutive
    auto key = std::make_pair(row.r, point_id);
    auto it = flags.find(key);
    if (it == flags.end())
      flags[key] = {row.in_gnu, row.in_fu};
    else
      CHECK((it->second.first == row.in_gnu && it->second.second == row.in_fu));
    ++idx;
  }
  // nu == mu variant still decays: the D/E parts carry nu
  KernelScanConfig cfg2 = cfg;
  cfg2.mu_equals_nu = true;
  cfg2.mu_samples = 1;
  ScanReport rep2 = kernel_decay_scan(f, cfg2, &cert);
  CHECK(rep2.fitted_slope < -0.01);
}
