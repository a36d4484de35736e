#include "carleson/certificate_io.hpp"

#include <sstream>

#include "carleson/poly_io.hpp"

namespace carleson {

namespace {

std::string nu_names_poly(const Poly& p, int n, const std::vector<int>& lambda) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("u" + std::to_string(i + 1));
  for (int j : lambda) names.push_back("nu" + std::to_string(j));
  return poly_to_text(p, names);
}

}  // namespace

std::string certificate_to_text(const Certificate& cert, const PhaseFamily& f) {
  std::ostringstream os;
  os << "carleson-certificate v1\n";
  os << "family_hash = " << cert.family_hash << "\n";
  os << "n = " << cert.n << "\n";
  os << "l = " << cert.l << "\n";
  os << "theta =";
  for (int t : f.q.theta) os << " " << t;
  os << "\n";
  os << "lambda =";
  for (int j : cert.lambda) os << " " << j;
  os << "\n";
  os << "r = " << to_string(cert.nu.r) << "\n";
  os << "nu =";
  for (int j : cert.lambda) {
    auto it = cert.nu.nu.find(j);
    os << " " << j << ":" << to_string(it == cert.nu.nu.end() ? Rational(0) : it->second);
  }
  os << "\n";
  os << "case = " << to_string(cert.label) << "\n";
  if (cert.subcase) os << "subcase = " << static_cast<int>(*cert.subcase) << "\n";
  if (cert.m) os << "m = " << *cert.m << "\n";
  os << "m0 = " << cert.m0 << "\n";
  os << "dstar =";
  for (const auto& [j, g] : cert.dstar.entries) os << " " << j << ":" << g.str();
  os << "\n";
  os << "cols =";
  for (int j : cert.dstar.cols) os << " " << j;
  os << "\n";
  os << "gamma = " << cert.gamma.str() << "\n";
  os << "d0 = " << cert.d0 << "\n";
  os << "det_bstar = " << homo_to_text(cert.det_bstar, homo_var_names(cert.n)) << "\n";
  os << "s1 = " << cert.s1 << "\n";
  os << "s0 = " << cert.s0 << "\n";
  os << "W_sym = " << nu_names_poly(cert.W_sym, cert.n, cert.lambda) << "\n";
  os << "W_num = " << poly_to_text(cert.W_num) << "\n";
  os << "witness =";
  for (const auto& x : cert.witness) os << " " << to_string(x);
  os << "\n";
  os << "witness_value = " << to_string(cert.witness_value) << "\n";
  os << "magnitude_monomial = " << cert.magnitude.monomial.str() << "\n";
  os << "magnitude_coeff = " << to_string(cert.magnitude.coeff) << "\n";
  if (!cert.trace.empty()) {
    os << "trace =";
    for (const auto& t : cert.trace) {
      os << " m=" << t.m << ":S" << static_cast<int>(t.subcase) << ":"
         << (t.certified ? "cert" : "record");
      if (t.gamma2) os << ":" << t.gamma2->str();
    }
    os << "\n";
  }
  return os.str();
}

bool RecheckReport::ok() const {
  for (const auto& i : items)
    if (!i.ok) return false;
  return true;
}

std::string RecheckReport::to_text() const {
  std::ostringstream os;
  os << "carleson-certificate-recheck v1\n";
  for (const auto& i : items) {
    os << (i.ok ? "PASS" : "FAIL") << " " << i.name;
    if (!i.detail.empty()) os << " (" << i.detail << ")";
    os << "\n";
  }
  os << "digest = " << digest() << "\n";
  return os.str();
}

std::string RecheckReport::digest() const {
  std::string s;
  for (const auto& i : items) s += i.name + "=" + (i.ok ? "1" : "0") + ";";
  return fnv1a_hex(s);
}

RecheckReport recheck_certificate(const Certificate& cert, const PhaseFamily& f) {
  RecheckReport rep;
  auto add = [&](const std::string& name, bool ok, const std::string& detail = "") {
    rep.items.push_back({name, ok, detail});
  };
  ChangeOfVars cov(f.n, cert.l, f.q);

  add("family_hash", cert.family_hash == fnv1a_hex(f.canonical_text()));
  Admissibility gate = check_admissibility(f);
  add("admissible", gate.ok, gate.detail);
  if (!gate.ok) return rep;

  CaseInfo info = classify_case(f, cert.nu);
  add("case_label", info.label == cert.label && info.m0 == cert.m0,
      "expected " + to_string(info.label) + " m0=" + std::to_string(info.m0));

  // distinguished set shape and nonvanishing diagonal
  bool shape_ok = true;
  std::string shape_detail;
  for (const auto& [j, g] : cert.dstar.entries) {
    int expected_order = (j >= 3 || cert.label == CaseLabel::A) ? j : 1;
    if (g.order() != expected_order) {
      shape_ok = false;
      shape_detail = "entry " + std::to_string(j) + " has order " + std::to_string(g.order());
    }
    if (compute_B(f.phase(j), j, g, cert.l).is_zero()) {
      shape_ok = false;
      shape_detail = "B_{" + std::to_string(j) + ",gamma(j)} vanishes";
    }
  }
  add("dstar_shape", shape_ok, shape_detail);
  add("gamma_outside_dstar", !cert.dstar.contains(cert.gamma));

  Matrices M = build_matrices(f, cov);
  PolyMatrix bstar = assemble_Bstar(cert.dstar, M);
  bool tri = true;
  for (int r = 0; r < bstar.nrows(); ++r)
    for (int c = 0; c < r; ++c)
      if (!bstar.at(r, c).is_zero()) tri = false;
  add("bstar_upper_triangular", tri);

  HomoElem det_prod = det_Bstar(cert.dstar, M);
  add("det_bstar_matches", det_prod == cert.det_bstar);
  add("det_product_vs_cofactor", det_prod == det_generic(bstar));

  const bool s1case = cert.subcase && *cert.subcase == B2Subcase::S1;
  int expect_d0 = s1case ? 1 : det_prod.min_tau_degree();
  add("d0_rule", cert.d0 == expect_d0,
      "expected d0 = " + std::to_string(expect_d0));

  // matrix identity on the distinguished row, against the direct oracle
  {
    SigmaExpansion exp = expand_phase_in_sigma(f, cov);
    auto oracle = oracle_direct_expansion(f, cov);
    auto it = oracle.find(cert.gamma);
    bool row_ok = it != oracle.end() && exp.total_symbolic(cert.gamma) == it->second;
    // assemble the same row from the matrices
    ExpansionVars V{f.n, cert.lambda, true, false};
    auto var = [&](int idx) { return Poly::variable(V.count(), idx); };
    int r = M.B.row_index(cert.gamma);
    HomoElem row_sum = HomoElem::zero(f.n, V.count());
    for (int j : cert.lambda) {
      int c = M.B.col_index(j);
      row_sum += embed_uts(M.B.at(r, c), V).times_poly(var(V.nu(j)) - var(V.mu(j)));
      row_sum += embed_uts(M.D.at(r, c) + M.E.at(r, c), V).times_poly(var(V.nu(j)));
    }
    row_ok = row_ok && it != oracle.end() && row_sum == it->second;
    add("matrix_identity_row", row_ok);
  }

  // W recomputation
  {
    HomoElem R = compute_R_gamma(cert.dstar, cert.gamma, M);
    WExtract wx = extract_W(R, cert.d0);
    add("W_recomputed", wx.W == cert.W_sym && wx.s1 == cert.s1 && wx.s0 == cert.s0);
  }

  // witness re-evaluation
  bool wit_ok = static_cast<int>(cert.witness.size()) == f.n;
  if (wit_ok) {
    Rational v = cert.W_num.eval(cert.witness);
    wit_ok = (v == cert.witness_value) && sgn(v) != 0;
  }
  add("witness_nonvanishing", wit_ok);

  // magnitude separation: the chosen monomial carries nu_{m0} alone
  {
    const int n = f.n;
    const int L = f.L();
    std::vector<int> dropmap(n + L, -1);
    for (int i = 0; i < n; ++i) dropmap[i] = i;
    bool mag_ok = true;
    for (int k = 0; k < L; ++k) {
      Poly c = cert.W_sym.coefficient_of(n + k, 1).drop_vars(dropmap, n);
      Rational at = c.coefficient(cert.magnitude.monomial);
      if (cert.lambda[k] == cert.m0) {
        if (at != cert.magnitude.coeff || sgn(at) == 0) mag_ok = false;
      } else if (sgn(at) != 0) {
        mag_ok = false;
      }
    }
    auto it = cert.nu.nu.find(cert.m0);
    Rational nm0 = it == cert.nu.nu.end() ? Rational(0) : abs(it->second);
    mag_ok = mag_ok && nm0 >= cert.nu.r / Rational(L);
    add("magnitude_separation", mag_ok);
  }
  return rep;
}

}  // namespace carleson
