#include "carleson/matrixcert.hpp"

#include <algorithm>

#include "carleson/poly_io.hpp"

namespace carleson {

std::vector<MultiIndex> sigma_index_set(int n, int d) {
  std::vector<MultiIndex> out;
  for (int o = 1; o <= d; ++o)
    for (const MultiIndex& g : multi_indices_of_order(n - 1, o)) out.push_back(g);
  return out;
}

int PolyMatrix::row_index(const MultiIndex& gamma) const {
  for (int r = 0; r < nrows(); ++r)
    if (rows[r] == gamma) return r;
  throw std::invalid_argument("PolyMatrix: unknown row");
}

int PolyMatrix::col_index(int j) const {
  for (int c = 0; c < ncols(); ++c)
    if (cols[c] == j) return c;
  throw std::invalid_argument("PolyMatrix: unknown column");
}

Matrices build_matrices(const PhaseFamily& f, const ChangeOfVars& cov,
                        bool allow_inadmissible) {
  if (!allow_inadmissible) require_admissible(f);
  Matrices M;
  std::vector<MultiIndex> rows = sigma_index_set(f.n, f.d);
  std::vector<int> cols = f.lambda();
  for (PolyMatrix* pm : {&M.B, &M.D, &M.E}) {
    pm->rows = rows;
    pm->cols = cols;
    pm->entries.assign(rows.size(), {});
  }
  for (size_t r = 0; r < rows.size(); ++r) {
    for (int j : cols) {
      const Poly& pj = f.phase(j);
      M.B.entries[r].push_back(b_entry(pj, j, rows[r], cov));
      M.D.entries[r].push_back(d_entry(pj, j, rows[r], cov));
      M.E.entries[r].push_back(e_entry(pj, j, rows[r], cov));
    }
  }
  return M;
}

std::string to_string(CaseLabel c) {
  switch (c) {
    case CaseLabel::A: return "A";
    case CaseLabel::B1: return "B1";
    case CaseLabel::B2: return "B2";
  }
  return "?";
}

CaseInfo classify_case(const PhaseFamily& f, const StoppingValue& nu) {
  const std::vector<int> lambda = f.lambda();
  nu.validate(lambda);
  const Rational threshold = nu.r / Rational(f.L());
  CaseInfo info;
  for (int j : lambda) {
    auto it = nu.nu.find(j);
    if (it != nu.nu.end() && abs(it->second) >= threshold) info.dominant.push_back(j);
  }
  if (info.dominant.empty())
    throw InternalInvariantError("NoDominantIndex",
                                 "no |nu_j| >= r/L although |nu|_1 >= r");
  for (int j : info.dominant) {
    if (!classify_phase(f.phase(j), j, f.q).qtype) {
      info.label = CaseLabel::A;
      info.m0 = j;
      return info;
    }
  }
  info.m0 = info.dominant.front();
  info.label = f.phases.count(2) ? CaseLabel::B2 : CaseLabel::B1;
  return info;
}

bool DistinguishedSet::contains(const MultiIndex& gamma) const {
  for (const auto& [j, g] : entries)
    if (g == gamma) return true;
  return false;
}

DistinguishedSet choose_Dstar(const PhaseFamily& f, const ChangeOfVars& cov, CaseLabel label) {
  DistinguishedSet ds;
  ds.label = label;
  ds.cols = f.lambda();
  const int jmin = (label == CaseLabel::A) ? 2 : 3;
  for (int j : f.lambda()) {
    if (j < jmin) continue;
    bool found = false;
    for (const MultiIndex& g : multi_indices_of_order(f.n - 1, j)) {
      if (!compute_B(f.phase(j), j, g, cov.l).is_zero()) {
        ds.entries.emplace(j, g);
        found = true;
        break;
      }
    }
    if (!found)
      throw InternalInvariantError(
          "BSearchFailed", "no |gamma| = " + std::to_string(j) + " with B_{j,gamma} != 0");
  }
  return ds;
}

PolyMatrix assemble_Bstar(const DistinguishedSet& ds, const Matrices& M) {
  PolyMatrix out;
  out.cols = ds.cols;
  for (int j : ds.cols) {
    auto it = ds.entries.find(j);
    if (it == ds.entries.end())
      throw std::invalid_argument("assemble_Bstar: missing row for column " + std::to_string(j));
    out.rows.push_back(it->second);
  }
  for (const MultiIndex& gamma : out.rows) {
    int r = M.B.row_index(gamma);
    std::vector<HomoElem> row;
    for (int j : out.cols) row.push_back(M.B.at(r, M.B.col_index(j)));
    out.entries.push_back(std::move(row));
  }
  return out;
}

HomoElem det_Bstar(const DistinguishedSet& ds, const Matrices& M) {
  PolyMatrix bstar = assemble_Bstar(ds, M);
  if (bstar.nrows() == 0) throw std::invalid_argument("det_Bstar: empty matrix");
  HomoElem det = bstar.at(0, 0);
  for (int k = 1; k < bstar.nrows(); ++k) det = det * bstar.at(k, k);
  return det;
}

namespace {

HomoElem det_expand(const PolyMatrix& A, int col, uint32_t used_rows) {
  const int nr = A.nrows();
  if (col == A.ncols()) {
    // empty matrix has determinant 1
    if (A.ncols() == 0) throw std::invalid_argument("det_generic: empty matrix");
    return HomoElem(A.at(0, 0).uvars(),
                    Poly::constant(A.at(0, 0).nvars(), Rational(1)), 0);
  }
  HomoElem sum = HomoElem::zero(A.at(0, 0).uvars(), A.at(0, 0).nvars());
  int live = 0;
  for (int r = 0; r < nr; ++r) {
    if (used_rows & (1u << r)) continue;
    const HomoElem& e = A.at(r, col);
    if (!e.is_zero()) {
      HomoElem minor = det_expand(A, col + 1, used_rows | (1u << r));
      HomoElem term = e * minor;
      sum = (live % 2 == 0) ? sum + term : sum - term;
    }
    ++live;
  }
  return sum;
}

}  // namespace

HomoElem det_generic(const PolyMatrix& A) {
  if (A.nrows() != A.ncols()) throw std::invalid_argument("det_generic: not square");
  return det_expand(A, 0, 0);
}

PolyMatrix build_Bstar_j(const DistinguishedSet& ds, int j, const Matrices& M) {
  PolyMatrix bstar = assemble_Bstar(ds, M);
  const int n = M.B.at(0, 0).uvars();
  ExpansionVars V{n, M.B.cols, false, false};
  PolyMatrix out;
  out.rows = bstar.rows;
  out.cols = bstar.cols;
  const int jc = bstar.col_index(j);
  for (int r = 0; r < bstar.nrows(); ++r) {
    std::vector<HomoElem> row;
    for (int c = 0; c < bstar.ncols(); ++c) {
      if (c != jc) {
        row.push_back(embed_uts(bstar.at(r, c), V));
        continue;
      }
      // -(D* + E*) nu over the full Lambda column set
      HomoElem cell = HomoElem::zero(n, V.count());
      int full_r = M.D.row_index(bstar.rows[r]);
      for (int jj : M.D.cols) {
        int cc = M.D.col_index(jj);
        HomoElem de = M.D.at(full_r, cc) + M.E.at(full_r, cc);
        if (de.is_zero()) continue;
        cell += embed_uts(de, V).times_poly(Poly::variable(V.count(), V.nu(jj)));
      }
      row.push_back(-cell);
    }
    out.entries.push_back(std::move(row));
  }
  return out;
}

HomoElem det_Bstar_j(const DistinguishedSet& ds, int j, const Matrices& M) {
  return det_generic(build_Bstar_j(ds, j, M));
}

HomoElem compute_R_gamma(const DistinguishedSet& ds, const MultiIndex& gamma,
                         const Matrices& M) {
  if (ds.contains(gamma))
    throw std::invalid_argument("compute_R_gamma: gamma lies in Dstar");
  const int n = M.B.at(0, 0).uvars();
  ExpansionVars V{n, M.B.cols, false, false};
  const int r = M.B.row_index(gamma);
  HomoElem R = HomoElem::zero(n, V.count());
  for (int j : ds.cols) {
    const HomoElem& bent = M.B.at(r, M.B.col_index(j));
    if (bent.is_zero()) continue;
    R += embed_uts(bent, V) * det_Bstar_j(ds, j, M);
  }
  HomoElem det = embed_uts(det_Bstar(ds, M), V);
  HomoElem de_row = HomoElem::zero(n, V.count());
  for (int jj : M.D.cols) {
    int cc = M.D.col_index(jj);
    HomoElem de = M.D.at(r, cc) + M.E.at(r, cc);
    if (de.is_zero()) continue;
    de_row += embed_uts(de, V).times_poly(Poly::variable(V.count(), V.nu(jj)));
  }
  R += det * de_row;
  return R;
}

WExtract extract_W(const HomoElem& R, int d0) {
  HomoElem h = R.tau_coefficient(d0);
  if (h.is_zero())
    throw InternalInvariantError("DeadIndex",
                                 "tau^" + std::to_string(d0) + " coefficient vanishes in u and nu");
  const int sidx = h.s_index();
  Poly b0 = h.body().coefficient_of(sidx, 0);
  Poly b1 = h.body().coefficient_of(sidx, 1);
  Poly w;
  int s1;
  if (b1.is_zero()) {
    w = b0;
    s1 = h.spow();
  } else if (b0.is_zero()) {
    w = b1;
    s1 = h.spow() - 1;
  } else {
    throw InternalInvariantError("MixedParity",
                                 "tau coefficient mixes s-parities; not |u|^{-s1} poly");
  }
  if (s1 < 0) throw InternalInvariantError("NegativeSPower", "extraction left s in numerator");
  // drop tau and s from the layout: (u..., tau, s, nu...) -> (u..., nu...)
  const int n = h.uvars();
  const int nv = h.nvars();
  std::vector<int> keep(nv, -1);
  for (int i = 0; i < n; ++i) keep[i] = i;
  for (int i = n + 2; i < nv; ++i) keep[i] = i - 2;
  WExtract out;
  out.W = w.drop_vars(keep, nv - 2);
  out.s1 = s1;
  int s0 = 0;
  for (const auto& [a, c] : out.W.terms()) {
    int deg = 0;
    for (int i = 0; i < n; ++i) deg += a[i];
    s0 = std::max(s0, deg);
  }
  out.s0 = s0;
  return out;
}

Poly b2_pivot_expression(const PhaseFamily& f, int m0, int m, const MultiIndex& gamma2,
                         const ChangeOfVars& cov) {
  const int n = f.n;
  const int l0 = cov.l - 1;
  const int i0 = coord_m_of_l(m, cov.l) - 1;
  MultiIndex gamma1 = MultiIndex::unit(n - 1, m - 1);
  Poly b2g1 = compute_B(f.phase(2), 2, gamma1, cov.l).twist_vars(f.q.theta);
  Poly b2g2 = compute_B(f.phase(2), 2, gamma2, cov.l).twist_vars(f.q.theta);
  Poly bm0g1 = compute_B(f.phase(m0), m0, gamma1, cov.l).twist_vars(f.q.theta);
  Poly dm0g2 = compute_D(f.phase(m0), m0, gamma2, cov);
  Rational sign(f.q.theta[l0] * f.q.theta[i0]);
  return b2g1 * dm0g2 + (b2g2 * bm0g1).scaled(sign);
}

namespace {

// shared tail of certify/run_case_B2: assemble R, extract W, produce the
// magnitude and nonvanishing witnesses
Certificate finish_certificate(const PhaseFamily& f, const StoppingValue& nu,
                               const ChangeOfVars& cov, const Matrices& M,
                               Certificate cert) {
  cert.family_hash = fnv1a_hex(f.canonical_text());
  cert.n = f.n;
  cert.l = cov.l;
  cert.lambda = f.lambda();
  cert.nu = nu;
  cert.det_bstar = det_Bstar(cert.dstar, M);

  const int min_tau = cert.det_bstar.min_tau_degree();
  const bool s1case = cert.dstar.subcase && *cert.dstar.subcase == B2Subcase::S1;
  // d0 follows the lowest tau-degree of det Bstar, except in B2 subcase (1)
  // where the constant term lacks the dominant nu and d0 = 1 is forced.
  cert.d0 = s1case ? 1 : min_tau;
  if (!s1case && cert.label == CaseLabel::B2 && cert.d0 != 1)
    throw InternalInvariantError("BadTauDegree", "B2 det Bstar should be linear in tau");

  HomoElem R = compute_R_gamma(cert.dstar, cert.gamma, M);
  WExtract wx = extract_W(R, cert.d0);
  cert.W_sym = wx.W;
  cert.s1 = wx.s1;
  cert.s0 = wx.s0;

  // per-degree nu coefficients of W, as u-polynomials
  const int n = f.n;
  const int L = f.L();
  ExpansionVars V{n, cert.lambda, false, false};
  std::vector<int> drop_nu(n + L, -1);
  for (int i = 0; i < n; ++i) drop_nu[i] = i;
  std::map<int, Poly> wj;
  for (int k = 0; k < L; ++k) {
    Poly c = cert.W_sym.coefficient_of(n + k, 1);
    for (int k2 = 0; k2 < L; ++k2)
      if (c.degree_in(n + k2) > 0)
        throw InternalInvariantError("NonlinearNu", "W is not linear in nu");
    wj.emplace(cert.lambda[k], c.drop_vars(drop_nu, n));
  }
  const Poly& wm0 = wj.at(cert.m0);
  if (wm0.is_zero())
    throw InternalInvariantError("DominantCoefficientZero",
                                 "nu_{m0} coefficient of W vanishes identically");
  // degree separation: exhibit a monomial only nu_{m0} can reach
  std::optional<MultiIndex> pick;
  for (const auto& [a, c] : wm0.terms()) {
    bool clash = false;
    for (const auto& [j, p] : wj)
      if (j != cert.m0 && sgn(p.coefficient(a)) != 0) clash = true;
    if (!clash) {
      pick = a;
      break;
    }
  }
  if (!pick)
    throw InternalInvariantError("NoSeparatedMonomial",
                                 "every monomial of the m0 part is shadowed");
  cert.magnitude.monomial = *pick;
  cert.magnitude.coeff = wm0.coefficient(*pick);

  // numeric W and its nonvanishing witness
  Poly wn = cert.W_sym;
  for (int k = 0; k < L; ++k) {
    auto it = nu.nu.find(cert.lambda[k]);
    wn = wn.substitute(n + k, it == nu.nu.end() ? Rational(0) : it->second);
  }
  cert.W_num = wn.drop_vars(drop_nu, n);
  if (cert.W_num.is_zero())
    throw InternalInvariantError("NumericWZero", "W vanishes after substituting nu");
  auto witness = find_nonvanishing_witness(cert.W_num);
  if (!witness)
    throw InternalInvariantError("WitnessSearchFailed", "grid scan found no witness");
  cert.witness = *witness;
  cert.witness_value = cert.W_num.eval(cert.witness);
  return cert;
}

MultiIndex find_distinguished_gamma(const PhaseFamily& f, const ChangeOfVars& cov, int m0,
                                    int order) {
  for (const MultiIndex& g : multi_indices_of_order(f.n - 1, order)) {
    if (!compute_D(f.phase(m0), m0, g, cov).is_zero()) return g;
  }
  throw InternalInvariantError(
      "DSearchFailed", "no |gamma| = " + std::to_string(order) + " with D_{m0,gamma} != 0");
}

}  // namespace

Certificate run_case_B2(const PhaseFamily& f, const StoppingValue& nu, int m0,
                        const ChangeOfVars& cov) {
  const int n = f.n;
  const int l0 = cov.l - 1;
  const Poly& p2 = f.phase(2);
  // certify() gates upstream; building matrices ungated here lets the
  // AllCoordinatesQType contradiction surface as the structured error
  Matrices M = build_matrices(f, cov, /*allow_inadmissible=*/true);
  std::vector<B2TraceEntry> trace;
  for (int m = 1; m <= n - 1; ++m) {
    const int i0 = coord_m_of_l(m, cov.l) - 1;
    MultiIndex gamma1 = MultiIndex::unit(n - 1, m - 1);
    const bool bzero = compute_B(p2, 2, gamma1, cov.l).is_zero();
    const bool same_sign = f.q.theta[l0] == f.q.theta[i0];
    B2TraceEntry entry;
    entry.m = m;
    if (bzero && !same_sign) {
      entry.subcase = B2Subcase::S1;
      entry.certified = true;
      trace.push_back(entry);
      Certificate cert;
      cert.label = CaseLabel::B2;
      cert.subcase = B2Subcase::S1;
      cert.m = m;
      cert.m0 = m0;
      cert.dstar = choose_Dstar(f, cov, CaseLabel::B1);  // {gamma(j): j >= 3}
      cert.dstar.label = CaseLabel::B2;
      cert.dstar.subcase = B2Subcase::S1;
      cert.dstar.m = m;
      cert.dstar.cols.clear();
      for (int j : f.lambda())
        if (j >= 3) cert.dstar.cols.push_back(j);
      cert.gamma = gamma1;
      cert.trace = trace;
      return finish_certificate(f, nu, cov, M, std::move(cert));
    }
    if (!bzero) {
      // subcase (2): lexicographic search over all order-2 pivots, which
      // must succeed; subcase (4): only the gamma(2) = 2 e_m candidate is
      // decisive -- its vanishing forces the per-coordinate Q-type record
      entry.subcase = same_sign ? B2Subcase::S2 : B2Subcase::S4;
      std::optional<MultiIndex> gamma2;
      if (same_sign) {
        for (const MultiIndex& g : multi_indices_of_order(n - 1, 2)) {
          if (!b2_pivot_expression(f, m0, m, g, cov).is_zero()) {
            gamma2 = g;
            break;
          }
        }
      } else {
        MultiIndex cand = MultiIndex::unit(n - 1, m - 1, 2);
        if (!b2_pivot_expression(f, m0, m, cand, cov).is_zero()) gamma2 = cand;
      }
      if (gamma2) {
        entry.certified = true;
        entry.gamma2 = gamma2;
        trace.push_back(entry);
        Certificate cert;
        cert.label = CaseLabel::B2;
        cert.subcase = entry.subcase;
        cert.m = m;
        cert.m0 = m0;
        cert.dstar = choose_Dstar(f, cov, CaseLabel::B1);
        cert.dstar.label = CaseLabel::B2;
        cert.dstar.subcase = entry.subcase;
        cert.dstar.m = m;
        cert.dstar.entries.emplace(2, gamma1);
        cert.gamma = *gamma2;
        cert.trace = trace;
        return finish_certificate(f, nu, cov, M, std::move(cert));
      }
      if (entry.subcase == B2Subcase::S2)
        throw InternalInvariantError("B2Case2PivotMissing",
                                     "case (2) pivot search must succeed when p_{m0} is Q-type");
    } else {
      entry.subcase = B2Subcase::S3;
    }
    // non-certifying branch: p_2 must look like Q in coordinates l and m(l)
    const int il = coord_m_of_l(m, cov.l);
    if (!is_qtype_in_coordinate(p2, cov.l, cov.l, f.q) ||
        !is_qtype_in_coordinate(p2, il, cov.l, f.q))
      throw InternalInvariantError(
          "B2RecordInconsistent",
          "non-certifying branch but p_2 is not Q-type in coordinates " +
              std::to_string(cov.l) + "," + std::to_string(il));
    trace.push_back(entry);
  }
  throw InternalInvariantError(
      "AllCoordinatesQType",
      "every m recorded Q-type in coordinates, so p_2 is in Span{Q}; the gate should have "
      "rejected this family");
}

Certificate certify(const PhaseFamily& f, const StoppingValue& nu, const ChangeOfVars& cov) {
  require_admissible(f);
  CaseInfo info = classify_case(f, nu);
  if (info.label == CaseLabel::B2) {
    Certificate cert = run_case_B2(f, nu, info.m0, cov);
    return cert;
  }
  Matrices M = build_matrices(f, cov);
  Certificate cert;
  cert.label = info.label;
  cert.m0 = info.m0;
  cert.dstar = choose_Dstar(f, cov, info.label);
  const int order = (info.label == CaseLabel::A) ? 1 : 2;
  cert.gamma = find_distinguished_gamma(f, cov, info.m0, order);
  return finish_certificate(f, nu, cov, M, std::move(cert));
}

}  // namespace carleson
