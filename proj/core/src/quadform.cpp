#include "carleson/quadform.hpp"

#include <cmath>

namespace carleson {

QuadForm::QuadForm(int n_, std::vector<int> theta_) : n(n_), theta(std::move(theta_)) {
  if (static_cast<int>(theta.size()) != n)
    throw std::invalid_argument("QuadForm: theta length mismatch");
  for (int t : theta)
    if (t != 1 && t != -1) throw std::invalid_argument("QuadForm: theta entries must be +-1");
}

Poly QuadForm::poly() const {
  Poly p(n);
  for (int i = 0; i < n; ++i)
    p.add_term(MultiIndex::unit(n, i, 2), Rational(theta[i]));
  return p;
}

std::vector<Rational> twist(std::span<const Rational> u, const QuadForm& q) {
  if (static_cast<int>(u.size()) != q.n)
    throw std::invalid_argument("twist: length mismatch");
  std::vector<Rational> v(u.begin(), u.end());
  for (int i = 0; i < q.n; ++i)
    if (q.theta[i] < 0) v[i] = -v[i];
  return v;
}

std::vector<double> twist(std::span<const double> u, const QuadForm& q) {
  if (static_cast<int>(u.size()) != q.n)
    throw std::invalid_argument("twist: length mismatch");
  std::vector<double> v(u.begin(), u.end());
  for (int i = 0; i < q.n; ++i)
    if (q.theta[i] < 0) v[i] = -v[i];
  return v;
}

namespace {

// is p == C * base^k for the C recovered from the first nonzero coefficient?
bool matches_power(const Poly& p, const Poly& base, int k) {
  Poly bk = base.pow(k);
  const auto& lead = *p.terms().begin();
  Rational ref = bk.coefficient(lead.first);
  if (sgn(ref) == 0) return false;
  Rational c = lead.second / ref;
  return p == bk.scaled(c);
}

}  // namespace

PhaseClassification classify_phase(const Poly& p, int j, const QuadForm& q) {
  if (p.nvars() != q.n)
    throw std::invalid_argument("classify_phase: variable count mismatch");
  if (!p.is_homogeneous(j))
    throw std::invalid_argument("classify_phase: input not homogeneous of the stated degree");
  PhaseClassification out;
  if (p.is_zero()) {
    out.zero = true;
    return out;
  }
  if (j % 2 != 0) return out;  // odd degree can be neither
  Poly abs2(q.n);
  for (int i = 0; i < q.n; ++i)
    abs2.add_term(MultiIndex::unit(q.n, i, 2), Rational(1));
  out.qtype = matches_power(p, q.poly(), j / 2);
  out.parabolic = matches_power(p, abs2, j / 2);
  return out;
}

bool is_qtype_in_coordinate(const Poly& p2, int i, int l, const QuadForm& q) {
  if (p2.nvars() != q.n)
    throw std::invalid_argument("is_qtype_in_coordinate: variable count mismatch");
  if (!p2.is_homogeneous(2))
    throw std::invalid_argument("is_qtype_in_coordinate: p2 must be homogeneous of degree 2");
  const int n = q.n;
  auto d = [&](int a, int b) {
    MultiIndex w(n);
    w[a] += 1;
    w[b] += 1;
    return p2.coefficient(w);
  };
  const int i0 = i - 1, l0 = l - 1;
  if (Rational(q.theta[l0]) * d(l0, l0) != Rational(q.theta[i0]) * d(i0, i0))
    return false;
  for (int j = 0; j < n; ++j)
    if (j != i0 && sgn(d(i0, j)) != 0) return false;
  return true;
}

CongruenceResult normalize_quadratic_form(const std::vector<std::vector<Rational>>& qmat) {
  const int n = static_cast<int>(qmat.size());
  if (n == 0) throw std::invalid_argument("normalize_quadratic_form: empty matrix");
  for (const auto& row : qmat)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("normalize_quadratic_form: not square");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (qmat[i][j] != qmat[j][i])
        throw std::invalid_argument("normalize_quadratic_form: not symmetric");

  std::vector<std::vector<Rational>> a = qmat;
  std::vector<std::vector<Rational>> t(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i) t[i][i] = 1;

  // column operation on T and the congruent row+column pair on A
  auto add_col = [&](int dst, int src, const Rational& f) {
    for (int r = 0; r < n; ++r) t[r][dst] += f * t[r][src];
    for (int r = 0; r < n; ++r) a[r][dst] += f * a[r][src];
    for (int c = 0; c < n; ++c) a[dst][c] += f * a[src][c];
  };
  auto swap_cols = [&](int x, int y) {
    for (int r = 0; r < n; ++r) std::swap(t[r][x], t[r][y]);
    for (int r = 0; r < n; ++r) std::swap(a[r][x], a[r][y]);
    for (int c = 0; c < n; ++c) std::swap(a[x][c], a[y][c]);
  };

  for (int k = 0; k < n; ++k) {
    if (sgn(a[k][k]) == 0) {
      int pivot = -1;
      for (int j = k + 1; j < n; ++j)
        if (sgn(a[j][j]) != 0) { pivot = j; break; }
      if (pivot >= 0) {
        swap_cols(k, pivot);
      } else {
        int off = -1;
        for (int j = k + 1; j < n; ++j)
          if (sgn(a[k][j]) != 0) { off = j; break; }
        if (off < 0)
          throw std::invalid_argument("normalize_quadratic_form: singular matrix");
        add_col(k, off, Rational(1));  // now a[k][k] = 2 a[k][off] != 0
      }
    }
    for (int j = k + 1; j < n; ++j) {
      if (sgn(a[k][j]) == 0) continue;
      add_col(j, k, -a[k][j] / a[k][k]);
    }
  }

  CongruenceResult out;
  out.transform = std::move(t);
  std::vector<int> theta(n);
  for (int i = 0; i < n; ++i) {
    out.diag.push_back(a[i][i]);
    theta[i] = sgn(a[i][i]) > 0 ? 1 : -1;
    out.scales.push_back(std::sqrt(std::abs(to_double(a[i][i]))));
  }
  out.form = QuadForm(n, theta);
  return out;
}

}  // namespace carleson
