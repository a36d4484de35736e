#include "carleson/coeffcalc.hpp"

#include <cmath>

namespace carleson {

int coord_m_of_l(int m, int l) { return m < l ? m : m + 1; }

MultiIndex insert_at(const MultiIndex& a, int k, int l) {
  const int n = a.size() + 1;
  if (l < 1 || l > n) throw std::invalid_argument("insert_at: l out of range");
  if (k < 0) throw std::invalid_argument("insert_at: negative entry");
  MultiIndex out(n);
  for (int i = 0; i < l - 1; ++i) out[i] = a[i];
  out[l - 1] = k;
  for (int i = l; i < n; ++i) out[i] = a[i - 1];
  return out;
}

int ExpansionVars::lambda_pos(int j) const {
  for (int k = 0; k < L(); ++k)
    if (lambda[k] == j) return k;
  throw std::invalid_argument("ExpansionVars: degree not in Lambda");
}

std::vector<std::string> ExpansionVars::names() const {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back("u" + std::to_string(i + 1));
  out.push_back("tau");
  out.push_back("s");
  for (int j : lambda) out.push_back("nu" + std::to_string(j));
  if (with_mu)
    for (int j : lambda) out.push_back("mu" + std::to_string(j));
  if (with_sigma)
    for (int m = 1; m < n; ++m) out.push_back("sigma" + std::to_string(m));
  return out;
}

std::vector<double> z_from_coords(std::span<const double> u, double tau,
                                  std::span<const double> sigma, const ChangeOfVars& cov) {
  const int n = cov.n;
  if (static_cast<int>(u.size()) != n || static_cast<int>(sigma.size()) != n - 1)
    throw std::invalid_argument("z_from_coords: length mismatch");
  double norm2 = 0;
  for (double x : u) norm2 += x * x;
  if (norm2 == 0) throw std::invalid_argument("z_from_coords: u must be nonzero");
  const double norm = std::sqrt(norm2);
  const int l0 = cov.l - 1;
  std::vector<double> z(n);
  double dot = 0;  // u~^{(l)} . sigma
  for (int m = 0; m < n - 1; ++m) {
    int i = coord_m_of_l(m + 1, cov.l) - 1;
    dot += cov.q.theta[i] * u[i] * sigma[m];
  }
  for (int m = 0; m < n - 1; ++m) {
    int i = coord_m_of_l(m + 1, cov.l) - 1;
    z[i] = (tau * cov.q.theta[i] * u[i] - cov.q.theta[l0] * u[l0] * sigma[m]) / norm;
  }
  z[l0] = (cov.q.theta[l0] * u[l0] * tau + dot) / norm;
  return z;
}

std::vector<Rational> z_from_coords(std::span<const Rational> u, const Rational& tau,
                                    std::span<const Rational> sigma,
                                    const ChangeOfVars& cov, const Rational& unorm) {
  const int n = cov.n;
  if (static_cast<int>(u.size()) != n || static_cast<int>(sigma.size()) != n - 1)
    throw std::invalid_argument("z_from_coords: length mismatch");
  Rational check(0);
  for (const auto& x : u) check += x * x;
  if (check != unorm * unorm || sgn(unorm) <= 0)
    throw std::invalid_argument("z_from_coords: unorm^2 != |u|^2");
  const int l0 = cov.l - 1;
  std::vector<Rational> z(n);
  Rational dot(0);
  for (int m = 0; m < n - 1; ++m) {
    int i = coord_m_of_l(m + 1, cov.l) - 1;
    dot += Rational(cov.q.theta[i]) * u[i] * sigma[m];
  }
  for (int m = 0; m < n - 1; ++m) {
    int i = coord_m_of_l(m + 1, cov.l) - 1;
    z[i] = (tau * Rational(cov.q.theta[i]) * u[i] - Rational(cov.q.theta[l0]) * u[l0] * sigma[m]) / unorm;
  }
  z[l0] = (Rational(cov.q.theta[l0]) * u[l0] * tau + dot) / unorm;
  return z;
}

std::pair<Rational, std::vector<Rational>> coords_from_z(std::span<const Rational> u,
                                                         std::span<const Rational> z,
                                                         const ChangeOfVars& cov,
                                                         const Rational& unorm) {
  const int n = cov.n;
  const int l0 = cov.l - 1;
  if (sgn(u[l0]) == 0) throw std::invalid_argument("coords_from_z: u_l must be nonzero");
  Rational tau(0);
  for (int i = 0; i < n; ++i) tau += Rational(cov.q.theta[i]) * u[i] * z[i];
  tau /= unorm;
  std::vector<Rational> sigma(n - 1);
  for (int m = 0; m < n - 1; ++m) {
    int i = coord_m_of_l(m + 1, cov.l) - 1;
    sigma[m] = (tau * Rational(cov.q.theta[i]) * u[i] - unorm * z[i]) /
               (Rational(cov.q.theta[l0]) * u[l0]);
  }
  return {tau, sigma};
}

Poly compute_B(const Poly& pj, int j, const MultiIndex& gamma, int l) {
  const int n = pj.nvars();
  if (gamma.size() != n - 1) throw std::invalid_argument("compute_B: gamma length mismatch");
  Poly out(n);
  if (j < gamma.order()) return out;
  for (const MultiIndex& alpha : multi_indices_below(gamma)) {
    MultiIndex rest = gamma.minus(alpha);
    MultiIndex deriv = insert_at(alpha, rest.order(), l);
    Poly dp = pj.derivative(deriv);
    if (dp.is_zero()) continue;
    MultiIndex mono = insert_at(rest, alpha.order(), l);
    Rational c = Rational((alpha.order() % 2) ? -1 : 1) / (alpha.fact() * rest.fact());
    out += (dp * Poly::monomial(mono, Rational(1))).scaled(c);
  }
  return out;
}

Poly compute_D(const Poly& pj, int j, const MultiIndex& gamma, const ChangeOfVars& cov) {
  const int n = cov.n;
  if (pj.nvars() != n) throw std::invalid_argument("compute_D: variable count mismatch");
  if (gamma.size() != n - 1) throw std::invalid_argument("compute_D: gamma length mismatch");
  Poly out(n);
  const int g = gamma.order();
  if (j <= g) return out;
  for (const MultiIndex& alpha : multi_indices_below(gamma)) {
    MultiIndex rest = gamma.minus(alpha);
    MultiIndex base_deriv = insert_at(alpha, rest.order(), cov.l);
    MultiIndex mono = insert_at(rest, alpha.order(), cov.l);
    // u~^mono = theta^mono u^mono
    int tw = 1;
    for (int i = 0; i < n; ++i)
      if (cov.q.theta[i] < 0 && (mono[i] & 1)) tw = -tw;
    Rational head = Rational(tw * ((alpha.order() % 2) ? -1 : 1)) / (alpha.fact() * rest.fact());
    for (const MultiIndex& beta : multi_indices_of_order(n, j - g)) {
      Poly dp = pj.derivative(base_deriv.plus(beta));
      if (dp.is_zero()) continue;
      Poly dpt = dp.twist_vars(cov.q.theta);  // (d p_j)(u~) as a polynomial in u
      out += (dpt * Poly::monomial(beta.plus(mono), Rational(1))).scaled(head / beta.fact());
    }
  }
  return out;
}

HomoElem compute_E(const Poly& pj, int j, const MultiIndex& gamma, const ChangeOfVars& cov) {
  const int n = cov.n;
  if (pj.nvars() != n) throw std::invalid_argument("compute_E: variable count mismatch");
  if (gamma.size() != n - 1) throw std::invalid_argument("compute_E: gamma length mismatch");
  const int nv = n + 2;
  HomoElem sum = HomoElem::zero(n, nv);
  const int g = gamma.order();
  if (j <= g + 1) return sum;
  std::vector<int> u_map(n);
  for (int i = 0; i < n; ++i) u_map[i] = i;
  for (const MultiIndex& alpha : multi_indices_below(gamma)) {
    MultiIndex rest = gamma.minus(alpha);
    MultiIndex base_deriv = insert_at(alpha, rest.order(), cov.l);
    MultiIndex mono = insert_at(rest, alpha.order(), cov.l);
    int tw = 1;
    for (int i = 0; i < n; ++i)
      if (cov.q.theta[i] < 0 && (mono[i] & 1)) tw = -tw;
    Rational head = Rational(tw * ((alpha.order() % 2) ? -1 : 1)) / (alpha.fact() * rest.fact());
    for (int bo = 1; bo < j - g; ++bo) {
      const int tpow = j - g - bo;
      for (const MultiIndex& beta : multi_indices_of_order(n, bo)) {
        Poly dp = pj.derivative(base_deriv.plus(beta));
        if (dp.is_zero()) continue;
        Poly body = dp.twist_vars(cov.q.theta) * Poly::monomial(beta.plus(mono), Rational(1));
        body = body.scaled(head / beta.fact());
        Poly lifted = body.embed(nv, u_map);
        MultiIndex taum(nv);
        taum[n] = tpow;
        sum += HomoElem(n, lifted * Poly::monomial(taum, Rational(1)), tpow + g);
      }
    }
  }
  return sum;
}

HomoElem compute_Xi(const Poly& pj, int j, const MultiIndex& gamma1, const ChangeOfVars& cov) {
  const int n = cov.n;
  if (gamma1.order() != 1) throw std::invalid_argument("compute_Xi: |gamma| must be 1");
  const int nv = n + 2;
  HomoElem sum = HomoElem::zero(n, nv);
  if (j < 2) return sum;
  std::vector<int> u_map(n);
  for (int i = 0; i < n; ++i) u_map[i] = i;
  for (const MultiIndex& alpha : multi_indices_below(gamma1)) {
    MultiIndex rest = gamma1.minus(alpha);
    MultiIndex base_deriv = insert_at(alpha, rest.order(), cov.l);
    MultiIndex mono = insert_at(rest, alpha.order(), cov.l);
    int tw = 1;
    for (int i = 0; i < n; ++i)
      if (cov.q.theta[i] < 0 && (mono[i] & 1)) tw = -tw;
    Rational head = Rational(tw * ((alpha.order() % 2) ? -1 : 1)) / (alpha.fact() * rest.fact());
    for (const MultiIndex& beta : multi_indices_of_order(n, j - 2)) {
      Poly dp = pj.derivative(base_deriv.plus(beta));
      if (dp.is_zero()) continue;
      Poly body = dp.twist_vars(cov.q.theta) * Poly::monomial(beta.plus(mono), Rational(1));
      sum += HomoElem(n, body.scaled(head / beta.fact()).embed(nv, u_map), 2);
    }
  }
  return sum;
}

HomoElem b_entry(const Poly& pj, int j, const MultiIndex& gamma, const ChangeOfVars& cov) {
  const int n = cov.n;
  Poly b = compute_B(pj, j, gamma, cov.l);
  if (b.is_zero()) return HomoElem::zero(n, n + 2);
  Poly bt = b.twist_vars(cov.q.theta);  // B(u~)
  std::vector<int> u_map(n);
  for (int i = 0; i < n; ++i) u_map[i] = i;
  MultiIndex taum(n + 2);
  taum[n] = j - gamma.order();
  return HomoElem(n, bt.embed(n + 2, u_map) * Poly::monomial(taum, Rational(1)), j);
}

HomoElem d_entry(const Poly& pj, int j, const MultiIndex& gamma, const ChangeOfVars& cov) {
  const int n = cov.n;
  Poly d = compute_D(pj, j, gamma, cov);
  if (d.is_zero()) return HomoElem::zero(n, n + 2);
  std::vector<int> u_map(n);
  for (int i = 0; i < n; ++i) u_map[i] = i;
  return HomoElem(n, d.embed(n + 2, u_map), gamma.order());
}

HomoElem e_entry(const Poly& pj, int j, const MultiIndex& gamma, const ChangeOfVars& cov) {
  return compute_E(pj, j, gamma, cov);
}

HomoElem embed_uts(const HomoElem& e, const ExpansionVars& V) {
  if (e.nvars() == V.count()) return e;
  std::vector<int> vmap(e.nvars());
  for (int i = 0; i < e.nvars(); ++i) vmap[i] = i;
  return HomoElem(V.n, e.body().embed(V.count(), vmap), e.spow());
}

HomoElem SigmaExpansion::total_symbolic(const MultiIndex& gamma) const {
  ExpansionVars V = symbolic_vars();
  auto it = coeffs.find(gamma);
  if (it == coeffs.end()) throw std::invalid_argument("SigmaExpansion: unknown gamma");
  HomoElem sum = HomoElem::zero(V.n, V.count());
  auto var = [&](int idx) { return Poly::variable(V.count(), idx); };
  for (const auto& [j, e] : it->second.bpart)
    sum += embed_uts(e, V).times_poly(var(V.nu(j)) - var(V.mu(j)));
  for (const auto& [j, e] : it->second.dpart) sum += embed_uts(e, V).times_poly(var(V.nu(j)));
  for (const auto& [j, e] : it->second.epart) sum += embed_uts(e, V).times_poly(var(V.nu(j)));
  return sum;
}

HomoElem SigmaExpansion::total_numeric(const MultiIndex& gamma, const StoppingValue& nu,
                                       const StoppingValue& mu) const {
  HomoElem sym = total_symbolic(gamma);
  ExpansionVars V = symbolic_vars();
  auto value_of = [](const StoppingValue& sv, int j) {
    auto it = sv.nu.find(j);
    return it == sv.nu.end() ? Rational(0) : it->second;
  };
  for (int j : lambda) {
    sym = sym.substitute(V.nu(j), value_of(nu, j));
    sym = sym.substitute(V.mu(j), value_of(mu, j));
  }
  return sym;
}

SigmaExpansion expand_phase_in_sigma(const PhaseFamily& f, const ChangeOfVars& cov,
                                     bool allow_inadmissible) {
  if (!allow_inadmissible) require_admissible(f);
  if (cov.n != f.n) throw std::invalid_argument("expand_phase_in_sigma: dimension mismatch");
  SigmaExpansion out;
  out.cov = cov;
  out.lambda = f.lambda();
  out.d = f.d;
  for (int o = 1; o <= f.d; ++o) {
    for (const MultiIndex& gamma : multi_indices_of_order(f.n - 1, o)) {
      SigmaExpansion::Parts parts;
      for (const auto& [j, pj] : f.phases) {
        HomoElem b = b_entry(pj, j, gamma, cov);
        if (!b.is_zero()) parts.bpart.emplace_back(j, std::move(b));
        HomoElem d = d_entry(pj, j, gamma, cov);
        if (!d.is_zero()) parts.dpart.emplace_back(j, std::move(d));
        HomoElem e = e_entry(pj, j, gamma, cov);
        if (!e.is_zero()) parts.epart.emplace_back(j, std::move(e));
      }
      out.coeffs.emplace(gamma, std::move(parts));
    }
  }
  return out;
}

std::map<MultiIndex, HomoElem> oracle_direct_expansion(const PhaseFamily& f,
                                                       const ChangeOfVars& cov,
                                                       bool allow_inadmissible) {
  if (!allow_inadmissible) require_admissible(f);
  const int n = f.n;
  ExpansionVars V{n, f.lambda(), true, true};
  const int nv = V.count();
  const int l0 = cov.l - 1;
  auto var = [&](int idx) { return Poly::variable(nv, idx); };

  // z components over s
  std::vector<HomoElem> z(n);
  Poly dot(nv);  // u~^{(l)} . sigma
  for (int m = 0; m < n - 1; ++m) {
    int i = coord_m_of_l(m + 1, cov.l) - 1;
    dot += (var(V.u(i)) * var(V.sigma(m))).scaled(Rational(cov.q.theta[i]));
  }
  for (int m = 0; m < n - 1; ++m) {
    int i = coord_m_of_l(m + 1, cov.l) - 1;
    Poly body = (var(V.tau()) * var(V.u(i))).scaled(Rational(cov.q.theta[i])) -
                (var(V.u(l0)) * var(V.sigma(m))).scaled(Rational(cov.q.theta[l0]));
    z[i] = HomoElem(n, body, 1);
  }
  z[l0] = HomoElem(n, (var(V.tau()) * var(V.u(l0))).scaled(Rational(cov.q.theta[l0])) + dot, 1);

  std::vector<HomoElem> upz(n);
  for (int i = 0; i < n; ++i) upz[i] = HomoElem(n, var(V.u(i)), 0) + z[i];

  HomoElem phase = HomoElem::zero(n, nv);
  for (const auto& [j, pj] : f.phases) {
    phase += poly_at(pj, upz).times_poly(var(V.nu(j)));
    phase -= poly_at(pj, z).times_poly(var(V.mu(j)));
  }

  // collect sigma monomials; each group keeps the common s-power
  std::map<MultiIndex, Poly> groups;
  for (const auto& [a, c] : phase.body().terms()) {
    MultiIndex gamma(n - 1);
    MultiIndex rest = a;
    for (int m = 0; m < n - 1; ++m) {
      gamma[m] = a[V.sigma(m)];
      rest[V.sigma(m)] = 0;
    }
    auto [it, inserted] = groups.emplace(gamma, Poly(nv));
    it->second.add_term(rest, c);
  }
  std::vector<int> keep(nv, -1);
  ExpansionVars Vout{n, f.lambda(), true, false};
  for (int i = 0; i < Vout.count(); ++i) keep[i] = i;
  std::map<MultiIndex, HomoElem> out;
  for (auto& [gamma, body] : groups) {
    Poly dropped = body.drop_vars(keep, Vout.count());
    HomoElem e(n, dropped, phase.spow());
    if (!e.is_zero()) out.emplace(gamma, std::move(e));
  }
  return out;
}

}  // namespace carleson
