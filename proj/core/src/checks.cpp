#include "carleson/checks.hpp"

namespace carleson {

Rational random_coeff(Rng& rng, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  return Rational(dist(rng));
}

Poly random_homogeneous(Rng& rng, int nvars, int degree, int lo, int hi) {
  std::uniform_int_distribution<int> keep(0, 2);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Poly p(nvars);
    for (const MultiIndex& a : multi_indices_of_order(nvars, degree)) {
      if (keep(rng) == 0) continue;  // sparsity
      p.add_term(a, random_coeff(rng, lo, hi));
    }
    if (!p.is_zero()) return p;
  }
  // fall back to a single monomial
  return Poly::monomial(MultiIndex::unit(nvars, 0, degree), Rational(1));
}

QuadForm random_quadform(Rng& rng, int n) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<int> theta(n);
  for (int& t : theta) t = coin(rng) ? 1 : -1;
  return QuadForm(n, theta);
}

PhaseFamily random_admissible_family(Rng& rng, int n, int dmax) {
  std::uniform_int_distribution<int> coin(0, 1);
  for (int attempt = 0; attempt < 256; ++attempt) {
    QuadForm q = random_quadform(rng, n);
    std::map<int, Poly> phases;
    for (int j = 2; j <= dmax; ++j) {
      if (coin(rng)) continue;
      std::uniform_int_distribution<int> kind(0, 3);
      int k = kind(rng);
      if (k == 0 && j % 2 == 0) {
        phases.emplace(j, q.poly().pow(j / 2));  // Q-type
      } else if (k == 1 && j % 2 == 0) {
        Poly abs2(n);
        for (int i = 0; i < n; ++i) abs2.add_term(MultiIndex::unit(n, i, 2), Rational(1));
        phases.emplace(j, abs2.pow(j / 2));  // parabolic
      } else {
        phases.emplace(j, random_homogeneous(rng, n, j));
      }
    }
    if (phases.empty()) continue;
    PhaseFamily f(q, phases);
    if (check_admissibility(f).ok) return f;
  }
  throw std::runtime_error("random_admissible_family: generation stalled");
}

namespace {

Poly parabolic_poly(int n, int degree, const Rational& c) {
  Poly abs2(n);
  for (int i = 0; i < n; ++i) abs2.add_term(MultiIndex::unit(n, i, 2), Rational(1));
  return abs2.pow(degree / 2).scaled(c);
}

}  // namespace

CheckResult check_propB(uint64_t seed, int per_degree, int degree_max) {
  Rng rng(seed);
  CheckResult res{"propB", 0, 0, ""};
  std::uniform_int_distribution<int> dim(2, 3);
  for (int j = 2; j <= degree_max; ++j) {
    for (int inst = 0; inst < per_degree; ++inst) {
      const int n = dim(rng);
      Poly p;
      bool parabolic = false;
      const int kind = inst % 3;
      if (kind == 1 && j % 2 == 0) {
        p = parabolic_poly(n, j, random_coeff(rng, 1, 3));
        parabolic = true;
      } else if (kind == 2 && j % 2 == 0) {
        p = random_quadform(rng, n).poly().pow(j / 2);
        Poly abs2 = parabolic_poly(n, j, Rational(1));
        const auto& lead = *p.terms().begin();
        Rational ref = abs2.coefficient(lead.first);
        parabolic = sgn(ref) != 0 && p == abs2.scaled(lead.second / ref);
      } else {
        p = random_homogeneous(rng, n, j);
        Poly abs2 = parabolic_poly(n, j, Rational(1));
        if (j % 2 == 0) {
          const auto& lead = *p.terms().begin();
          Rational ref = abs2.coefficient(lead.first);
          parabolic = sgn(ref) != 0 && p == abs2.scaled(lead.second / ref);
        }
      }
      for (int l = 1; l <= n; ++l) {
        ++res.instances;
        bool bad = false;
        // (1) homogeneity for every gamma of order <= j
        for (int o = 1; o <= j && !bad; ++o)
          for (const MultiIndex& g : multi_indices_of_order(n - 1, o)) {
            Poly b = compute_B(p, j, g, l);
            if (!b.is_zero() && !b.is_homogeneous(j)) bad = true;
          }
        // (2) some |gamma| = j with B != 0
        bool found_j = false;
        for (const MultiIndex& g : multi_indices_of_order(n - 1, j))
          if (!compute_B(p, j, g, l).is_zero()) found_j = true;
        if (!found_j) bad = true;
        // (3) parabolic: odd orders vanish
        if (parabolic) {
          for (int o = 1; o <= j && !bad; o += 2)
            for (const MultiIndex& g : multi_indices_of_order(n - 1, o))
              if (!compute_B(p, j, g, l).is_zero()) bad = true;
        }
        // (4)/(5) existence at order 1 resp. 2
        const int want = parabolic ? 2 : 1;
        bool found_low = false;
        for (const MultiIndex& g : multi_indices_of_order(n - 1, want))
          if (!compute_B(p, j, g, l).is_zero()) found_low = true;
        if (!found_low) bad = true;
        if (bad) {
          ++res.failures;
          if (res.detail.empty())
            res.detail = "j=" + std::to_string(j) + " l=" + std::to_string(l) +
                         " poly failed a propB property";
        }
      }
    }
  }
  return res;
}

CheckResult check_propD(uint64_t seed, int per_degree) {
  Rng rng(seed);
  CheckResult res{"propD", 0, 0, ""};
  const std::vector<std::vector<int>> signatures = {
      {1, 1}, {1, -1}, {1, 1, -1}, {1, -1, -1}};
  for (const auto& theta : signatures) {
    const int n = static_cast<int>(theta.size());
    QuadForm q(n, theta);
    for (int j = 2; j <= 6; ++j) {
      for (int inst = 0; inst < per_degree; ++inst) {
        Poly p;
        const int kind = inst % 3;
        if (kind == 1 && j % 2 == 0) {
          p = q.poly().pow(j / 2).scaled(random_coeff(rng, 1, 3));
        } else if (kind == 2 && j % 2 == 0) {
          p = parabolic_poly(n, j, random_coeff(rng, 1, 3));
        } else {
          p = random_homogeneous(rng, n, j);
        }
        const bool qtype = classify_phase(p, j, q).qtype;
        for (int l = 1; l <= n; ++l) {
          ++res.instances;
          ChangeOfVars cov(n, l, q);
          bool bad = false;
          bool all_order1_zero = true;
          for (const MultiIndex& g : multi_indices_of_order(n - 1, 1)) {
            Poly dgz = compute_D(p, j, g, cov);
            if (!dgz.is_zero()) {
              all_order1_zero = false;
              if (!dgz.is_homogeneous(j)) bad = true;
            }
          }
          if (all_order1_zero != qtype) bad = true;
          // the order-2 existence claim needs j >= |gamma|+1 = 3, so it is
          // only meaningful (and only ever applied) for Q-type j >= 4
          if (qtype && j >= 4) {
            bool found2 = false;
            for (const MultiIndex& g : multi_indices_of_order(n - 1, 2))
              if (!compute_D(p, j, g, cov).is_zero()) found2 = true;
            if (!found2) bad = true;
          }
          if (bad) {
            ++res.failures;
            if (res.detail.empty())
              res.detail = "n=" + std::to_string(n) + " j=" + std::to_string(j) +
                           " l=" + std::to_string(l);
          }
        }
      }
    }
  }
  return res;
}

namespace {

Poly random_even_support(Rng& rng, int n, int degree) {
  // homogeneous with every exponent even in every term
  for (int attempt = 0; attempt < 64; ++attempt) {
    Poly p(n);
    std::uniform_int_distribution<int> keep(0, 1);
    for (const MultiIndex& half : multi_indices_of_order(n, degree / 2)) {
      if (keep(rng)) continue;
      MultiIndex full(n);
      for (int i = 0; i < n; ++i) full[i] = 2 * half[i];
      p.add_term(full, random_coeff(rng));
    }
    if (!p.is_zero()) return p;
  }
  return Poly::monomial(MultiIndex::unit(n, 0, degree), Rational(1));
}

// |u|^2 Xi as an honest polynomial in u; the reduced body is s- and
// tau-free with spow == 2 whenever Xi != 0.
Poly xi_times_u2(const Poly& p, int j, const MultiIndex& gamma1, const ChangeOfVars& cov) {
  HomoElem xi = compute_Xi(p, j, gamma1, cov);
  if (xi.is_zero()) return Poly::zero(cov.n);
  if (xi.spow() != 2 || xi.body().degree_in(xi.s_index()) > 0 ||
      xi.body().degree_in(xi.tau_index()) > 0)
    throw InternalInvariantError("XiShape", "|u|^2 Xi is not a polynomial in u");
  std::vector<int> keep(xi.nvars(), -1);
  for (int i = 0; i < cov.n; ++i) keep[i] = i;
  return xi.body().drop_vars(keep, cov.n);
}

}  // namespace

CheckResult check_xi_identity(uint64_t seed, int instances) {
  Rng rng(seed);
  CheckResult res{"xi_identity", 0, 0, ""};
  std::uniform_int_distribution<int> dim(2, 3);
  const int degrees[] = {2, 4, 6};
  for (int inst = 0; inst < instances; ++inst) {
    const int j = degrees[inst % 3];
    const int n = dim(rng);
    Poly p = random_even_support(rng, n, j);
    QuadForm q = random_quadform(rng, n);
    for (int l = 1; l <= n; ++l) {
      ChangeOfVars cov(n, l, q);
      for (int m = 1; m <= n - 1; ++m) {
        ++res.instances;
        MultiIndex gamma1 = MultiIndex::unit(n - 1, m - 1);
        Poly lhs = xi_times_u2(p, j, gamma1, cov);
        Poly d = compute_D(p, j, gamma1, cov);
        Poly euler(n);
        for (int i = 0; i < n; ++i) {
          Poly di = d.derivative(MultiIndex::unit(n, i));
          euler += (di * Poly::variable(n, i)).scaled(Rational(q.theta[i]));
        }
        lhs -= euler;
        const int il = coord_m_of_l(m, l) - 1;
        Rational sign(-q.theta[il] * q.theta[l - 1]);
        Poly rhs = compute_B(p, j, gamma1, l).twist_vars(q.theta).scaled(sign);
        if (lhs != rhs) {
          ++res.failures;
          if (res.detail.empty())
            res.detail = "n=" + std::to_string(n) + " j=" + std::to_string(j) +
                         " l=" + std::to_string(l) + " m=" + std::to_string(m);
        }
      }
    }
  }
  return res;
}

CheckResult check_b2_monomial_coefficient() {
  CheckResult res{"b2_monomial_coefficient", 0, 0, ""};
  for (int n = 2; n <= 3; ++n) {
    // all sign patterns
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> theta(n);
      for (int i = 0; i < n; ++i) theta[i] = (mask >> i) & 1 ? 1 : -1;
      QuadForm q(n, theta);
      for (int m0 : {4, 6}) {
        const int k = m0 / 2;
        Poly p = q.poly().pow(k);
        for (int l = 1; l <= n; ++l) {
          for (int m = 1; m <= n - 1; ++m) {
            const int il = coord_m_of_l(m, l) - 1;
            if (theta[l - 1] == theta[il]) continue;  // hypothesis: opposite signs at l and m(l)
            ++res.instances;
            // G(u) = sum_{|b| = m0-2} (theta^b / b!) [ u^{b+e_{m(l)}} (d_{b+e_l} p)(u)
            //        - u^{b+e_l} (d_{b+e_{m(l)}} p)(u) ]
            Poly g(n);
            for (const MultiIndex& b : multi_indices_of_order(n, m0 - 2)) {
              int tw = 1;
              for (int i = 0; i < n; ++i)
                if (theta[i] < 0 && (b[i] & 1)) tw = -tw;
              Rational head = Rational(tw) / b.fact();
              Poly t1 = p.derivative(b.plus(MultiIndex::unit(n, l - 1))) *
                        Poly::monomial(b.plus(MultiIndex::unit(n, il)), Rational(1));
              Poly t2 = p.derivative(b.plus(MultiIndex::unit(n, il))) *
                        Poly::monomial(b.plus(MultiIndex::unit(n, l - 1)), Rational(1));
              g += (t1 - t2).scaled(head);
            }
            MultiIndex target(n);
            target[l - 1] = m0 - 1;
            target[il] += 1;
            Rational expected = rational_pow(Rational(theta[l - 1]), k) * Rational(2 * m0);
            if (g.coefficient(target) != expected) ++res.failures;
            // cross-check against compute_Xi: G equals (|u|^2 Xi)(u~ -> u)
            ChangeOfVars cov(n, l, q);
            Poly viaxi = xi_times_u2(p, m0, MultiIndex::unit(n - 1, m - 1), cov)
                             .twist_vars(theta);
            if (viaxi != g) ++res.failures;
          }
        }
      }
    }
  }
  return res;
}

CheckResult check_abc_coefficients(uint64_t seed, int per_signature) {
  Rng rng(seed);
  CheckResult res{"abc_coefficients", 0, 0, ""};
  const std::vector<std::vector<int>> signatures = {
      {1, -1}, {-1, 1}, {1, 1, -1}, {1, -1, -1}, {-1, -1, 1}};
  for (const auto& theta : signatures) {
    const int n = static_cast<int>(theta.size());
    QuadForm q(n, theta);
    for (int inst = 0; inst < per_signature; ++inst) {
      for (int j : {4, 6}) {
        const int k = j / 2;
        Poly pj = q.poly().pow(k);
        Poly p2 = random_homogeneous(rng, n, 2);
        for (int l = 1; l <= n; ++l) {
          for (int m = 1; m <= n - 1; ++m) {
            const int il = coord_m_of_l(m, l) - 1;
            const int l0 = l - 1;
            if (theta[l0] == theta[il]) continue;  // hypothesis (signs)
            ++res.instances;
            ChangeOfVars cov(n, l, q);
            std::map<int, Poly> phases;
            phases.emplace(2, p2);
            phases.emplace(j, pj);
            PhaseFamily f(q, std::move(phases));
            MultiIndex gamma2 = MultiIndex::unit(n - 1, m - 1, 2);  // (gamma(2);0) = 2 e_{m(l)}
            Poly F = b2_pivot_expression(f, j, m, gamma2, cov);
            auto d2 = [&](int a, int b) {
              MultiIndex w(n);
              w[a] += 1;
              w[b] += 1;
              return p2.coefficient(w);
            };
            auto cofq = [&](const MultiIndex& w) { return pj.coefficient(w); };
            auto thpow = [&](int i, int e) { return rational_pow(Rational(theta[i]), e); };
            MultiIndex cA(n);  // 2 e_l + (j-2) e_{m(l)}
            cA[l0] = 2;
            cA[il] += j - 2;
            MultiIndex cE(n);  // 2 e_{m(l)} + (j-2) e_l
            cE[il] = 2;
            cE[l0] += j - 2;
            bool bad = false;
            // A at u_{m(l)}^{j+2}
            {
              MultiIndex mono(n);
              mono[il] = j + 2;
              Rational expect = d2(il, l0) * cofq(cA);
              if (F.coefficient(mono) != expect || sgn(cofq(cA)) == 0) bad = true;
            }
            // B at u_{m(l)}^{j+1} u_l
            {
              MultiIndex mono(n);
              mono[il] = j + 1;
              mono[l0] += 1;
              Rational expect = (d2(l0, l0) - d2(il, il)) * thpow(il, k) * Rational(j) -
                                Rational(theta[il] - theta[l0]) * Rational(j) *
                                    thpow(il, k - 1) * d2(l0, l0);
              if (F.coefficient(mono) != expect) bad = true;
            }
            // C at u_{m(l)} u_l^{j+1}
            {
              MultiIndex mono(n);
              mono[il] = 1;
              mono[l0] += j + 1;
              Rational expect = (d2(l0, l0) - d2(il, il)) * thpow(l0, k) * Rational(j) -
                                Rational(theta[il] - theta[l0]) * Rational(j) *
                                    thpow(l0, k - 1) * d2(il, il);
              if (F.coefficient(mono) != expect) bad = true;
            }
            for (int i = 0; i < n; ++i) {
              if (i == l0 || i == il) continue;
              // D_i at u_i u_{m(l)}^{j+1}
              MultiIndex mono(n);
              mono[i] = 1;
              mono[il] += j + 1;
              Rational expect = d2(i, l0) * cofq(cA) * Rational(theta[il] * theta[i]);
              if (F.coefficient(mono) != expect) bad = true;
              // E_i at u_i u_l^{j+1}
              MultiIndex mono2(n);
              mono2[i] = 1;
              mono2[l0] += j + 1;
              Rational expect2 = -d2(i, il) * cofq(cE) * Rational(theta[l0] * theta[i]);
              if (F.coefficient(mono2) != expect2 || sgn(cofq(cE)) == 0) bad = true;
            }
            if (bad) {
              ++res.failures;
              if (res.detail.empty())
                res.detail = "n=" + std::to_string(n) + " j=" + std::to_string(j) +
                             " l=" + std::to_string(l) + " m=" + std::to_string(m);
            }
          }
        }
      }
    }
  }
  return res;
}

CheckResult check_decomposition_oracle(uint64_t seed, int families) {
  Rng rng(seed);
  CheckResult res{"decomposition_oracle", 0, 0, ""};
  std::uniform_int_distribution<int> dim(2, 3);
  std::uniform_int_distribution<int> dmax(2, 5);
  for (int inst = 0; inst < families; ++inst) {
    const int n = dim(rng);
    PhaseFamily f = random_admissible_family(rng, n, dmax(rng));
    std::uniform_int_distribution<int> lpick(1, n);
    ChangeOfVars cov(n, lpick(rng), f.q);
    SigmaExpansion exp = expand_phase_in_sigma(f, cov);
    auto oracle = oracle_direct_expansion(f, cov);
    ++res.instances;
    bool bad = false;
    ExpansionVars V = exp.symbolic_vars();
    for (int o = 1; o <= f.d; ++o) {
      for (const MultiIndex& gamma : multi_indices_of_order(n - 1, o)) {
        HomoElem lhs = exp.total_symbolic(gamma);
        auto it = oracle.find(gamma);
        HomoElem rhs = it == oracle.end() ? HomoElem::zero(n, V.count()) : it->second;
        if (!(lhs == rhs)) bad = true;
      }
    }
    if (bad) {
      ++res.failures;
      if (res.detail.empty()) res.detail = "family " + f.canonical_text();
    }
  }
  return res;
}

std::vector<CheckResult> run_all_checks(uint64_t seed) {
  std::vector<CheckResult> out;
  out.push_back(check_propB(seed, 50));
  out.push_back(check_propD(seed + 1, 50));
  out.push_back(check_xi_identity(seed + 2, 20));
  out.push_back(check_b2_monomial_coefficient());
  out.push_back(check_abc_coefficients(seed + 3, 10));
  out.push_back(check_decomposition_oracle(seed + 4, 25));
  return out;
}

}  // namespace carleson
