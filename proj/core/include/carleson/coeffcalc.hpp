#pragma once

#include "carleson/homo_elem.hpp"
#include "carleson/phase_family.hpp"

namespace carleson {

// Sector-dependent change of variables z <-> (tau, sigma); l is the
// distinguished coordinate, 1-based.
struct ChangeOfVars {
  int n = 0;
  int l = 1;
  QuadForm q;

  ChangeOfVars() = default;
  ChangeOfVars(int n_, int l_, QuadForm q_) : n(n_), l(l_), q(std::move(q_)) {
    if (l < 1 || l > n) throw std::invalid_argument("ChangeOfVars: l out of range");
    if (q.n != n) throw std::invalid_argument("ChangeOfVars: form dimension mismatch");
  }
};

// m(l) convention: position m in a length-(n-1) index corresponds to the
// coordinate m if m < l and m+1 otherwise (all 1-based).
int coord_m_of_l(int m, int l);

// (a; k): insert k at the l-th slot of a length-(n-1) index, giving length n.
MultiIndex insert_at(const MultiIndex& a, int k, int l);

// Variable layout for the expansion ring:
//   [0,n) u, n tau, n+1 s, then nu block, optional mu block, optional sigma.
struct ExpansionVars {
  int n = 0;
  std::vector<int> lambda;
  bool with_mu = false;
  bool with_sigma = false;

  int L() const { return static_cast<int>(lambda.size()); }
  int count() const { return n + 2 + L() * (with_mu ? 2 : 1) + (with_sigma ? n - 1 : 0); }
  int u(int i) const { return i; }
  int tau() const { return n; }
  int s() const { return n + 1; }
  int nu(int j) const { return n + 2 + lambda_pos(j); }
  int mu(int j) const {
    if (!with_mu) throw std::logic_error("ExpansionVars: no mu block");
    return n + 2 + L() + lambda_pos(j);
  }
  int sigma(int m) const {  // 0-based position
    if (!with_sigma) throw std::logic_error("ExpansionVars: no sigma block");
    return n + 2 + L() * (with_mu ? 2 : 1) + m;
  }
  int lambda_pos(int j) const;
  std::vector<std::string> names() const;
};

// z in terms of (u, tau, sigma): z^{(l)} = (tau u~^{(l)} -
// theta_l u_l sigma)/|u|, z_l = (theta_l u_l tau + u~^{(l)}.sigma)/|u|.
std::vector<double> z_from_coords(std::span<const double> u, double tau,
                                  std::span<const double> sigma, const ChangeOfVars& cov);
// exact version; unorm must equal sqrt(sum u_i^2) exactly
std::vector<Rational> z_from_coords(std::span<const Rational> u, const Rational& tau,
                                    std::span<const Rational> sigma,
                                    const ChangeOfVars& cov, const Rational& unorm);
// forward map (tau, sigma) from (u, z); requires u_l != 0
std::pair<Rational, std::vector<Rational>> coords_from_z(std::span<const Rational> u,
                                                         std::span<const Rational> z,
                                                         const ChangeOfVars& cov,
                                                         const Rational& unorm);

// The three coefficient constructors of the sigma-expansion.  B is a
// polynomial in w insensitive to theta; D and E mix u and u~ and are
// expanded into honest polynomials in u.
Poly compute_B(const Poly& pj, int j, const MultiIndex& gamma, int l);
Poly compute_D(const Poly& pj, int j, const MultiIndex& gamma, const ChangeOfVars& cov);
HomoElem compute_E(const Poly& pj, int j, const MultiIndex& gamma, const ChangeOfVars& cov);

// Xi_{j,gamma(1)}: the order-1-in-tau coefficient function for |gamma|=1
// rows; |u|^2 Xi is a polynomial in u, so the result has spow == 2.
// For j >= 3 this equals the tau-coefficient of compute_E; for j == 2 the
// E-function is identically zero while Xi is not (the beta = 0 term).
HomoElem compute_Xi(const Poly& pj, int j, const MultiIndex& gamma1, const ChangeOfVars& cov);

// Matrix-entry views (HomoElem in the (u,tau,s) layout):
//   B entry: B_{j,g}(u~/|u|) tau^{j-|g|}      = B(u~) tau^{j-|g|} / s^j
//   D entry: D_{j,g}(u~/|u|) |u|^{j-|g|}      = D(u) / s^{|g|}
//   E entry: E_{j,g}(u,tau) as defined
HomoElem b_entry(const Poly& pj, int j, const MultiIndex& gamma, const ChangeOfVars& cov);
HomoElem d_entry(const Poly& pj, int j, const MultiIndex& gamma, const ChangeOfVars& cov);
HomoElem e_entry(const Poly& pj, int j, const MultiIndex& gamma, const ChangeOfVars& cov);

// Per-gamma decomposition of the phase coefficient C[sigma^gamma].
struct SigmaExpansion {
  ChangeOfVars cov;
  std::vector<int> lambda;
  int d = 0;

  struct Parts {
    std::vector<std::pair<int, HomoElem>> bpart, dpart, epart;  // (j, entry)
  };
  std::map<MultiIndex, Parts> coeffs;  // gamma with 1 <= |gamma| <= d

  ExpansionVars symbolic_vars() const { return ExpansionVars{cov.n, lambda, true, false}; }
  // sum_j (nu_j - mu_j) Bentry + nu_j (Dentry + Eentry), nu/mu symbolic
  HomoElem total_symbolic(const MultiIndex& gamma) const;
  // same with rational nu/mu substituted; result stays in the symbolic layout
  HomoElem total_numeric(const MultiIndex& gamma, const StoppingValue& nu,
                         const StoppingValue& mu) const;
};

SigmaExpansion expand_phase_in_sigma(const PhaseFamily& f, const ChangeOfVars& cov,
                                     bool allow_inadmissible = false);

// Ground truth for the decomposition: substitute z(u,tau,sigma) symbolically
// into P_nu(u+z) - P_mu(z), reduce in the quotient ring and collect sigma
// monomials.  Entirely independent of the B/D/E formulas.  Keys cover
// 0 <= |gamma| <= d; values live in the (u,tau,s,nu,mu) layout.
std::map<MultiIndex, HomoElem> oracle_direct_expansion(const PhaseFamily& f,
                                                       const ChangeOfVars& cov,
                                                       bool allow_inadmissible = false);

// embed a (u,tau,s) HomoElem into a wider layout with the same u count
HomoElem embed_uts(const HomoElem& e, const ExpansionVars& V);

}  // namespace carleson
