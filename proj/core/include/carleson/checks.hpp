#pragma once

#include <random>

#include "carleson/matrixcert.hpp"

namespace carleson {

using Rng = std::mt19937_64;

// Seeded generators for the property ensembles.  All randomness in the
// project flows through one of these, keyed by the run seed.
Rational random_coeff(Rng& rng, int lo = -3, int hi = 3);
Poly random_homogeneous(Rng& rng, int nvars, int degree, int lo = -3, int hi = 3);
QuadForm random_quadform(Rng& rng, int n);
PhaseFamily random_admissible_family(Rng& rng, int n, int dmax);

struct CheckResult {
  std::string name;
  int instances = 0;
  int failures = 0;
  std::string detail;
  bool ok() const { return failures == 0 && instances > 0; }
};

// B_{j,gamma} property suite: homogeneity, existence of |gamma| = j with
// B != 0, odd-order vanishing for parabolic phases, order-1 existence for
// non-parabolic phases, order-2 existence for parabolic phases.
CheckResult check_propB(uint64_t seed, int per_degree, int degree_max = 6);

// D_{j,gamma} property suite: homogeneity, the Q-type biconditional against
// the all-order-1 vanishing test, and order-2 existence for Q-type phases,
// over signatures (2,0), (1,1), (2,1), (1,2).
CheckResult check_propD(uint64_t seed, int per_degree);

// |u|^2 Xi - (sum_i theta_i u_i d_i) D == -theta^{(gamma;1)} B, exact, for
// phases whose support has all-even exponents; all l, all m.
CheckResult check_xi_identity(uint64_t seed, int instances);

// For p_{m0} = Q^{m0/2} and theta_l != theta_{m(l)}: the coefficient of
// u^{m0 e_l - e_l + e_{m(l)}} in the subcase-(1) pivot equals
// theta_l^{m0/2} * 2 m0.  Enumerates m0 in {4,6}, all sign patterns.
CheckResult check_b2_monomial_coefficient();

// Closed forms of the five isolated coefficients A, B, C, D_i, E_i of the
// case-(4) pivot with gamma(2) = 2 e_m, on random (p_2, Q^k) pairs per mixed
// signature, using c_{2w} = (k!/w!) theta^w.
CheckResult check_abc_coefficients(uint64_t seed, int per_signature);

// Decomposition exactness: symbolic B/D/E assembly equals the direct
// substitution oracle for every gamma, on seeded admissible families.
CheckResult check_decomposition_oracle(uint64_t seed, int families);

std::vector<CheckResult> run_all_checks(uint64_t seed);

}  // namespace carleson
