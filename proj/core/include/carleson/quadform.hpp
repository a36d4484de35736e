#pragma once

#include <span>
#include <string>
#include <vector>

#include "carleson/poly.hpp"

namespace carleson {

// Diagonal quadratic form Q(y) = sum theta_i y_i^2 with theta_i in {+1,-1}.
struct QuadForm {
  int n = 0;
  std::vector<int> theta;

  QuadForm() = default;
  QuadForm(int n_, std::vector<int> theta_);

  // Q as a polynomial in n variables
  Poly poly() const;
  bool definite() const {
    for (int t : theta)
      if (t != theta[0]) return false;
    return true;
  }
};

// u~ = (theta_1 u_1, ..., theta_n u_n); involutive.
std::vector<Rational> twist(std::span<const Rational> u, const QuadForm& q);
std::vector<double> twist(std::span<const double> u, const QuadForm& q);

struct PhaseClassification {
  bool zero = false;
  bool qtype = false;      // p_j = C Q^{j/2}, C != 0
  bool parabolic = false;  // p_j = C (|y|^2)^{j/2}, C != 0
};

// Exact identity test against C*Q^{j/2} (and C*(|y|^2)^{j/2}); C is recovered
// from the lexicographically first nonzero coefficient, then the whole
// identity is checked.  Requires p homogeneous of degree j.
PhaseClassification classify_phase(const Poly& p, int j, const QuadForm& q);

// Definition of "Q-type in the coordinate i" relative to the distinguished
// coordinate l (1-based): theta_l d_{2e_l} == theta_i d_{2e_i} and all cross
// coefficients d_{e_i + e_j} vanish for j != i.
bool is_qtype_in_coordinate(const Poly& p2, int i, int l, const QuadForm& q);

// Exact Lagrange congruence diagonalization of a symmetric rational matrix:
// transform^T * Q * transform == diag(diag).  theta records the signs; the
// irrational residual rescalings sqrt(|a_i|) are reported as doubles for the
// numeric module only.
struct CongruenceResult {
  QuadForm form;
  std::vector<std::vector<Rational>> transform;
  std::vector<Rational> diag;
  std::vector<double> scales;
};
CongruenceResult normalize_quadratic_form(const std::vector<std::vector<Rational>>& qmat);

}  // namespace carleson
