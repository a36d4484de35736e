#pragma once

#include <optional>

#include "carleson/coeffcalc.hpp"

namespace carleson {

// Raised when the case analysis reaches a state the admissibility gate is
// supposed to exclude, or when an existence guarantee of the coefficient
// calculus fails on a valid input.  Exit code 2 territory.
struct InternalInvariantError : std::logic_error {
  std::string code;
  InternalInvariantError(std::string code_, const std::string& what)
      : std::logic_error(code_ + ": " + what), code(std::move(code_)) {}
};

// The sigma exponent set: all gamma with 1 <= |gamma| <= d in n-1 variables,
// graded (all orders 1 first, then 2, ...) and lexicographic within a grade.
std::vector<MultiIndex> sigma_index_set(int n, int d);

struct PolyMatrix {
  std::vector<MultiIndex> rows;  // gamma labels
  std::vector<int> cols;         // degree labels j
  std::vector<std::vector<HomoElem>> entries;

  int nrows() const { return static_cast<int>(rows.size()); }
  int ncols() const { return static_cast<int>(cols.size()); }
  const HomoElem& at(int r, int c) const { return entries[r][c]; }
  int row_index(const MultiIndex& gamma) const;
  int col_index(int j) const;
};

// Full D x L matrices of the row identity C = B (nu - mu) + D nu + E nu,
// entries in the (u, tau, s) layout.
struct Matrices {
  PolyMatrix B, D, E;
};
Matrices build_matrices(const PhaseFamily& f, const ChangeOfVars& cov,
                        bool allow_inadmissible = false);

enum class CaseLabel { A, B1, B2 };
std::string to_string(CaseLabel c);

enum class B2Subcase : int { S1 = 1, S2 = 2, S3 = 3, S4 = 4 };

struct CaseInfo {
  CaseLabel label;
  int m0 = 0;                 // dominant index
  std::vector<int> dominant;  // all j with |nu_j| >= r/L
};

// Case split of the certification algorithm.  Dominance threshold is
// |nu_j| >= r/L, which always selects at least one index since |nu|_1 >= r.
// A non-Q-type dominant index forces case A (priority choice); otherwise a
// Q-type term dominates and p_2 decides between B1 and B2.
CaseInfo classify_case(const PhaseFamily& f, const StoppingValue& nu);

struct DistinguishedSet {
  CaseLabel label = CaseLabel::A;
  std::optional<B2Subcase> subcase;
  std::optional<int> m;               // B2 coordinate index, 1..n-1
  std::map<int, MultiIndex> entries;  // j -> gamma(j); j=2 maps to gamma^m(1) in B2
  std::vector<int> cols;              // Bstar columns (Lambda, or Lambda minus 2)

  bool contains(const MultiIndex& gamma) const;
};

// gamma(j) selection for the distinguished set: lexicographically smallest
// gamma with |gamma| = j and B_{j,gamma} != 0, for every j >= 3 in Lambda
// (plus j = 2 in case A).  Case B2 callers add gamma^m(1) themselves.
DistinguishedSet choose_Dstar(const PhaseFamily& f, const ChangeOfVars& cov, CaseLabel label);

PolyMatrix assemble_Bstar(const DistinguishedSet& ds, const Matrices& M);

// det Bstar via the triangular product of diagonal entries (the closed
// product formulas) and via generic cofactor expansion for cross-checking.
HomoElem det_Bstar(const DistinguishedSet& ds, const Matrices& M);
HomoElem det_generic(const PolyMatrix& A);

// Bstar with the j-th column replaced by -(D* + E*) nu, nu symbolic; the
// replacement column sums over all of Lambda even when the Cramer system is
// restricted.  Entries live in the (u,tau,s,nu) layout.
PolyMatrix build_Bstar_j(const DistinguishedSet& ds, int j, const Matrices& M);
HomoElem det_Bstar_j(const DistinguishedSet& ds, int j, const Matrices& M);

// R^gamma_{nu,u}(tau) of the Cramer elimination, linear in symbolic nu.
HomoElem compute_R_gamma(const DistinguishedSet& ds, const MultiIndex& gamma,
                         const Matrices& M);

// tau^{d0}-coefficient of R written as |u|^{-s1} W(u) with W a polynomial in
// u (coefficients linear in the nu symbols).  W lives in the (u, nu) layout.
struct WExtract {
  Poly W;
  int s1 = 0;
  int s0 = 0;
};
WExtract extract_W(const HomoElem& R, int d0);

struct MagnitudeWitness {
  MultiIndex monomial;  // u-exponent whose coefficient is nu_{m0} * coeff alone
  Rational coeff;
};

struct B2TraceEntry {
  int m = 0;
  B2Subcase subcase = B2Subcase::S1;
  bool certified = false;
  std::optional<MultiIndex> gamma2;
};

struct Certificate {
  std::string family_hash;
  int n = 0;
  int l = 1;
  std::vector<int> lambda;
  StoppingValue nu;
  CaseLabel label = CaseLabel::A;
  std::optional<B2Subcase> subcase;
  std::optional<int> m;
  int m0 = 0;
  DistinguishedSet dstar;
  MultiIndex gamma;  // distinguished index in D \ D*
  int d0 = 0;
  HomoElem det_bstar;           // (u,tau,s) layout
  Poly W_sym;                   // (u, nu) layout, linear in nu
  int s1 = 0, s0 = 0;
  Poly W_num;                   // u layout, numeric nu substituted
  std::vector<Rational> witness;
  Rational witness_value;
  MagnitudeWitness magnitude;
  std::vector<B2TraceEntry> trace;  // B2 per-m decisions
};

Certificate certify(const PhaseFamily& f, const StoppingValue& nu, const ChangeOfVars& cov);
Certificate run_case_B2(const PhaseFamily& f, const StoppingValue& nu, int m0,
                        const ChangeOfVars& cov);

// Case (2)/(4) pivot expression of the B2 analysis, as a polynomial in u:
// B_{2,g1}(u~) D_{m0,g2}(u) + theta_l theta_{m(l)} B_{2,g2}(u~) B_{m0,g1}(u~).
Poly b2_pivot_expression(const PhaseFamily& f, int m0, int m, const MultiIndex& gamma2,
                         const ChangeOfVars& cov);

}  // namespace carleson
