#pragma once

#include "carleson/poly.hpp"

namespace carleson {

// Element of Q[u_1..u_n, tau, s, extras...]/(s^2 - sum u_i^2) carried with a
// power-of-s denominator: the represented value is body / s^spow, where s
// stands for |u|.  Variable layout convention for the body:
//   [0, n)  u_1..u_n
//   n       tau
//   n+1     s
//   n+2...  inert parameter variables (nu, mu, sigma) untouched by reduction
// The body is kept reduced (degree in s at most 1, every s^2 replaced by
// sum u_i^2) and common factors of s are cancelled against spow.
class HomoElem {
 public:
  HomoElem() : n_(0), spow_(0) {}
  HomoElem(int n, Poly body, int spow);

  static HomoElem zero(int n, int nvars) { return HomoElem(n, Poly(nvars), 0); }

  int uvars() const { return n_; }
  int nvars() const { return body_.nvars(); }
  int spow() const { return spow_; }
  const Poly& body() const { return body_; }
  bool is_zero() const { return body_.is_zero(); }

  int tau_index() const { return n_; }
  int s_index() const { return n_ + 1; }

  HomoElem operator-() const { return HomoElem(n_, -body_, spow_); }
  friend HomoElem operator+(const HomoElem& a, const HomoElem& b);
  friend HomoElem operator-(const HomoElem& a, const HomoElem& b);
  friend HomoElem operator*(const HomoElem& a, const HomoElem& b);
  HomoElem& operator+=(const HomoElem& b) { return *this = *this + b; }
  HomoElem& operator-=(const HomoElem& b) { return *this = *this - b; }
  HomoElem& operator*=(const HomoElem& b) { return *this = *this * b; }

  HomoElem scaled(const Rational& c) const { return HomoElem(n_, body_.scaled(c), spow_); }
  HomoElem pow(int k) const;

  // equality in the quotient field: cross-multiply by s powers, reduce,
  // compare canonical bodies
  friend bool operator==(const HomoElem& a, const HomoElem& b);

  // multiply by a plain polynomial in the same layout
  HomoElem times_poly(const Poly& p) const { return HomoElem(n_, body_ * p, spow_); }

  // divide by s^k (increase the denominator)
  HomoElem over_s(int k) const { return HomoElem(n_, body_, spow_ + k); }

  // coefficient of tau^k, still a HomoElem (tau exponent zeroed)
  HomoElem tau_coefficient(int k) const;
  // minimal tau degree over body terms; -1 for the zero element
  int min_tau_degree() const;
  int max_tau_degree() const;

  // substitute a rational for an inert parameter variable
  HomoElem substitute(int var, const Rational& value) const;

  // exact evaluation at a rational point with rational |u|: caller supplies
  // point for (u, tau, extras...) and the exact value s0 of sqrt(sum u_i^2)
  Rational eval_at(std::span<const Rational> uref, const Rational& s0) const;

 private:
  int n_;
  Poly body_;
  int spow_;
  void normalize();
};

// s^2 -> sum_{i<n} u_i^2 applied until the s-degree is at most 1; idempotent.
// HomoElem applies it on construction, so elements are always reduced.
Poly homo_reduce_body(const Poly& body, int n);

// Taylor expansion of p about a symbolic point: p(v + w) as a map
// w-exponent -> HomoElem coefficient, i.e. coefficient alpha is
// (d_alpha p)(v) / alpha!.  The point entries must share one layout.
std::map<MultiIndex, HomoElem> taylor_shift(const Poly& p,
                                            const std::vector<HomoElem>& point);

// Evaluate p at a vector of HomoElem arguments (full substitution).
HomoElem poly_at(const Poly& p, const std::vector<HomoElem>& args);

}  // namespace carleson
