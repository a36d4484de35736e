#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "carleson/multi_index.hpp"
#include "carleson/rational.hpp"

namespace carleson {

// Sparse multivariate polynomial with exact rational coefficients.
// Invariants: all stored coefficients are nonzero; term keys have length
// nvars(); the underlying std::map keeps terms in lexicographic order, which
// is the canonical order for equality, hashing and serialization.
class Poly {
 public:
  using TermMap = std::map<MultiIndex, Rational>;

  Poly() : nvars_(0) {}
  explicit Poly(int nvars) : nvars_(nvars) {
    if (nvars < 0) throw std::invalid_argument("Poly: negative nvars");
  }

  static Poly zero(int nvars) { return Poly(nvars); }
  static Poly constant(int nvars, const Rational& c);
  static Poly variable(int nvars, int i);      // x_i
  static Poly monomial(const MultiIndex& a, const Rational& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  int term_count() const { return static_cast<int>(terms_.size()); }
  const TermMap& terms() const { return terms_; }

  // max |alpha| over stored terms; zero polynomial reports -1
  int total_degree() const;
  // max exponent of variable i over stored terms; zero polynomial reports -1
  int degree_in(int i) const;

  bool is_homogeneous(int j) const;  // zero polynomial counts for every j

  void add_term(const MultiIndex& a, const Rational& c);

  Rational coefficient(const MultiIndex& a) const;
  std::optional<MultiIndex> leading_monomial() const;  // lexicographically last

  Poly operator-() const;
  Poly& operator+=(const Poly& b);
  Poly& operator-=(const Poly& b);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(const Poly& b) { return *this = *this * b; }
  friend bool operator==(const Poly& a, const Poly& b) = default;

  Poly scaled(const Rational& c) const;
  Poly pow(int k) const;

  // iterated partial derivative; zero when |alpha| exceeds the degree
  Poly derivative(const MultiIndex& alpha) const;

  Rational eval(std::span<const Rational> point) const;
  double eval_double(std::span<const double> point) const;

  // substitute a rational value for variable i; the variable stays in the
  // layout with exponent zero
  Poly substitute(int i, const Rational& value) const;

  // x_i -> theta_i * x_i with theta_i = +-1 (the twist u -> u~)
  Poly twist_vars(std::span<const int> theta) const;

  // relabel variables into a wider ring: var i -> var var_map[i]
  Poly embed(int new_nvars, std::span<const int> var_map) const;

  // drop variables whose exponents are zero everywhere; keep_map[i] gives the
  // position of old var i in the new layout or -1
  Poly drop_vars(std::span<const int> keep_map, int new_nvars) const;

  // coefficient of x_i^k, as a polynomial in the same layout (exponent of
  // x_i zeroed out)
  Poly coefficient_of(int i, int k) const;

 private:
  void check_var_count(const Poly& b) const {
    if (nvars_ != b.nvars_)
      throw std::invalid_argument("Poly: variable-count mismatch");
  }
  int nvars_;
  TermMap terms_;
};

enum class PolyOp { Add, Sub, Mul };
Poly poly_arith(const Poly& a, const Poly& b, PolyOp op);

// substitute polynomial arguments for the variables (p.nvars() == args.size())
Poly poly_at_polys(const Poly& p, const std::vector<Poly>& args);

// Deterministic search for a rational point where p does not vanish.  Scans
// the lattice {0, +-1, ..., +-(ceil(D/2)+1)}^nvars with D = total degree; a
// nonzero polynomial of total degree D cannot vanish on a grid with D+1
// distinct values per coordinate, so an empty scan certifies p == 0.
std::optional<std::vector<Rational>> find_nonvanishing_witness(const Poly& p);

}  // namespace carleson
