#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace carleson {

// Exact rational scalar used by every symbolic module.
using Rational = mpq_class;

inline Rational rational_from_string(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0)
    throw std::invalid_argument("bad rational literal: '" + text + "'");
  if (q.get_den() == 0)
    throw std::invalid_argument("zero denominator in rational: '" + text + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

// GMP leaves two-argument construction uncanonicalized; always go through
// here when building a rational from a numerator/denominator pair.
inline Rational make_rational(long num, long den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline int sign(const Rational& q) { return sgn(q); }

inline Rational factorial(int k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return Rational(f);
}

inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational rational_pow(const Rational& q, int k) {
  if (k < 0) throw std::invalid_argument("rational_pow: negative exponent");
  Rational r(1), base = q;
  while (k > 0) {
    if (k & 1) r *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return r;
}

}  // namespace carleson
