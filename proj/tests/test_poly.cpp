#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "carleson/checks.hpp"
#include "carleson/homo_elem.hpp"
#include "carleson/poly_io.hpp"

using namespace carleson;

namespace {

Poly var(int nvars, int i) { return Poly::variable(nvars, i); }

Poly random_poly(Rng& rng, int nvars, int max_deg) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  Poly p(nvars);
  for (int t = 0; t < 6; ++t) {
    MultiIndex a(nvars);
    int budget = deg(rng);
    std::uniform_int_distribution<int> pick(0, nvars - 1);
    for (int k = 0; k < budget; ++k) a[pick(rng)] += 1;
    p.add_term(a, random_coeff(rng));
  }
  return p;
}

std::vector<Rational> random_point(Rng& rng, int nvars) {
  std::vector<Rational> pt;
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 4);
  for (int i = 0; i < nvars; ++i) pt.push_back(make_rational(num(rng), den(rng)));
  return pt;
}

}  // namespace

TEST_CASE("poly_arith basic examples") {
  Poly x1sq = Poly::monomial(MultiIndex{2, 0}, Rational(1));
  CHECK(poly_arith(x1sq, x1sq, PolyOp::Add) == x1sq.scaled(Rational(2)));

  Poly a = var(2, 0) + var(2, 1);
  Poly b = var(2, 0) - var(2, 1);
  Poly expect = Poly::monomial(MultiIndex{2, 0}, Rational(1)) -
                Poly::monomial(MultiIndex{0, 2}, Rational(1));
  CHECK(poly_arith(a, b, PolyOp::Mul) == expect);

  CHECK(poly_arith(a, Poly::zero(2), PolyOp::Mul).is_zero());
  CHECK_THROWS_AS(poly_arith(a, Poly::zero(3), PolyOp::Add), std::invalid_argument);
}

TEST_CASE("ring axioms on random triples") {
  Rng rng(11);
  for (int it = 0; it < 40; ++it) {
    Poly a = random_poly(rng, 3, 4), b = random_poly(rng, 3, 4), c = random_poly(rng, 3, 4);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
  }
}

TEST_CASE("partial derivatives") {
  // second derivative of a square
  Poly p = Poly::monomial(MultiIndex{2, 0}, Rational(1)) +
           Poly::monomial(MultiIndex{0, 2}, Rational(1));
  CHECK(p.derivative(MultiIndex{2, 0}) == Poly::constant(2, Rational(2)));

  // vanishing mixed partial of a diagonal form
  Poly q = Poly::monomial(MultiIndex{2, 0}, Rational(1)) -
           Poly::monomial(MultiIndex{0, 2}, Rational(1));
  CHECK(q.derivative(MultiIndex{1, 1}).is_zero());

  // over-differentiation
  Poly cube = Poly::monomial(MultiIndex{2}, Rational(1));
  CHECK(cube.derivative(MultiIndex{3}).is_zero());
}

TEST_CASE("is_homogeneous") {
  Poly p = Poly::monomial(MultiIndex{1, 1}, Rational(1)) +
           Poly::monomial(MultiIndex{0, 2}, Rational(1));
  CHECK(p.is_homogeneous(2));
  Poly q = Poly::monomial(MultiIndex{2, 0}, Rational(1)) +
           Poly::monomial(MultiIndex{1, 0}, Rational(1));
  CHECK_FALSE(q.is_homogeneous(2));
  CHECK(Poly::zero(2).is_homogeneous(2));
  CHECK(Poly::zero(2).is_homogeneous(5));
}

TEST_CASE("taylor_shift binomial example") {
  // p = y^2 about a symbolic point v = (a): {0: a^2, 1: 2a, 2: 1}
  Poly p = Poly::monomial(MultiIndex{2}, Rational(1));
  // HomoElem layout for n=1: (u1, tau, s)
  HomoElem a(1, Poly::variable(3, 0), 0);
  auto exp = taylor_shift(p, {a});
  REQUIRE(exp.size() == 3);
  CHECK(exp.at(MultiIndex{0}) == a * a);
  CHECK(exp.at(MultiIndex{1}) == a.scaled(Rational(2)));
  CHECK(exp.at(MultiIndex{2}) == HomoElem(1, Poly::constant(3, Rational(1)), 0));
}

TEST_CASE("taylor_shift degree bound for homogeneous input") {
  Rng rng(5);
  Poly p = random_homogeneous(rng, 2, 3);
  std::vector<HomoElem> v = {HomoElem(2, Poly::variable(4, 0), 0),
                             HomoElem(2, Poly::variable(4, 1), 0)};
  auto exp = taylor_shift(p, v);
  for (const auto& [alpha, coeff] : exp) CHECK(alpha.order() <= 3);
}

TEST_CASE("taylor_shift reassembly equals direct evaluation at random points") {
  Rng rng(17);
  for (int it = 0; it < 20; ++it) {
    Poly p = random_poly(rng, 2, 4);
    std::vector<Rational> v = random_point(rng, 2), w = random_point(rng, 2);
    // symbolic point (v1, v2) as constants in the HomoElem ring
    std::vector<HomoElem> vp = {HomoElem(2, Poly::constant(4, v[0]), 0),
                                HomoElem(2, Poly::constant(4, v[1]), 0)};
    auto exp = taylor_shift(p, vp);
    Rational sum(0);
    for (const auto& [alpha, coeff] : exp) {
      // coefficient is a constant here; evaluate and multiply by w^alpha
      Rational c = coeff.body().coefficient(MultiIndex{0, 0, 0, 0});
      Rational mono(1);
      for (int i = 0; i < 2; ++i)
        for (int k = 0; k < alpha[i]; ++k) mono *= w[i];
      sum += c * mono;
    }
    std::vector<Rational> vw = {v[0] + w[0], v[1] + w[1]};
    CHECK(sum == p.eval(vw));
  }
}

TEST_CASE("homo_reduce examples") {
  // s^2 u1 == (u1^2 + u2^2) u1 for n = 2; layout (u1,u2,tau,s)
  MultiIndex s2u1{1, 0, 0, 2};
  HomoElem e(2, Poly::monomial(s2u1, Rational(1)), 0);
  Poly expect = Poly::monomial(MultiIndex{3, 0, 0, 0}, Rational(1)) +
                Poly::monomial(MultiIndex{1, 2, 0, 0}, Rational(1));
  CHECK(e.body() == expect);
  CHECK(e.spow() == 0);

  // s^3 -> s (u1^2 + u2^2)
  HomoElem s3(2, Poly::monomial(MultiIndex{0, 0, 0, 3}, Rational(1)), 0);
  Poly expect3 = Poly::monomial(MultiIndex{2, 0, 0, 1}, Rational(1)) +
                 Poly::monomial(MultiIndex{0, 2, 0, 1}, Rational(1));
  CHECK(s3.body() == expect3);

  // idempotence: already reduced stays put
  HomoElem r(2, expect3, 0);
  CHECK(r.body() == expect3);
}

TEST_CASE("homo_reduce is multiplicative on random elements") {
  Rng rng(23);
  for (int it = 0; it < 25; ++it) {
    Poly bx = random_poly(rng, 4, 3);
    Poly by = random_poly(rng, 4, 3);
    std::uniform_int_distribution<int> sp(0, 2);
    HomoElem x(2, bx, sp(rng)), y(2, by, sp(rng));
    HomoElem xy = x * y;
    // rebuilding from raw bodies gives the same quotient-ring element
    HomoElem raw(2, bx * by, x.spow() + y.spow());
    CHECK(xy == raw);
  }
}

TEST_CASE("homo equality cross-multiplies s powers") {
  // u1^2 + u2^2 == s^2 as elements, i.e. (u1^2+u2^2)/s^0 == s^4 / s^2
  Poly usq = Poly::monomial(MultiIndex{2, 0, 0, 0}, Rational(1)) +
             Poly::monomial(MultiIndex{0, 2, 0, 0}, Rational(1));
  HomoElem lhs(2, usq, 0);
  HomoElem rhs(2, Poly::monomial(MultiIndex{0, 0, 0, 4}, Rational(1)), 2);
  CHECK(lhs == rhs);
}

TEST_CASE("eval and witness search") {
  // commutator is identically zero
  Poly comm = Poly::monomial(MultiIndex{1, 1}, Rational(1)) -
              Poly::monomial(MultiIndex{1, 1}, Rational(1));
  CHECK(comm.is_zero());
  CHECK_FALSE(find_nonvanishing_witness(comm).has_value());
  CHECK_FALSE(find_nonvanishing_witness(Poly::zero(2)).has_value());

  Poly p = Poly::monomial(MultiIndex{2, 0}, Rational(1)) -
           Poly::monomial(MultiIndex{0, 2}, Rational(1));
  auto w = find_nonvanishing_witness(p);
  REQUIRE(w.has_value());
  CHECK(sgn(p.eval(*w)) != 0);
}

TEST_CASE("witness search finds a point iff nonzero, random ensemble") {
  Rng rng(31);
  for (int it = 0; it < 30; ++it) {
    Poly p = random_poly(rng, 2, 5);
    auto w = find_nonvanishing_witness(p);
    if (p.is_zero()) {
      CHECK_FALSE(w.has_value());
    } else {
      REQUIRE(w.has_value());
      CHECK(sgn(p.eval(*w)) != 0);
    }
  }
}

TEST_CASE("polynomial text round trip and canonical order") {
  Poly p = Poly::monomial(MultiIndex{2, 1}, Rational(3)) +
           Poly::monomial(MultiIndex{0, 3}, make_rational(-1, 2));
  std::string text = poly_to_text(p);
  CHECK(text == "-1/2 * u2^3 + 3 * u1^2 u2");
  CHECK(poly_from_text(text, 2) == p);
  CHECK(poly_from_text("0", 2).is_zero());
  CHECK(poly_from_text("2 * u1 u1", 2) ==
        Poly::monomial(MultiIndex{2, 0}, Rational(2)));
  CHECK_THROWS_AS(poly_from_text("1 * u3", 2), std::invalid_argument);
  CHECK_THROWS_AS(poly_from_text("1/0 * u1", 2), std::invalid_argument);

  nlohmann::json j = poly_to_json(p);
  CHECK(poly_from_json(j, 2) == p);
}

TEST_CASE("text round trip on random polys") {
  Rng rng(41);
  for (int it = 0; it < 20; ++it) {
    Poly p = random_poly(rng, 3, 4);
    CHECK(poly_from_text(poly_to_text(p), 3) == p);
    CHECK(poly_from_json(poly_to_json(p), 3) == p);
  }
}
