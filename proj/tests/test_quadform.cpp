#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carleson/checks.hpp"
#include "carleson/quadform.hpp"

using namespace carleson;

namespace {

Poly mono(std::initializer_list<int> e, const Rational& c) {
  return Poly::monomial(MultiIndex(e), c);
}

}  // namespace

TEST_CASE("twist definition and involution") {
  QuadForm q(2, {1, -1});
  std::vector<Rational> u = {Rational(3), Rational(5)};
  auto t = twist(u, q);
  CHECK(t[0] == 3);
  CHECK(t[1] == -5);

  QuadForm id3(3, {1, 1, 1});
  std::vector<Rational> v = {Rational(1), Rational(-2), Rational(7)};
  CHECK(twist(v, id3) == v);

  Rng rng(3);
  for (int it = 0; it < 10; ++it) {
    QuadForm qq = random_quadform(rng, 3);
    std::vector<Rational> w = {random_coeff(rng), random_coeff(rng), random_coeff(rng)};
    CHECK(twist(twist(w, qq), qq) == w);
  }
  CHECK_THROWS_AS(twist(u, id3), std::invalid_argument);
}

TEST_CASE("classify_phase examples") {
  QuadForm q(2, {1, -1});
  // (y1^2 - y2^2)^2 is Q-type with C = 1
  Poly p4 = q.poly().pow(2);
  auto c4 = classify_phase(p4, 4, q);
  CHECK(c4.qtype);
  CHECK_FALSE(c4.parabolic);

  // y1 y2 is neither
  auto c2 = classify_phase(mono({1, 1}, Rational(1)), 2, q);
  CHECK_FALSE(c2.qtype);
  CHECK_FALSE(c2.parabolic);
  CHECK_FALSE(c2.zero);

  // with theta all +1, 3(y1^2+y2^2) is both Q-type and parabolic
  QuadForm plus(2, {1, 1});
  Poly both = plus.poly().scaled(Rational(3));
  auto cb = classify_phase(both, 2, plus);
  CHECK(cb.qtype);
  CHECK(cb.parabolic);

  CHECK(classify_phase(Poly::zero(2), 2, q).zero);
  CHECK_THROWS_AS(classify_phase(mono({1, 0}, Rational(1)), 2, q), std::invalid_argument);
}

TEST_CASE("classify_phase detects C Q^{j/2} for random C and even j <= 8") {
  Rng rng(19);
  for (int n = 2; n <= 3; ++n) {
    for (int it = 0; it < 10; ++it) {
      QuadForm q = random_quadform(rng, n);
      for (int j = 2; j <= 8; j += 2) {
        Rational c = random_coeff(rng, 1, 5);
        if (sgn(c) == 0) c = 1;
        Poly p = q.poly().pow(j / 2).scaled(c);
        CHECK(classify_phase(p, j, q).qtype);
      }
    }
  }
}

TEST_CASE("check_admissibility gate") {
  QuadForm q(3, {1, 1, -1});
  // ok family: p2 = y1 y2, p3 = y1^3
  std::map<int, Poly> phases;
  phases.emplace(2, mono({1, 1, 0}, Rational(1)));
  phases.emplace(3, mono({3, 0, 0}, Rational(1)));
  PhaseFamily f(q, phases);
  CHECK(check_admissibility(f).ok);

  // p2 = Q rejected
  std::map<int, Poly> bad1;
  bad1.emplace(2, q.poly().scaled(Rational(-2)));
  PhaseFamily f1(q, bad1);
  auto a1 = check_admissibility(f1);
  CHECK_FALSE(a1.ok);
  CHECK(*a1.reason == RejectReason::QuadraticIsQ);

  // linear phase rejected
  std::map<int, Poly> bad2;
  bad2.emplace(1, mono({1, 0, 0}, Rational(1)));
  bad2.emplace(2, mono({1, 1, 0}, Rational(1)));
  PhaseFamily f2(q, bad2);
  auto a2 = check_admissibility(f2);
  CHECK_FALSE(a2.ok);
  CHECK(*a2.reason == RejectReason::LinearPhase);

  // n = 1 rejected
  QuadForm q1(1, {1});
  std::map<int, Poly> bad3;
  bad3.emplace(2, Poly::monomial(MultiIndex{2}, Rational(1)));
  PhaseFamily f3(q1, bad3);
  auto a3 = check_admissibility(f3);
  CHECK_FALSE(a3.ok);
  CHECK(*a3.reason == RejectReason::DimensionTooSmall);

  // non-homogeneous rejected
  std::map<int, Poly> bad4;
  bad4.emplace(2, mono({1, 1, 0}, Rational(1)) + mono({1, 0, 0}, Rational(1)));
  PhaseFamily f4(q, bad4);
  auto a4 = check_admissibility(f4);
  CHECK_FALSE(a4.ok);
  CHECK(*a4.reason == RejectReason::NotHomogeneous);
}

TEST_CASE("is_qtype_in_coordinate") {
  QuadForm q(2, {1, -1});
  // p2 = Q: Q-type in every coordinate, for every l
  Poly p2 = q.poly();
  for (int l = 1; l <= 2; ++l)
    for (int i = 1; i <= 2; ++i) CHECK(is_qtype_in_coordinate(p2, i, l, q));

  // cross term breaks it
  CHECK_FALSE(is_qtype_in_coordinate(Poly::monomial(MultiIndex{1, 1}, Rational(1)), 1, 2, q));

  // n=3 example: coordinates 1 and 2 match, coordinate 3 irrelevant
  QuadForm q3(3, {1, 1, 1});
  Poly p = mono({2, 0, 0}, Rational(1)) + mono({0, 2, 0}, Rational(1)) +
           mono({0, 0, 2}, Rational(5));
  CHECK(is_qtype_in_coordinate(p, 1, 2, q3));
  CHECK_FALSE(is_qtype_in_coordinate(p, 3, 2, q3));
}

TEST_CASE("global Q-type iff Q-type in every coordinate pair") {
  Rng rng(29);
  for (int it = 0; it < 40; ++it) {
    const int n = 2 + (it % 2);
    QuadForm q = random_quadform(rng, n);
    Poly p2 = (it % 4 == 0) ? q.poly().scaled(Rational(2)) : random_homogeneous(rng, n, 2);
    bool qtype = classify_phase(p2, 2, q).qtype;
    for (int l = 1; l <= n; ++l) {
      bool all = is_qtype_in_coordinate(p2, l, l, q);
      for (int m = 1; m <= n - 1 && all; ++m) {
        int i = m < l ? m : m + 1;
        all = all && is_qtype_in_coordinate(p2, i, l, q);
      }
      CHECK(all == qtype);
    }
  }
}

TEST_CASE("normalize_quadratic_form examples") {
  // identity
  std::vector<std::vector<Rational>> id = {{1, 0}, {0, 1}};
  auto r1 = normalize_quadratic_form(id);
  CHECK(r1.form.theta == std::vector<int>{1, 1});
  CHECK(r1.diag == std::vector<Rational>{1, 1});

  // diag(4, -9): signs (+,-), scales (2, 3)
  std::vector<std::vector<Rational>> d49 = {{4, 0}, {0, -9}};
  auto r2 = normalize_quadratic_form(d49);
  CHECK(r2.form.theta == std::vector<int>{1, -1});
  CHECK(r2.scales[0] == doctest::Approx(2.0));
  CHECK(r2.scales[1] == doctest::Approx(3.0));

  // hyperbolic plane [[0,1],[1,0]] has signature (1,1)
  std::vector<std::vector<Rational>> hyp = {{0, 1}, {1, 0}};
  auto r3 = normalize_quadratic_form(hyp);
  int plus = 0, minus = 0;
  for (int t : r3.form.theta) (t > 0 ? plus : minus)++;
  CHECK(plus == 1);
  CHECK(minus == 1);

  // singular matrix rejected
  std::vector<std::vector<Rational>> sing = {{1, 1}, {1, 1}};
  CHECK_THROWS_AS(normalize_quadratic_form(sing), std::invalid_argument);
}

TEST_CASE("congruence identity T^t Q T == diag and Sylvester invariance") {
  Rng rng(37);
  for (int it = 0; it < 20; ++it) {
    const int n = 2 + (it % 2);
    // random symmetric rational matrix
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) m[i][j] = m[j][i] = random_coeff(rng, -4, 4);
    CongruenceResult res;
    try {
      res = normalize_quadratic_form(m);
    } catch (const std::invalid_argument&) {
      continue;  // singular draw
    }
    // verify transform^T * m * transform is the reported diagonal
    auto& t = res.transform;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        Rational acc(0);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) acc += t[a][i] * m[a][b] * t[b][j];
        CHECK(acc == (i == j ? res.diag[i] : Rational(0)));
      }
    }
    // Sylvester: signature invariant under random congruence pre-transform
    std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g[i][j] = random_coeff(rng, -2, 2);
    // ensure invertible-ish by adding identity
    for (int i = 0; i < n; ++i) g[i][i] += 3;
    std::vector<std::vector<Rational>> m2(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) m2[i][j] += g[a][i] * m[a][b] * g[b][j];
    CongruenceResult res2;
    try {
      res2 = normalize_quadratic_form(m2);
    } catch (const std::invalid_argument&) {
      continue;  // g happened to be singular
    }
    auto count = [](const QuadForm& q) {
      int plus = 0;
      for (int t : q.theta) plus += t > 0;
      return plus;
    };
    CHECK(count(res.form) == count(res2.form));
  }
}

TEST_CASE("stopping value validation") {
  StoppingValue sv;
  sv.r = 10;
  sv.nu[2] = Rational(12);
  sv.validate({2, 4});
  sv.nu[4] = Rational(15);
  CHECK_THROWS_AS(sv.validate({2, 4}), std::invalid_argument);  // norm 27 > 2r
  sv.nu[4] = Rational(5);
  sv.validate({2, 4});
  StoppingValue bad;
  bad.r = 10;
  bad.nu[3] = Rational(10);
  CHECK_THROWS_AS(bad.validate({2, 4}), std::invalid_argument);
}
