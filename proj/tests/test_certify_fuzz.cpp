#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carleson/certificate_io.hpp"
#include "carleson/checks.hpp"

using namespace carleson;

// Randomized end-to-end battery: every admissible draw must certify and
// survive the full independent re-check; internal invariant errors are bugs.

TEST_CASE("random admissible families certify and re-check") {
  Rng rng(424242);
  std::uniform_int_distribution<int> dim(2, 3), dmax(2, 6), small(-3, 3);
  int certified = 0;
  for (int it = 0; it < 60; ++it) {
    PhaseFamily f = random_admissible_family(rng, dim(rng), dmax(rng));
    std::vector<int> lambda = f.lambda();
    StoppingValue sv;
    sv.r = 8;
    std::uniform_int_distribution<int> pick(0, static_cast<int>(lambda.size()) - 1);
    const int hot = pick(rng);
    Rational norm(0);
    for (size_t k = 0; k < lambda.size(); ++k) {
      Rational v = static_cast<int>(k) == hot ? Rational(rng() % 2 ? 8 : -8)
                                              : Rational(small(rng));
      sv.nu[lambda[k]] = v;
      norm += abs(v);
    }
    if (norm > 16) {
      for (size_t k = 0; k < lambda.size(); ++k)
        sv.nu[lambda[k]] = static_cast<int>(k) == hot ? Rational(8) : Rational(0);
    }
    std::uniform_int_distribution<int> lpick(1, f.n);
    ChangeOfVars cov(f.n, lpick(rng), f.q);
    Certificate cert = certify(f, sv, cov);
    RecheckReport rep = recheck_certificate(cert, f);
    if (!rep.ok()) {
      CAPTURE(f.canonical_text());
      CAPTURE(rep.to_text());
      REQUIRE(rep.ok());
    }
    ++certified;
  }
  CHECK(certified == 60);
}

TEST_CASE("targeted B2 battery covers the pivot subcases") {
  Rng rng(77);
  std::map<int, int> subcases;
  int ran = 0;
  for (int it = 0; it < 80; ++it) {
    const int n = 2 + (it % 2);
    QuadForm q = random_quadform(rng, n);
    Poly p2 = random_homogeneous(rng, n, 2, -2, 2);
    if (classify_phase(p2, 2, q).qtype) continue;
    const int m0 = (rng() % 2) ? 4 : 6;
    std::map<int, Poly> ph;
    ph.emplace(2, p2);
    ph.emplace(m0, q.poly().pow(m0 / 2));
    PhaseFamily f(q, ph);
    StoppingValue sv;
    sv.r = 8;
    sv.nu[2] = Rational(0);
    sv.nu[m0] = Rational(8);
    std::uniform_int_distribution<int> lpick(1, n);
    ChangeOfVars cov(n, lpick(rng), q);
    Certificate cert = certify(f, sv, cov);
    REQUIRE(cert.label == CaseLabel::B2);
    RecheckReport rep = recheck_certificate(cert, f);
    if (!rep.ok()) {
      CAPTURE(f.canonical_text());
      CAPTURE(rep.to_text());
      REQUIRE(rep.ok());
    }
    REQUIRE(cert.subcase.has_value());
    ++subcases[static_cast<int>(*cert.subcase)];
    ++ran;
  }
  CHECK(ran >= 60);
  // the Q-power-dominant draw set reliably reaches both same-sign and
  // mixed-sign pivot paths
  CHECK(subcases[static_cast<int>(B2Subcase::S2)] > 0);
  CHECK(subcases[static_cast<int>(B2Subcase::S4)] > 0);
}
