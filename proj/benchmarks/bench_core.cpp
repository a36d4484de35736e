#include <benchmark/benchmark.h>

#include "carleson/checks.hpp"
#include "carleson/oscint.hpp"

using namespace carleson;

namespace {

PhaseFamily sample_family() {
  QuadForm q(2, {1, -1});
  std::map<int, Poly> phases;
  Poly p2(2);
  p2.add_term(MultiIndex{1, 1}, Rational(1));
  phases.emplace(2, p2);
  phases.emplace(4, q.poly().pow(2));
  return PhaseFamily(q, phases);
}

}  // namespace

static void BM_PolyMul(benchmark::State& state) {
  Rng rng(7);
  Poly a = random_homogeneous(rng, 3, static_cast<int>(state.range(0)));
  Poly b = random_homogeneous(rng, 3, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Poly c = a * b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_PolyMul)->Arg(3)->Arg(6)->Arg(9);

static void BM_SigmaExpansion(benchmark::State& state) {
  PhaseFamily f = sample_family();
  ChangeOfVars cov(2, 2, f.q);
  for (auto _ : state) {
    SigmaExpansion exp = expand_phase_in_sigma(f, cov);
    benchmark::DoNotOptimize(exp);
  }
}
BENCHMARK(BM_SigmaExpansion);

static void BM_Certify(benchmark::State& state) {
  PhaseFamily f = sample_family();
  ChangeOfVars cov(2, 2, f.q);
  StoppingValue nu;
  nu.r = 8;
  nu.nu[2] = 0;
  nu.nu[4] = 8;
  for (auto _ : state) {
    Certificate cert = certify(f, nu, cov);
    benchmark::DoNotOptimize(cert);
  }
}
BENCHMARK(BM_Certify);

static void BM_KernelSharp(benchmark::State& state) {
  PhaseFamily f = sample_family();
  ChangeOfVars cov(2, 2, f.q);
  KernelEvaluator eval(f, cov);
  BumpSpec bump;
  bump.c0 = default_c0(2);
  AdaptiveOptions opt;
  opt.base_panels = static_cast<int>(state.range(0));
  std::vector<double> u = {0.4, 0.9};
  std::vector<double> nu = {0.0, 100.0}, mu = {30.0, 80.0};
  for (auto _ : state) {
    KernelEval ke = eval.eval_K_sharp(u, 0.3, nu, mu, bump, opt);
    benchmark::DoNotOptimize(ke);
  }
}
BENCHMARK(BM_KernelSharp)->Arg(4)->Arg(16);

BENCHMARK_MAIN();
