#include <benchmark/benchmark.h>

#include "ellipsolve/catalog.hpp"
#include "ellipsolve/matcher.hpp"
#include "ellipsolve/pde.hpp"
#include "ellipsolve/special_functions.hpp"
#include "ellipsolve/verifier.hpp"

using namespace ellipsolve;

static void BM_Jacobi(benchmark::State& state) {
  const Modulus m(0.7);
  double u = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobi(u, m));
    u += 1e-3;
  }
}
BENCHMARK(BM_Jacobi);

static void BM_CompleteK(benchmark::State& state) {
  double m = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(complete_K(Modulus(m)));
    m = m > 0.99 ? 0.1 : m + 1e-4;
  }
}
BENCHMARK(BM_CompleteK);

static void BM_Weierstrass(benchmark::State& state) {
  const WeierstrassP P({3.0, -1.0});
  double z = 0.3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(P.value(z));
    z = z > 2.5 ? 0.3 : z + 1e-3;
  }
}
BENCHMARK(BM_Weierstrass);

static void BM_Match(benchmark::State& state) {
  const ReducedODE r = reduce("kdv_mkdv", {{"alpha", 1}, {"beta", 0.5}, {"gamma", -1}, {"omega", 2}});
  for (auto _ : state) benchmark::DoNotOptimize(match_coefficients(r));
}
BENCHMARK(BM_Match);

static void BM_ApplicableFamilies(benchmark::State& state) {
  const EllipticCoefficients c{0, 0, -0.5, 0, 1.0 / 12};
  Catalog::certified();  // built once, outside the timed loop
  for (auto _ : state) benchmark::DoNotOptimize(applicable_families(c));
}
BENCHMARK(BM_ApplicableFamilies)->Unit(benchmark::kMicrosecond);

static void BM_VerifyOde(benchmark::State& state) {
  const double m = 0.6;
  Bindings b;
  b.c = {m * m / ((m * m + 1) * (m * m + 1)), 0, -1, 0, 1};
  b.m = m;
  const ResolvedFamily rf = bind_family(Catalog::certified().family("F17"), b);
  for (auto _ : state) benchmark::DoNotOptimize(verify_ode(rf));
}
BENCHMARK(BM_VerifyOde)->Unit(benchmark::kMicrosecond);

static void BM_VerifyPde(benchmark::State& state) {
  const auto s = make_solution("mbbm", "u5", {{"omega", 2}, {"eps", 1}});
  for (auto _ : state) benchmark::DoNotOptimize(verify_pde(s));
}
BENCHMARK(BM_VerifyPde)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
