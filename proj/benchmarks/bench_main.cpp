#include <benchmark/benchmark.h>

#include "friezekit/frieze.hpp"
#include "friezekit/reduction.hpp"
#include "friezekit/relations.hpp"
#include "friezekit/rng.hpp"

using namespace friezekit;

namespace {

FamilySpec family_of(int code) {
  switch (code) {
    case 0: return FamilySpec::d(5);
    case 1: return FamilySpec::e6();
    case 2: return FamilySpec::e7();
    default: return FamilySpec::e8();
  }
}

void BM_FriezeSpecialized(benchmark::State& st) {
  const Quiver q = build_affine_quiver(family_of(static_cast<int>(st.range(0))));
  const auto x = Rng(1).rationals(static_cast<std::size_t>(q.size()));
  for (auto _ : st) benchmark::DoNotOptimize(frieze_specialized(q, x, static_cast<int>(st.range(1))));
}
BENCHMARK(BM_FriezeSpecialized)->Args({0, 64})->Args({3, 64})->Args({3, 130})->Unit(benchmark::kMillisecond);

void BM_FriezeSymbolic(benchmark::State& st) {
  const Quiver q = build_affine_quiver(family_of(static_cast<int>(st.range(0))));
  for (auto _ : st) benchmark::DoNotOptimize(frieze_symbolic(q, static_cast<int>(st.range(1))));
}
BENCHMARK(BM_FriezeSymbolic)->Args({0, 6})->Args({1, 5})->Unit(benchmark::kMillisecond);

void BM_LaurentMulDiv(benchmark::State& st) {
  const auto t = frieze_symbolic(build_affine_quiver(FamilySpec::d(5)), 5);
  const LaurentPoly& a = t.at(0, 5);
  const LaurentPoly& b = t.at(3, 4);
  for (auto _ : st) {
    LaurentPoly p = a * b;
    benchmark::DoNotOptimize(laurent_exact_div(p, b));
  }
  st.counters["term_pairs"] = static_cast<double>(a.size() * b.size());
}
BENCHMARK(BM_LaurentMulDiv)->Unit(benchmark::kMillisecond);

void BM_RunClaims(benchmark::State& st) {
  const Registry r = build_registry(family_of(static_cast<int>(st.range(0))));
  RunOptions o;
  o.trials = 4;
  o.threads = 1;
  for (auto _ : st) benchmark::DoNotOptimize(run_claims(r, r.claims, o));
}
BENCHMARK(BM_RunClaims)->Arg(0)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_ReducedStep(benchmark::State& st) {
  const ReducedSystem rs = build_reduction(build_affine_quiver(FamilySpec::e8()));
  const auto y = reduced_point(rs, 3);
  if (st.range(0) == 0)
    for (auto _ : st) benchmark::DoNotOptimize(reduced_step(rs, y));
  else
    for (auto _ : st) benchmark::DoNotOptimize(reduced_step_generic(rs, y));
}
BENCHMARK(BM_ReducedStep)->Arg(0)->Arg(1);

void BM_IntegrabilityBattery(benchmark::State& st) {
  const ReducedSystem rs = build_reduction(build_affine_quiver(FamilySpec::e8()));
  BatteryOptions o;
  o.trials = 2;
  o.threads = 1;
  for (auto _ : st) benchmark::DoNotOptimize(integrability_battery(rs, o));
}
BENCHMARK(BM_IntegrabilityBattery)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
