#include <benchmark/benchmark.h>

#include "qhat/lattice.hpp"
#include "qhat/limit.hpp"
#include "qhat/qnumbers.hpp"
#include "qhat/specialize.hpp"

using namespace qhat;

static void BM_QBinomial(benchmark::State& state) {
  const int a = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(qbinom(a, a / 2, 1));
}
BENCHMARK(BM_QBinomial)->Arg(8)->Arg(16)->Arg(32);

static void BM_RatFuncReduce(benchmark::State& state) {
  const RatFunc x(qfact(6, 1), qfact(3, 1));
  const RatFunc y(qint(5, 1), qint(3, 1));
  for (auto _ : state) benchmark::DoNotOptimize(x / y + y * x);
}
BENCHMARK(BM_RatFuncReduce);

static void BM_WeylModuleBuild(benchmark::State& state) {
  auto a2 = RootDatum::preset("A2");
  const Weight lam{static_cast<int>(state.range(0)), static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(WeylModule::build(a2, lam));
}
BENCHMARK(BM_WeylModuleBuild)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_SchurDimension(benchmark::State& state) {
  auto a1 = RootDatum::preset("A1");
  auto pi = saturate(a1, {{static_cast<int>(state.range(0))}, {static_cast<int>(state.range(0)) - 1}});
  ModuleCache modules(a1);
  for (auto _ : state) benchmark::DoNotOptimize(SchurAlgebra::build(pi, modules)->dimension());
}
BENCHMARK(BM_SchurDimension)->Arg(2)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_SchurDimensionA2(benchmark::State& state) {
  auto a2 = RootDatum::preset("A2");
  auto pi = saturate(a2, {{1, 1}});
  ModuleCache modules(a2);
  for (auto _ : state) benchmark::DoNotOptimize(SchurAlgebra::build(pi, modules)->dimension());
}
BENCHMARK(BM_SchurDimensionA2)->Unit(benchmark::kMillisecond);

static void BM_VerifyPresentation(benchmark::State& state) {
  auto b2 = RootDatum::preset("B2");
  auto pi = saturate(b2, {{1, 0}, {0, 2}});
  ModuleCache modules(b2);
  for (auto _ : state) benchmark::DoNotOptimize(SchurAlgebra::build(pi, modules)->verify_presentation().pass());
}
BENCHMARK(BM_VerifyPresentation)->Unit(benchmark::kMillisecond);

static void BM_LimitSuites(benchmark::State& state) {
  auto a2 = RootDatum::preset("A2");
  auto s = SchurAlgebra::build(saturate(a2, {{1, 1}, {3, 0}}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_prop_Kh(*s).pass());
    benchmark::DoNotOptimize(check_uhat_relations(*s).pass());
    benchmark::DoNotOptimize(check_u_relations(*s).pass());
  }
}
BENCHMARK(BM_LimitSuites)->Unit(benchmark::kMillisecond);

static void BM_LatticeBuild(benchmark::State& state) {
  auto b2 = RootDatum::preset("B2");
  auto m = WeylModule::build(b2, {1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(LatticeBasis::build(m));
}
BENCHMARK(BM_LatticeBuild)->Unit(benchmark::kMillisecond);

static void BM_SpecializedDimension(benchmark::State& state) {
  auto a1 = RootDatum::preset("A1");
  auto pi = saturate(a1, {{3}, {4}});
  const auto p = RingPoint::cyclotomic(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(SpecializedSchur::build(pi, p)->dimension());
}
BENCHMARK(BM_SpecializedDimension)->Arg(1)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_SeparationProbe(benchmark::State& state) {
  auto a2 = RootDatum::preset("A2");
  const Expr u = parse_expr("F1^(2) 1(-2,0)", *a2);
  for (auto _ : state) {
    Tower t(a2);
    benchmark::DoNotOptimize(separation_probe(u, 16, t));
  }
}
BENCHMARK(BM_SeparationProbe)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
