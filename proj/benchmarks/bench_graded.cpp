#include "graded/division.hpp"
#include "graded/grading.hpp"
#include "graded/involution.hpp"
#include "graded/symplectic.hpp"
#include "graded/weyl.hpp"

#include <benchmark/benchmark.h>

using namespace graded;

namespace {

TorsionGroup elementary2(unsigned r) { return TorsionGroup{std::vector<unsigned>(r, 2u)}; }

void BM_division_build(benchmark::State& state) {
  TorsionGroup T{std::vector<unsigned>((size_t)state.range(0), 2u)};
  for (auto _ : state) {
    GradedDivisionAlgebra D(T);
    benchmark::DoNotOptimize(D.dim());
  }
}
BENCHMARK(BM_division_build)->Arg(1)->Arg(2)->Arg(3);

void BM_cocycle_table(benchmark::State& state) {
  TorsionGroup T = elementary2((unsigned)state.range(0));
  for (auto _ : state) {
    GradedDivisionAlgebra D(T);
    for (const TorsionElement& u : all_elements(T))
      for (const TorsionElement& v : all_elements(T)) benchmark::DoNotOptimize(D.cocycle(u, v));
  }
}
BENCHMARK(BM_cocycle_table)->Arg(1)->Arg(2);

void BM_symplectic_group(benchmark::State& state) {
  TorsionGroup T = elementary2((unsigned)state.range(0));
  for (auto _ : state) {
    SymplecticGroup G = aut_group(T);
    benchmark::DoNotOptimize(G.order);
  }
}
BENCHMARK(BM_symplectic_group)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_universal_group(benchmark::State& state) {
  GradingSpec spec;
  spec.series = Series::AII;
  spec.group = elementary2(2);
  spec.q = (unsigned)state.range(0);
  spec.s = 1;
  spec.tau.assign(spec.q, TorsionElement::identity(spec.group));
  for (auto _ : state) {
    UniversalPresentation up = universal_group(spec);
    benchmark::DoNotOptimize(up.invariants.free_rank);
  }
}
BENCHMARK(BM_universal_group)->Arg(2)->Arg(4);

void BM_enumerate_classes(benchmark::State& state) {
  for (auto _ : state) {
    auto classes = enumerate_fine_gradings(Series::D, (unsigned)state.range(0));
    benchmark::DoNotOptimize(classes.size());
  }
}
BENCHMARK(BM_enumerate_classes)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_weyl_closure(benchmark::State& state) {
  GradingSpec spec;
  spec.series = Series::B;
  spec.q = (unsigned)state.range(0);
  spec.s = 1;
  spec.tau.assign(spec.q, TorsionElement{});
  for (auto _ : state) {
    WeylClosure closure = brute_force_weyl(spec);
    benchmark::DoNotOptimize(closure.order);
  }
}
BENCHMARK(BM_weyl_closure)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
