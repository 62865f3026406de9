#include <benchmark/benchmark.h>

#include "ell/barriers.hpp"
#include "ell/branch.hpp"
#include "ell/minimax.hpp"
#include "ell/problems.hpp"

using namespace ell;

static void BM_TridiagSolve(benchmark::State& state) {
  Grid g = Grid::interval(static_cast<int>(state.range(0)));
  ShiftedLaplacian A(g, Field(g, 1.0));
  Field rhs(g, 1.0);
  for (auto _ : state) {
    Field u = solve(A, rhs);
    benchmark::DoNotOptimize(u);
  }
}
BENCHMARK(BM_TridiagSolve)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_SmallestEigenpair(benchmark::State& state) {
  Grid g = Grid::interval(static_cast<int>(state.range(0)));
  ShiftedLaplacian A = ShiftedLaplacian::laplacian(g);
  for (auto _ : state) {
    EigenPair p = smallest_eigenpair(A);
    benchmark::DoNotOptimize(p.value);
  }
}
BENCHMARK(BM_SmallestEigenpair)->Arg(100)->Arg(1000);

static void BM_Cg2D(benchmark::State& state) {
  Grid g = Grid::unit_square(static_cast<int>(state.range(0)));
  ShiftedLaplacian A = ShiftedLaplacian::laplacian(g);
  Field rhs(g, 1.0);
  for (auto _ : state) {
    Field u = solve(A, rhs);
    benchmark::DoNotOptimize(u);
  }
}
BENCHMARK(BM_Cg2D)->Arg(16)->Arg(48);

static void BM_MonotoneGelfand(benchmark::State& state) {
  Grid g = Grid::interval(static_cast<int>(state.range(0)));
  ProblemSpec p = make_problem(g, catalog("gelfand"));
  BarrierPair pair = default_barriers(p, 1.0);
  for (auto _ : state) {
    MonotoneResult r = monotone_iterate(p, 1.0, pair, Direction::FromSuper);
    benchmark::DoNotOptimize(r.solution);
  }
}
BENCHMARK(BM_MonotoneGelfand)->Arg(200)->Arg(1000);

static void BM_GelfandBranch(benchmark::State& state) {
  Grid g = Grid::interval(static_cast<int>(state.range(0)));
  ProblemSpec p = make_problem(g, catalog("gelfand"));
  for (auto _ : state) {
    Diagram dia = trace_minimal_branch(p);
    benchmark::DoNotOptimize(dia.points.size());
  }
}
BENCHMARK(BM_GelfandBranch)->Arg(100)->Arg(200);

static void BM_MountainPassPower(benchmark::State& state) {
  Grid g = Grid::interval(static_cast<int>(state.range(0)));
  ProblemSpec p = make_problem(g, catalog("power", {{"p", 3.0}}));
  EigenPair e1 = smallest_eigenpair(ShiftedLaplacian::laplacian(g));
  double t = 1.0;
  while (energy(p, 1.0, t * e1.vector) >= 0.0) t *= 2.0;
  Field endpoint = t * e1.vector;
  for (auto _ : state) {
    MinimaxResult mp = mountain_pass(p, 1.0, endpoint, {.tol = 1e-6});
    benchmark::DoNotOptimize(mp.c);
  }
}
BENCHMARK(BM_MountainPassPower)->Arg(100)->Arg(200);

BENCHMARK_MAIN();
