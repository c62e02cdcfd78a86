#include <benchmark/benchmark.h>

#include "nash/builtin_games.hpp"
#include "nash/solver.hpp"
#include "nash/steklov.hpp"

using namespace nash;

namespace {

Point start(int m) { return Point::Constant(m, 2.0); }

void BM_Evaluate(benchmark::State& state) {
  const Game g = builtin("quad-m");
  const Point x = start(5);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(g, 0, x));
}
BENCHMARK(BM_Evaluate);

void BM_Phi(benchmark::State& state) {
  const Game g = builtin("abs-contract");
  const SmoothedGame sg(g, AveragingSet(SetKind::kCube, 0.5, 2), static_cast<int>(state.range(0)));
  const Point x = start(2);
  for (auto _ : state) benchmark::DoNotOptimize(sg.phi_grad_own(0, x));
}
BENCHMARK(BM_Phi)->Arg(16)->Arg(64)->Arg(256);

void BM_PhiBall(benchmark::State& state) {
  const Game g = builtin("abs-contract");
  const SmoothedGame sg(g, AveragingSet(SetKind::kBall, 0.5, 2), static_cast<int>(state.range(0)));
  const Point x = start(2);
  for (auto _ : state) benchmark::DoNotOptimize(sg.phi_grad_own(0, x));
}
BENCHMARK(BM_PhiBall)->Arg(16)->Arg(64);

void BM_PhiHessian(benchmark::State& state) {
  const Game g = builtin("abs-contract");
  const SmoothedGame sg(g, AveragingSet(SetKind::kCube, 0.5, 2), static_cast<int>(state.range(0)));
  const Point x = start(2);
  for (auto _ : state) benchmark::DoNotOptimize(sg.Phi_hessian(x));
}
BENCHMARK(BM_PhiHessian)->Arg(16)->Arg(64);

void BM_Solve(benchmark::State& state) {
  const Game g = builtin("abs-contract");
  SolverConfig cfg;
  cfg.algorithm = static_cast<Algorithm>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve(g, start(2), cfg));
  state.SetLabel(to_string(cfg.algorithm));
}
BENCHMARK(BM_Solve)
    ->Arg(static_cast<int>(Algorithm::kAlg2))
    ->Arg(static_cast<int>(Algorithm::kAlg4))
    ->Arg(static_cast<int>(Algorithm::kAlg5))
    ->Unit(benchmark::kMillisecond);

void BM_Alg1QuadM(benchmark::State& state) {
  const Game g = make_quad_m(static_cast<int>(state.range(0)));
  SolverConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(algorithm1(g, start(g.players()), cfg));
}
BENCHMARK(BM_Alg1QuadM)->Arg(5)->Arg(20);

}  // namespace
BENCHMARK_MAIN();
