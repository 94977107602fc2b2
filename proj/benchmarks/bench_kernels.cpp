#include <benchmark/benchmark.h>

#include "ospchain/bethe.hpp"
#include "ospchain/rmatrix.hpp"
#include "ospchain/sampling.hpp"
#include "ospchain/spectrum.hpp"
#include "ospchain/transfer.hpp"

using namespace ospchain;
using G = GaussianRational;

static void BM_GaussianMultiply(benchmark::State& state) {
  RationalSampler rs(1);
  G a = rs.rational() + G::i() * rs.rational(), b = rs.rational() + G::i() * rs.rational();
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_GaussianMultiply);

static void BM_BuildR(benchmark::State& state) {
  ModelParams p(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(build_R<G>(p, G(7, 3)));
}
BENCHMARK(BM_BuildR)->Args({1, 1})->Args({3, 1})->Args({2, 2});

static void BM_YbeExact(benchmark::State& state) {
  ModelParams p(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  std::vector<std::pair<G, G>> s{{G(7, 3), G(2, 5)}};
  for (auto _ : state) benchmark::DoNotOptimize(check_ybe<G>(p, s));
}
BENCHMARK(BM_YbeExact)->Args({1, 1})->Args({3, 1})->Args({2, 2})->Unit(benchmark::kMillisecond);

static void BM_OpenTransferExact(benchmark::State& state) {
  ModelParams p(3, 1);
  BoundarySpec k{3, 1, family::D3{1, 0}};
  auto cfg = ChainConfig::open_chain(p, static_cast<int>(state.range(0)), k, k);
  for (auto _ : state) benchmark::DoNotOptimize(open_transfer<G>(cfg, G(5, 7)));
}
BENCHMARK(BM_OpenTransferExact)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_OpenTransferFloatEigen(benchmark::State& state) {
  EigenvalueModel model(1, 1);
  auto cfg = pseudovacuum_chain(model, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(open_transfer<Complex>(cfg, Complex(0.3, 0.1))));
}
BENCHMARK(BM_OpenTransferFloatEigen)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_BetheSolve(benchmark::State& state) {
  EigenvalueModel model(5, 2);
  SolverOptions opt;
  opt.starts = 16;
  for (auto _ : state) benchmark::DoNotOptimize(solve_bethe(model, 2, {1, 1, 0, 0}, opt));
}
BENCHMARK(BM_BetheSolve)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
