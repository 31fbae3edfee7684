#include <benchmark/benchmark.h>

#include <random>

#include "chiral/convolution.hpp"
#include "chiral/fourier.hpp"
#include "chiral/iso_maps.hpp"
#include "chiral/line_basis.hpp"
#include "chiral/parse.hpp"
#include "chiral/residue.hpp"

using namespace chiral;

static void BM_Residue(benchmark::State& state) {
  const DiagRat f = parse_diag_rat("z1*z3*(z1-z2)^-3*(z1-z3)^-2*(z2-z3)^-1", 3);
  for (auto _ : state) benchmark::DoNotOptimize(residue(f, 1, 2));
}
BENCHMARK(BM_Residue);

static void BM_FourierFullLine(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  std::vector<std::uint32_t> path(n);
  for (std::uint32_t k = 0; k < n; ++k) path[k] = k + 1;
  const LineForest line(n, {path});
  // a double pole on every edge of the line
  DiagRat f = DiagRat::constant(DiagRat::zvars(n), 1);
  for (std::uint32_t k = 1; k < n; ++k) f = f * DiagRat::diagonal_power(DiagRat::zvars(n), zvar(k), zvar(k + 1), -2);
  for (auto _ : state) benchmark::DoNotOptimize(fourier(f, line));
}
BENCHMARK(BM_FourierFullLine)->DenseRange(2, 5);

static void BM_Convolve(benchmark::State& state) {
  const DiagRat F = elaborate(parse_expr("(w1-w2)^-2*(w2-w3)^-1"), DiagRat::wvars(3));
  const MPoly Q = parse_poly("L1^3*L2^2*L3 + L2^4 + L1*L3^3");
  for (auto _ : state) benchmark::DoNotOptimize(convolve(F, Q));
}
BENCHMARK(BM_Convolve);

static void BM_Decompose(benchmark::State& state) {
  const DiGraph g = parse_graph("n=5; edges=2->1,1->3,4->3,3->5");
  for (auto _ : state) benchmark::DoNotOptimize(decompose_to_lines(g));
}
BENCHMARK(BM_Decompose);

static void BM_InverseMap(benchmark::State& state) {
  const auto module = std::make_shared<const FreeDModule>(parse_module("a:0\nb:1\n"));
  const auto n = static_cast<std::uint32_t>(state.range(0));
  std::mt19937_64 rng(1);
  const ClassicalOp Y = random_classical(module, n, 1, rng);
  const auto keys = spanning_keys(*module, n, 0);
  const auto functions = spanning_functions(n);
  for (auto _ : state) {
    // fresh operator each round; Fourier transforms stay in the shared cache
    const ChiralOp X = inverse_map(Y);
    for (const DiagRat& f : functions) benchmark::DoNotOptimize(X(keys.front(), f));
  }
}
BENCHMARK(BM_InverseMap)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
