#include <benchmark/benchmark.h>

#include <random>

#include "amx/amitsur.hpp"
#include "amx/dp2.hpp"
#include "amx/io.hpp"

using namespace amx;

namespace {

IntMatrix random_matrix(int rows, int cols, std::mt19937& rng) {
  std::uniform_int_distribution<int> entry(-9, 9);
  IntMatrix A(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) A.at(i, j) = entry(rng);
  return A;
}

void BM_SmithNormalForm(benchmark::State& state) {
  std::mt19937 rng(12345);
  const int n = static_cast<int>(state.range(0));
  IntMatrix A = random_matrix(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(A));
}
// dense random matrices past ~12x12 hit intermediate-coefficient blowup; the
// matrices arising from group cohomology are structured and stay small
BENCHMARK(BM_SmithNormalForm)->Arg(8)->Arg(10)->Arg(12);

void BM_AutoResolutionKlein(benchmark::State& state) {
  auto K = std::make_shared<const FinGroup>(FinGroup::klein());
  const int depth = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(auto_resolution(K, depth));
}
BENCHMARK(BM_AutoResolutionKlein)->Arg(6)->Arg(9);

void BM_CohomologyM16(benchmark::State& state) {
  auto P = std::make_shared<const FreeResolution>(bundled_m16_resolution());
  GModule Z = GModule::trivial_lattice(P->G, 1);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(CohGroup(Z, P, n).group().invariant_factors());
}
BENCHMARK(BM_CohomologyM16)->Arg(2)->Arg(4);

void BM_AmitsurKleinP1(benchmark::State& state) {
  EquivariantPresentation p = klein_p1();
  GTorus S = split_torus(p.G);
  auto P = std::make_shared<const FreeResolution>(auto_resolution(p.G, 11));
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(amitsur_group(p, S, n, P));
}
BENCHMARK(BM_AmitsurKleinP1)->Arg(4)->Arg(8);

void BM_DP2Verify(benchmark::State& state) {
  DP2Dataset ds = bundled_dp2_dataset();
  auto P = std::make_shared<const FreeResolution>(bundled_m16_resolution());
  for (auto _ : state) benchmark::DoNotOptimize(dp2_verify(ds, P));
}
BENCHMARK(BM_DP2Verify);

}  // namespace

BENCHMARK_MAIN();
