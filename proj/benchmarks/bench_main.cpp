#include <benchmark/benchmark.h>

#include "dva/dva.hpp"
#include "dva/fock.hpp"
#include "dva/random.hpp"

using namespace dva;

namespace {

void BM_GramDeterminantRational(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Sampler s(1);
  Rational p = s.rational(), q = s.rational_avoiding({Rational(1)}), h = s.rational();
  for (auto _ : state) {
    alg::Verma<Rational> V(alg::make_generic<Rational>(p, q, h, n + 2));
    benchmark::DoNotOptimize(determinant(alg::gram(V, n)));
  }
}
BENCHMARK(BM_GramDeterminantRational)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_GramCyclotomic(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    alg::Verma<CycloQ> V(alg::make_q_root<CycloQ>(3, CycloQ(Rational(2)), CycloQ(Rational(5, 3)), n + 2));
    benchmark::DoNotOptimize(alg::gram(V, n));
  }
}
BENCHMARK(BM_GramCyclotomic)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_KacFormulaSymbolic(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  RatFunc p = RatFunc::variable(VP), q = RatFunc::variable(VQ), h = RatFunc::variable(VH);
  for (auto _ : state) benchmark::DoNotOptimize(alg::kac_formula(n, p, q, h));
}
BENCHMARK(BM_KacFormulaSymbolic)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_FockIotaTinf(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    fock::FreeField<Rational> ff(fock::make_tinf_osc(Rational(1, 3)));
    for (const auto& lam : partitions_of(n)) {
      std::vector<int> word;
      for (int x : lam.parts) word.push_back(-x);
      benchmark::DoNotOptimize(ff.iota_word(word));
    }
  }
}
BENCHMARK(BM_FockIotaTinf)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_KostkaFoulkes(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sym::kostka(n, Rational(1, 2)));
}
BENCHMARK(BM_KostkaFoulkes)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_CharacterSeries(benchmark::State& state) {
  int L = static_cast<int>(state.range(0));
  CharParams params;
  params.N = 3;
  for (auto _ : state) benchmark::DoNotOptimize(char_series(CharKind::reduced_N, params, L));
}
BENCHMARK(BM_CharacterSeries)->Arg(10)->Arg(30)->Arg(60);

}  // namespace
BENCHMARK_MAIN();
