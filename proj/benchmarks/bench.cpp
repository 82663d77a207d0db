#include <benchmark/benchmark.h>

#include <random>

#include "u21/induction.hpp"

using namespace u21;

namespace {

const FieldTower& tower() {
  static const FieldTower T(3, 1);
  return T;
}

const GammaPtr& gamma(KTag k) {
  static const GammaPtr g0 = make_gamma(tower(), KTag::K0), g1 = make_gamma(tower(), KTag::K1);
  return k == KTag::K0 ? g0 : g1;
}

KTag tag(const benchmark::State& state) { return state.range(0) == 0 ? KTag::K0 : KTag::K1; }

}  // namespace

static void BM_SeriesMul(benchmark::State& state) {
  const auto& T = tower();
  std::mt19937 rng(1);
  std::vector<FE> a(16), b(16);
  for (auto& x : a) x = T.kE()[rng() % T.kE().size()];
  for (auto& x : b) x = T.kE()[rng() % T.kE().size()];
  const Series sa = Series::from_coeffs(T, -2, a, 14), sb = Series::from_coeffs(T, 0, b, 16);
  for (auto _ : state) benchmark::DoNotOptimize(sa * sb);
}
BENCHMARK(BM_SeriesMul);

static void BM_CosetForm(benchmark::State& state) {
  const KTag k = tag(state);
  const auto& T = tower();
  const auto us = layer_reps(T, Side::N, 1);
  std::size_t i = 0;
  for (auto _ : state) {
    const GElem g = alpha_pow(T, 2) * us[i++ % us.size()] * beta(T);
    benchmark::DoNotOptimize(coset_form(g, k));
  }
}
BENCHMARK(BM_CosetForm)->Arg(0)->Arg(1);

static void BM_ExplicitT(benchmark::State& state) {
  const Weight st = make_steinberg(gamma(tag(state)));
  const InducedFn f1 = f_basis(st, 1);
  for (auto _ : state) benchmark::DoNotOptimize(op_T(f1));
}
BENCHMARK(BM_ExplicitT)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_Constants(benchmark::State& state) {
  const Weight one = make_trivial(gamma(tag(state)));
  for (auto _ : state) benchmark::DoNotOptimize(constants(one, 2));
}
BENCHMARK(BM_Constants)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_SpinF1(benchmark::State& state) {
  const Weight st = make_steinberg(gamma(KTag::K1));
  const InducedFn f1 = f_basis(st, 1);
  for (auto _ : state) benchmark::DoNotOptimize(spin_K(f1));
}
BENCHMARK(BM_SpinF1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
