#include <benchmark/benchmark.h>

#include <random>

#include "lladic/sharpness.hpp"

using namespace lladic;

namespace {

Mat random_mat(RingRef r, int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> dig(-40, 40);
  Mat a(r, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<mpz_class> c(static_cast<std::size_t>(r->dim()));
      for (auto& x : c) x = dig(rng);
      a(i, j) = Elem(r, c, r->cap());
    }
  return a;
}

void BM_MatMul(benchmark::State& st) {
  RingRef r = Ring::from_spec("Z7/cyc");
  const int n = static_cast<int>(st.range(0));
  Mat a = random_mat(r, n, 1), b = random_mat(r, n, 2);
  for (auto _ : st) benchmark::DoNotOptimize(st.range(1) ? a * b : mul_serial(a, b));
}
BENCHMARK(BM_MatMul)->ArgsProduct({{16, 32}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Snf(benchmark::State& st) {
  RingRef r = Ring::from_spec("Z5/cyc");
  Mat a = random_mat(r, static_cast<int>(st.range(0)), 3);
  for (auto _ : st) benchmark::DoNotOptimize(snf(a, st.range(1) != 0));
}
BENCHMARK(BM_Snf)->ArgsProduct({{16, 32}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_StableLattice(benchmark::State& st) {
  static CounterexampleSetting s = build_counterexample(SettingKind::Thm62, 5, 2);
  Lattice s0 = Lattice::from_generators(random_mat(s.K, 8, 4));
  for (auto _ : st) benchmark::DoNotOptimize(stable_lattice(s.v.rep, s0, st.range(0) != 0));
}
BENCHMARK(BM_StableLattice)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ReduceEmbedding(benchmark::State& st) {
  static CounterexampleSetting s = build_counterexample(SettingKind::Thm62, 5, 2);
  static StabilizedPair sp = stabilize_lattice(s.s, normalize_form(*s.v.form, s.s), &s.v.rep);
  for (auto _ : st) benchmark::DoNotOptimize(reduce_embedding(sp, s.v.rep, st.range(0) != 0));
}
BENCHMARK(BM_ReduceEmbedding)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& st) {
  static CounterexampleSetting s = build_counterexample(SettingKind::Thm62, 7, 2);
  for (auto _ : st) benchmark::DoNotOptimize(no_perfect_pairing_oracle(s, 1, st.range(0) != 0));
}
BENCHMARK(BM_Oracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
