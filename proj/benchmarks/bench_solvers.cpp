#include <benchmark/benchmark.h>

#include <algorithm>

#include "sbal/compat.hpp"
#include "sbal/hashing.hpp"
#include "sbal/mitm.hpp"
#include "sbal/rep_with0.hpp"

using namespace sbal;

namespace {

Instance random_instance(int n, const CoefficientSet& set, std::uint64_t seed) {
  Rng rng(seed);
  return gen_instance(n, set, UniformRange{std::int64_t{1} << 40}, rng).instance;
}

void BM_ClassicMitm(benchmark::State& st) {
  const auto inst = random_instance(static_cast<int>(st.range(0)), CoefficientSet::full_range(1), 1);
  for (auto _ : st) benchmark::DoNotOptimize(classic_mitm(inst));
}
BENCHMARK(BM_ClassicMitm)->DenseRange(12, 24, 4)->Unit(benchmark::kMillisecond);

void BM_ResidueDP(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto inst = random_instance(n, CoefficientSet::full_range(2), 2);
  Rng rng(3);
  const std::uint64_t p = sample_prime(1 << 12, rng);
  for (auto _ : st) {
    ResidueDP dp(inst.x(), std::vector<Alphabet>(n, {0, 1, 2}), p);
    benchmark::DoNotOptimize(enumerate_residue_class(dp, 0, 1 << 20).vectors.size());
  }
}
BENCHMARK(BM_ResidueDP)->DenseRange(10, 20, 5)->Unit(benchmark::kMillisecond);

void BM_With0Round(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const auto set = CoefficientSet::full_range(2);
  const SolutionProfile pi(set, std::vector<int>(5, n / 5));
  Rng rng(4);
  const auto g = gen_instance(n, set, Planted{pi, std::int64_t{1} << 40}, rng);
  for (auto _ : st) benchmark::DoNotOptimize(balanced_with0_round(g.instance, pi, rng));
}
BENCHMARK(BM_With0Round)->DenseRange(10, 20, 5)->Unit(benchmark::kMillisecond);

void BM_Compatibility(benchmark::State& st) {
  const int d = 12;
  const auto size = static_cast<std::size_t>(st.range(0));
  Rng rng(5);
  auto vec = [&] {
    CoeffVector v(d, 0);
    for (int i = 0; i < d / 2; ++i) v[i] = 1;
    v[d / 2] = 2;
    std::shuffle(v.begin(), v.end(), rng);
    return v;
  };
  std::vector<CoeffVector> A(size), B(size);
  std::generate(A.begin(), A.end(), vec);
  std::generate(B.begin(), B.end(), vec);
  for (auto _ : st) benchmark::DoNotOptimize(compatibility_test(A, B, 1.0 / 12, rng, 1));
}
BENCHMARK(BM_Compatibility)->RangeMultiplier(4)->Range(16, 1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
