#include <benchmark/benchmark.h>

#include <random>

#include "sfht/experiments.hpp"

namespace {

sfht::DenseSignal random_signal(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  sfht::DenseSignal x(n);
  for (double& v : x) v = normal(rng);
  return x;
}

void BM_Fht(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const sfht::DenseSignal x = random_signal(std::size_t{1} << n, 42);
  sfht::DenseSignal scratch(x.size());
  for (auto _ : state) {
    std::copy(x.begin(), x.end(), scratch.begin());
    sfht::fht_inplace(scratch);
    benchmark::DoNotOptimize(scratch.data());
  }
  state.SetComplexityN(static_cast<std::int64_t>(x.size()));
}
BENCHMARK(BM_Fht)->DenseRange(10, 20, 2)->Complexity(benchmark::oNLogN);

void BM_NaiveWht(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const sfht::DenseSignal x = random_signal(std::size_t{1} << n, 43);
  for (auto _ : state) {
    sfht::DenseSignal out = sfht::naive_wht(x);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(static_cast<std::int64_t>(x.size()));
}
BENCHMARK(BM_NaiveWht)->DenseRange(6, 12, 2)->Complexity(benchmark::oNSquared);

void BM_HashedSpectrum(benchmark::State& state) {
  const int n = 18;
  const int b = static_cast<int>(state.range(0));
  const sfht::DenseSignal x = random_signal(std::size_t{1} << n, 44);
  const sfht::HashFamily family = sfht::build_generalized_family(n, b, 3);
  for (auto _ : state) {
    std::vector<double> bins = sfht::fast_hadamard_hashing(x, family.configs[0], 0);
    benchmark::DoNotOptimize(bins.data());
  }
}
BENCHMARK(BM_HashedSpectrum)->DenseRange(6, 14, 2);

// Full pipeline at n = 18 for a grid of sparsity indices (per mille).
void BM_SparseFht(benchmark::State& state) {
  const int n = 18;
  const double alpha = static_cast<double>(state.range(0)) / 1000.0;
  const std::uint64_t k = static_cast<std::uint64_t>(std::llround(std::pow(2.0, n * alpha)));
  const int b = sfht::default_bin_bits(n, alpha);
  const int c_hashes = std::clamp(static_cast<int>(std::lround(1.0 / std::min(alpha, 1.0 - alpha))), 3, 8);
  const sfht::HashFamily family = sfht::build_generalized_family(n, b, c_hashes);
  std::mt19937_64 rng(45);
  auto [x, truth] = sfht::gen_sparse_signal(n, k, sfht::SupportModel::rs1, rng);
  for (auto _ : state) {
    sfht::DecodeReport report = sfht::sparse_fht(x, family);
    benchmark::DoNotOptimize(&report);
  }
}
BENCHMARK(BM_SparseFht)->Arg(167)->Arg(250)->Arg(333)->Arg(500)->Arg(667);

void BM_Peel(benchmark::State& state) {
  const int n = 18, b = 12, c_hashes = 3;
  const sfht::HashFamily family = sfht::build_generalized_family(n, b, c_hashes);
  std::mt19937_64 rng(46);
  auto [x, truth] = sfht::gen_sparse_signal(n, 1u << b, sfht::SupportModel::rs1, rng);
  sfht::HashState hash_state = sfht::compute_hash_state(x, family);
  const auto& [index, value] = *truth.begin();
  double sign = 1.0;
  for (auto _ : state) {
    // Alternate add/subtract so the state stays bounded.
    sfht::peel(hash_state, family, sfht::BinaryIndex(index, n), sign * value);
    sign = -sign;
    benchmark::DoNotOptimize(hash_state.u.data());
  }
}
BENCHMARK(BM_Peel);

void BM_Gf2Inverse(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(47);
  const sfht::GF2Matrix m = sfht::random_invertible(n, rng);
  for (auto _ : state) {
    auto inv = sfht::mat_inverse(m);
    benchmark::DoNotOptimize(&inv);
  }
}
BENCHMARK(BM_Gf2Inverse)->Arg(8)->Arg(18)->Arg(32)->Arg(63);

}  // namespace

BENCHMARK_MAIN();
