// End-to-end acceptance suite. Each check below pins the advertised contract
// of the library at its stated tolerance and prints one pass/fail line; the
// process exits non-zero if any check fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfht/analysis.hpp"
#include "sfht/decoder.hpp"
#include "sfht/experiments.hpp"

using namespace sfht;

namespace {

void expect(bool ok, const std::string& what) {
  if (!ok) throw std::runtime_error(what);
}

DenseSignal random_signal(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  DenseSignal x(n);
  for (double& v : x) v = normal(rng);
  return x;
}

DenseSignal signal_of(const SparseSpectrum& spectrum, int n) {
  DenseSignal dense(std::size_t{1} << n, 0.0);
  for (const auto& [j, v] : spectrum) dense[j] = v;
  fht_inplace(dense);
  return dense;
}

double max_abs(const DenseSignal& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

// --- 1: fast transform against the quadratic oracle -----------------------

void check_transform_correctness() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  for (std::size_t n = 2; n <= 1024; n *= 2) {
    for (int trial = 0; trial < 50; ++trial) {
      const DenseSignal x = random_signal(n, rng);
      const DenseSignal fast = fht(x);
      const DenseSignal slow = naive_wht(x);
      for (std::size_t i = 0; i < n; ++i)
        expect(std::abs(fast[i] - slow[i]) <= 1e-10, "fast transform disagrees with the quadratic oracle");
    }
  }
  const DenseSignal big = random_signal(std::size_t{1} << 14, rng);
  const DenseSignal twice = fht(fht(big));
  const double bound = 1e-10 * max_abs(big);
  for (std::size_t i = 0; i < big.size(); ++i)
    expect(std::abs(twice[i] - big[i]) <= bound, "double application must return the input");
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  expect(elapsed < 10.0, "transform correctness sweep exceeded 10 s");
}

// --- 2: shift, permutation and aliasing identities -------------------------

void check_transform_properties() {
  const int n = 10;
  const std::size_t size = std::size_t{1} << n;
  std::mt19937_64 rng(1002);

  for (int trial = 0; trial < 100; ++trial) {  // shift/modulation
    const DenseSignal x = random_signal(size, rng);
    const DenseSignal spectrum = fht(x);
    const BinaryIndex p(rng() & (size - 1), n);
    const DenseSignal shifted = fht(apply_shift(x, p));
    for (std::size_t k = 0; k < size; ++k) {
      const double sign = (std::popcount(p.word & k) & 1u) ? -1.0 : 1.0;
      expect(std::abs(shifted[k] - sign * spectrum[k]) <= 1e-10, "shift identity failed");
    }
  }

  for (int trial = 0; trial < 100; ++trial) {  // permutation
    const DenseSignal x = random_signal(size, rng);
    const DenseSignal spectrum = fht(x);
    const GF2Matrix perm = random_invertible(n, rng);
    const GF2Matrix inv_t = transpose(*mat_inverse(perm));
    const DenseSignal permuted = fht(apply_permutation(x, perm));
    for (std::size_t k = 0; k < size; ++k) {
      const std::uint64_t kk = mat_vec_mul(inv_t, BinaryIndex(k, n)).word;
      expect(std::abs(permuted[k] - spectrum[kk]) <= 1e-10, "permutation identity failed");
    }
  }

  for (int trial = 0; trial < 100; ++trial) {  // aliasing with sign patterns
    const DenseSignal x = random_signal(size, rng);
    const DenseSignal spectrum = naive_wht(x);
    const int b = 1 + static_cast<int>(rng() % (n - 1));
    const BinaryIndex p(rng() & ((1ull << (n - b)) - 1), n);
    const DenseSignal folded = fht(subsample(x, b, p));
    const double scale = std::sqrt(std::pow(2.0, b - n));
    for (std::uint64_t k = 0; k < folded.size(); ++k) {
      double acc = 0.0;
      for (std::uint64_t j = 0; j < (1ull << (n - b)); ++j) {
        const double sign = (std::popcount(p.word & j) & 1u) ? -1.0 : 1.0;
        acc += sign * spectrum[(k << (n - b)) | j];
      }
      expect(std::abs(folded[k] - scale * acc) <= 1e-10, "aliasing identity failed");
    }
  }
}

// --- 3: hashed spectra against brute-force bin sums ------------------------

void check_hashing_law() {
  const int n = 10;
  const std::size_t size = std::size_t{1} << n;
  std::mt19937_64 rng(1003);
  for (int trial = 0; trial < 200; ++trial) {
    const DenseSignal x = random_signal(size, rng);
    const DenseSignal spectrum = naive_wht(x);
    const int b = 2 + static_cast<int>(rng() % 5);
    const HashConfig cfg = (trial % 2 == 0)
                               ? HashConfig::make(random_invertible(n, rng), b)
                               : HashConfig::make(circular_shift_matrix(n, static_cast<int>(rng() % n)), b);
    const std::uint64_t p = rng() & (size - 1);

    std::set<std::uint64_t> touched;
    const SampleReader reader = [&](std::uint64_t i) {
      touched.insert(i);
      return x[i];
    };
    const std::vector<double> bins = fast_hadamard_hashing(reader, n, cfg, p);
    expect(touched.size() == cfg.n_bins(), "hashing must touch exactly B distinct samples");

    std::vector<double> brute(cfg.n_bins(), 0.0);
    for (std::uint64_t j = 0; j < size; ++j) {
      const double sign = (std::popcount(p & j) & 1u) ? -1.0 : 1.0;
      brute[cfg.bin_of(j)] += sign * spectrum[j];
    }
    const double bound = 1e-9 * max_abs(spectrum);
    for (std::uint64_t k = 0; k < bins.size(); ++k)
      expect(std::abs(bins[k] - brute[k]) <= bound, "hashed spectrum disagrees with the aliasing sums");
  }

  // Whole-state sample count: C hashes, n-b+1 slices, B reads each.
  const int b = 4, c_hashes = 3;
  const HashFamily family = build_generalized_family(n, b, c_hashes);
  const DenseSignal x = random_signal(size, rng);
  std::size_t reads = 0;
  compute_hash_state([&](std::uint64_t i) { ++reads; return x[i]; }, family);
  expect(reads == static_cast<std::size_t>(c_hashes) * (n - b + 1) * (1u << b),
         "state construction must read C * (n - b + 1) * B samples");
}

// --- 4: singleton estimation recovers index and value ----------------------

void check_support_estimation() {
  std::mt19937_64 rng(1004);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::size_t singleton_bins = 0;
  for (int n : {6, 9, 12}) {
    const std::vector<HashFamily> families = {
        build_disjoint_family(n, 3),
        build_projection_family(n, 3),
        build_generalized_family(n, n / 2, 3),
    };
    for (const HashFamily& family : families) {
      for (int trial = 0; trial < 40; ++trial) {
        const std::uint64_t j = rng() & ((1ull << n) - 1);
        const double v = normal(rng);
        SparseSpectrum truth;
        truth[j] = v;
        const HashState state = compute_hash_state(signal_of(truth, n), family);
        for (int c = 0; c < family.n_hashes; ++c) {
          const BinClassification cls = classify_bin(state, family, c, family.configs[c].bin_of(j));
          expect(cls.kind == BinKind::singleton, "occupied bin must classify as a singleton");
          expect(cls.index == BinaryIndex(j, n), "singleton index must be exact");
          expect(std::abs(cls.value - v) <= 1e-12 * std::abs(v), "singleton value must be exact");
          ++singleton_bins;
        }
      }
    }
  }
  expect(singleton_bins >= 1000, "need at least 1000 singleton classifications");
}

// --- 5: exhaustive pair collisions never classify as singletons ------------

void check_collision_detection() {
  const int n = 6;
  std::mt19937_64 rng(1005);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::vector<HashFamily> families = {
      build_disjoint_family(n, 3),
      build_projection_family(n, 3),
      build_generalized_family(n, 3, 3),
  };
  std::size_t collisions = 0;
  for (const HashFamily& family : families) {
    for (std::uint64_t a = 0; a < 64; ++a) {
      for (std::uint64_t b = a + 1; b < 64; ++b) {
        SparseSpectrum truth;
        truth[a] = normal(rng);
        truth[b] = normal(rng);
        const HashState state = compute_hash_state(signal_of(truth, n), family);
        for (int c = 0; c < family.n_hashes; ++c) {
          const std::uint64_t bin = family.configs[c].bin_of(a);
          if (bin != family.configs[c].bin_of(b)) continue;
          ++collisions;
          expect(classify_bin(state, family, c, bin).kind != BinKind::singleton,
                 "a two-way collision must never classify as a singleton");
        }
      }
    }
  }
  expect(collisions > 1000, "collision sweep must actually hit collisions");
}

// --- 6: very sparse end-to-end success rate --------------------------------

void check_very_sparse_success() {
  const auto start = std::chrono::steady_clock::now();
  ExperimentGrid grid;
  grid.n = 18;
  grid.alphas = {1.0 / 3.0};
  grid.c_values = {4};
  grid.trials = 200;
  grid.construction = "circular";
  grid.seed = 2218;
  const std::vector<SuccessRow> rows = run_success_experiment(grid);
  std::printf("    [alpha=1/3, C=4] success %d/%d\n", rows[0].successes, rows[0].trials);
  expect(rows[0].rate >= 0.95, "very sparse success rate must reach 0.95");
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  expect(elapsed < 120.0, "very sparse experiment exceeded 2 min");
}

// --- 7: less sparse end-to-end success rate --------------------------------

void check_less_sparse_success() {
  const auto start = std::chrono::steady_clock::now();
  ExperimentGrid grid;
  grid.n = 18;
  grid.alphas = {2.0 / 3.0};  // K = 2^12 = B at b = 12
  grid.c_values = {3};
  grid.trials = 100;
  grid.construction = "projection";
  grid.seed = 2219;
  const std::vector<SuccessRow> rows = run_success_experiment(grid);
  std::printf("    [b=12, C=3, K=4096] success %d/%d\n", rows[0].successes, rows[0].trials);
  expect(rows[0].rate >= 0.90, "less sparse success rate must reach 0.90");
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  expect(elapsed < 300.0, "less sparse experiment exceeded 5 min");
}

// --- 8: bin-load sweep ------------------------------------------------------

void check_beta_sweep() {
  const int n = 18, b = 12, c_hashes = 4, trials = 100;
  // alpha placing K/B just under 0.33 and just over 3.5.
  const double alphas[] = {(b + std::log2(0.328)) / n, (b + std::log2(3.51)) / n};
  const std::vector<BetaRow> rows = run_beta_sweep(n, b, c_hashes, alphas, trials, 2220);
  std::printf("    [beta=%.4f] success %d/%d, [beta=%.4f] success %d/%d\n", rows[0].beta, rows[0].successes,
              trials, rows[1].beta, rows[1].successes, trials);
  expect(rows[0].beta <= 0.33, "low point must sit at beta <= 0.33");
  expect(rows[0].rate >= 0.99, "success must be near-certain at beta <= 0.33");
  expect(rows[1].beta >= 3.5, "high point must sit at beta >= 3.5");
  expect(rows[1].rate <= 0.05, "success must collapse at beta >= 3.5");
}

// --- 9: density evolution threshold ----------------------------------------

void check_density_evolution() {
  const double beta3 = de_threshold(3, 1e-4);
  std::printf("    [C=3] threshold %.4f\n", beta3);
  expect(std::abs(beta3 - 2.44) <= 0.05, "C = 3 threshold must land within 2.44 +/- 0.05");

  expect(de_success_condition({3, beta3 - 0.05}), "condition must hold just below the threshold");
  expect(!de_success_condition({3, beta3 + 0.05}), "condition must fail just above the threshold");
  const std::vector<double> below = de_iterate({3, beta3 - 0.05}, 1.0, 10000);
  expect(below.back() < 1e-6, "iteration must drain below the threshold");
  const std::vector<double> above = de_iterate({3, beta3 + 0.05}, 1.0, 10000);
  expect(above.back() > 1e-3, "iteration must stall above the threshold");
}

// --- 10: random support statistics ------------------------------------------

void check_support_statistics() {
  expect(std::abs(rs2_expected_support(4, 2) - 1.75) <= 1e-12, "closed form must give 1.75 at (4, 2)");
  double total = 0.0;  // exact enumeration of the 16 ordered pairs
  for (int v1 = 0; v1 < 4; ++v1)
    for (int v2 = 0; v2 < 4; ++v2) total += (v1 == v2) ? 1.0 : 2.0;
  expect(total / 16.0 == 1.75, "enumeration must give exactly 1.75");

  std::mt19937_64 rng(1010);
  const std::uint64_t n_total = 1ull << 20, k = 1ull << 10;
  const int trials = 10000;
  const std::vector<double> ratios = simulate_rs2(n_total, k, trials, rng);
  double mean = 0.0;
  for (double r : ratios) mean += r;
  mean /= trials;
  double var = 0.0;
  for (double r : ratios) var += (r - mean) * (r - mean);
  var /= (trials - 1);
  const double expected = rs2_expected_support(n_total, k) / static_cast<double>(k);
  const double std_err = std::sqrt(var / trials);
  std::printf("    mean %.6f vs expected %.6f (stderr %.2e)\n", mean, expected, std_err);
  expect(std::abs(mean - expected) <= 3.0 * std_err, "simulated mean must match the closed form");
}

// --- 11: trapping sets -------------------------------------------------------

void check_trapping_sets() {
  const int n = 6;
  const HashFamily family = build_projection_family(n, 3);

  expect(!min_trapping_set_size(family, 7).has_value(), "no trapping set smaller than 8 may exist");
  const auto smallest = min_trapping_set_size(family, 8);
  expect(smallest.has_value() && *smallest == 8, "the 8-point cube must be found at size 8");

  std::vector<std::uint64_t> cube;
  for (int mask = 0; mask < 8; ++mask) {
    std::uint64_t v = 0;
    for (int w = 0; w < 3; ++w) v |= ((mask >> w) & 1 ? 0b10ull : 0b01ull) << (2 * w);
    cube.push_back(v);
  }
  expect(is_trapping_set(cube, family), "the cube must trap the decoder");

  // Every decode failure must stall on a trapping set.
  const HashFamily stress = build_disjoint_family(9, 3);
  int failures = 0;
  for (int trial = 0; trial < 80; ++trial) {
    std::mt19937_64 rng(mix_seed(1011, static_cast<std::uint64_t>(trial)));
    auto [x, truth] = gen_sparse_signal(9, 16, SupportModel::rs1, rng);
    const DecodeReport report = sparse_fht(x, stress);
    if (report.success) continue;
    ++failures;
    std::vector<std::uint64_t> residual;
    for (const auto& [j, v] : truth)
      if (!report.recovered.count(j)) residual.push_back(j);
    expect(!residual.empty(), "a failed decode must leave residual support");
    expect(is_trapping_set(residual, stress), "failure residual must be a trapping set");
  }
  std::printf("    stress decodes left %d trapping residuals\n", failures);
  expect(failures >= 5, "the stress load must actually produce failures");
}

// --- 12: runtime comparison and work shapes ----------------------------------

void check_runtime_trend() {
  const int ns[] = {18};
  const double alphas[] = {1.0 / 6.0, 0.25, 1.0 / 3.0};
  const BenchResult result = bench_runtime(ns, alphas, 9, 1012);
  for (const BenchRow& row : result.rows) {
    std::printf("    [n=%d alpha=%.3f] full %.3f ms vs sparse %.3f ms\n", row.n, row.alpha, row.t_fht_ms,
                row.t_sfht_ms);
    expect(row.t_sfht_ms < row.t_fht_ms, "sparse transform must beat the full transform below alpha = 1/3");
  }

  // Work-shape audit: one peel touches C bins in (n - b + 1) slices each.
  const int n = 12, b = 4, c_hashes = 3;
  const HashFamily family = build_generalized_family(n, b, c_hashes);
  std::mt19937_64 rng(1013);
  auto [x, truth] = gen_sparse_signal(n, 8, SupportModel::rs1, rng);
  HashState state = compute_hash_state(x, family);
  const std::vector<double> before = state.u;
  peel(state, family, BinaryIndex(truth.begin()->first, n), truth.begin()->second);
  std::size_t changed = 0;
  for (std::size_t i = 0; i < state.u.size(); ++i)
    if (state.u[i] != before[i]) ++changed;
  expect(changed <= static_cast<std::size_t>(c_hashes) * (n - b + 1),
         "a peel must touch at most C * (n - b + 1) state entries");
}

struct Criterion {
  std::string name;
  std::function<void()> fn;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"transform matches the quadratic oracle under 10 s", check_transform_correctness},
      {"shift, permutation and aliasing identities", check_transform_properties},
      {"hashed spectra equal brute-force bin sums", check_hashing_law},
      {"singleton bins yield exact index and value", check_support_estimation},
      {"pair collisions never pass the ratio test", check_collision_detection},
      {"very sparse decoding succeeds at rate >= 0.95", check_very_sparse_success},
      {"less sparse decoding succeeds at rate >= 0.90", check_less_sparse_success},
      {"bin-load sweep: certain below 0.33, dead past 3.5", check_beta_sweep},
      {"density-evolution threshold near 2.44 for C = 3", check_density_evolution},
      {"with-replacement support statistics", check_support_statistics},
      {"trapping sets: size bound and failure residuals", check_trapping_sets},
      {"sparse beats full transform below alpha = 1/3", check_runtime_trend},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    std::string verdict = "PASS";
    std::string detail;
    try {
      criteria[i].fn();
    } catch (const std::exception& e) {
      verdict = "FAIL";
      detail = e.what();
      ++failed;
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%2zu/%zu] %-55s %s (%.2f s)%s%s\n", i + 1, criteria.size(), criteria[i].name.c_str(),
                verdict.c_str(), elapsed, detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
  }
  if (failed != 0) {
    std::printf("%d of %zu acceptance checks failed\n", failed, criteria.size());
    return 1;
  }
  std::printf("all %zu acceptance checks passed\n", criteria.size());
  return 0;
}
