#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sfht/analysis.hpp"
#include "sfht/decoder.hpp"

namespace sfht {

/// Draws a random sparse spectrum (support per the model, values i.i.d.
/// standard normal) and returns the matching time-domain signal alongside
/// the ground truth.
std::pair<DenseSignal, SparseSpectrum> gen_sparse_signal(int n, std::uint64_t k_sparsity, SupportModel model,
                                                         std::mt19937_64& rng);

/// Exact support match with every value within rel_tol of the truth.
bool recovery_matches(const SparseSpectrum& truth, const SparseSpectrum& recovered, double rel_tol = 1e-6);

/// Family construction by name. "disjoint" and "projection" fall back to the
/// circular windows when n_hashes does not divide n; "random" draws from rng.
HashFamily build_family(const std::string& construction, int n, int bin_bits, int n_hashes, std::mt19937_64& rng);

struct ExperimentGrid {
  int n = 18;
  std::vector<double> alphas;
  std::vector<int> c_values;
  int trials = 200;
  std::string construction = "circular";
  std::uint64_t seed = 1;
  /// When present (parallel to alphas), sparsity is round(beta * B) instead
  /// of round(2^{n alpha}).
  std::optional<std::vector<double>> beta_overrides;
  int max_passes = 32;
  int threads = 0;  // 0 = hardware concurrency
};

struct SuccessRow {
  double alpha = 0.0;
  int c_hashes = 0;
  int trials = 0;
  int successes = 0;
  double rate = 0.0;
  double std_err = 0.0;
};

/// Success probability over the (alpha, C) grid. Every trial draws a fresh
/// signal, decodes it, and checks the result against the ground truth.
std::vector<SuccessRow> run_success_experiment(const ExperimentGrid& grid);

struct BetaRow {
  double beta = 0.0;
  int trials = 0;
  int successes = 0;
  double rate = 0.0;
};

/// Success probability as a function of the bin load beta = K / B with the
/// bin count frozen at 2^b_fixed and K swept via alpha.
std::vector<BetaRow> run_beta_sweep(int n, int b_fixed, int c_hashes, std::span<const double> alphas, int trials,
                                    std::uint64_t seed, int threads = 0);

struct BenchRow {
  int n = 0;
  double alpha = 0.0;
  double t_fht_ms = 0.0;
  double t_sfht_ms = 0.0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  /// Per n: the largest measured alpha such that the sparse transform beats
  /// the full transform at that alpha and every smaller one (0 when it never
  /// does).
  std::vector<std::pair<int, double>> alpha_star;
};

/// Median wall-clock comparison of the full transform against hashing plus
/// decoding; family construction is excluded from the timed region.
BenchResult bench_runtime(std::span<const int> n_values, std::span<const double> alphas, int reps,
                          std::uint64_t seed);

/// CSV schemas: "alpha,C,trials,successes,rate,stderr",
/// "beta,trials,successes,rate" and "n,alpha,t_fht_ms,t_sfht_ms". Lines
/// starting with '#' are comments and ignored on read.
void write_success_csv(std::ostream& os, std::span<const SuccessRow> rows);
std::vector<SuccessRow> read_success_csv(std::istream& is);
void write_beta_csv(std::ostream& os, std::span<const BetaRow> rows);
std::vector<BetaRow> read_beta_csv(std::istream& is);
void write_bench_csv(std::ostream& os, const BenchResult& result);

/// Deterministic seed chain: trial t of a run seeded with root draws its
/// generator from mix_seed(root, t), so results do not depend on scheduling.
std::uint64_t mix_seed(std::uint64_t root, std::uint64_t counter);

}  // namespace sfht
