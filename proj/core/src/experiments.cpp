#include "sfht/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace sfht {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Uniform K-subset of [0, N) without replacement (Floyd's algorithm).
std::set<std::uint64_t> sample_distinct(std::uint64_t n_total, std::uint64_t k, std::mt19937_64& rng) {
  std::set<std::uint64_t> support;
  for (std::uint64_t j = n_total - k; j < n_total; ++j) {
    std::uniform_int_distribution<std::uint64_t> uniform(0, j);
    const std::uint64_t t = uniform(rng);
    if (!support.insert(t).second) support.insert(j);
  }
  return support;
}

// Runs `trials` independent jobs over a small pool, collecting pass/fail.
int count_successes(int trials, int threads, const std::function<bool(int)>& trial) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, trials);
  std::vector<char> ok(static_cast<std::size_t>(trials), 0);
  if (threads == 1) {
    for (int t = 0; t < trials; ++t) ok[static_cast<std::size_t>(t)] = trial(t);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1))
          ok[static_cast<std::size_t>(t)] = trial(t);
      });
    }
    for (std::thread& th : pool) th.join();
  }
  int successes = 0;
  for (char c : ok) successes += c;
  return successes;
}

std::uint64_t sparsity_from_alpha(int n, double alpha) {
  return static_cast<std::uint64_t>(std::llround(std::pow(2.0, n * alpha)));
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return (v.size() % 2) ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

template <class RowParser>
void read_csv(std::istream& is, const std::string& header, RowParser&& parse) {
  std::string line;
  if (!std::getline(is, line) || line != header) throw std::runtime_error("csv: bad header");
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    parse(split_csv_line(line));
  }
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t root, std::uint64_t counter) {
  std::uint64_t z = root + 0x9E3779B97F4A7C15ull * (counter + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::pair<DenseSignal, SparseSpectrum> gen_sparse_signal(int n, std::uint64_t k_sparsity, SupportModel model,
                                                         std::mt19937_64& rng) {
  require(n >= 1 && n <= 30, "gen_sparse_signal: bad width");
  const std::uint64_t n_total = 1ull << n;
  require(k_sparsity <= n_total, "gen_sparse_signal: sparsity exceeds signal length");
  std::normal_distribution<double> normal(0.0, 1.0);
  SparseSpectrum truth;
  if (model == SupportModel::rs1) {
    if (k_sparsity > 0)
      for (std::uint64_t j : sample_distinct(n_total, k_sparsity, rng)) truth[j] = normal(rng);
  } else {
    std::uniform_int_distribution<std::uint64_t> uniform(0, n_total - 1);
    for (std::uint64_t t = 0; t < k_sparsity; ++t) {
      const std::uint64_t j = uniform(rng);
      if (!truth.count(j)) truth[j] = normal(rng);
    }
  }
  DenseSignal spectrum(n_total, 0.0);
  for (const auto& [j, v] : truth) spectrum[j] = v;
  // The transform is an involution, so one application turns the spectrum
  // into the matching time-domain signal.
  fht_inplace(spectrum);
  return {std::move(spectrum), std::move(truth)};
}

bool recovery_matches(const SparseSpectrum& truth, const SparseSpectrum& recovered, double rel_tol) {
  if (truth.size() != recovered.size()) return false;
  auto it = recovered.begin();
  for (const auto& [j, v] : truth) {
    if (it->first != j) return false;
    if (std::abs(it->second - v) > rel_tol * std::abs(v)) return false;
    ++it;
  }
  return true;
}

namespace {

// Degenerate single hash over the window [0, bin_bits).
HashFamily single_window_family(int n, int bin_bits) {
  HashFamily family;
  family.n = n;
  family.bin_bits = bin_bits;
  family.n_hashes = 1;
  family.construction = "circular";
  family.configs.push_back(HashConfig::make(circular_shift_matrix(n, bin_bits % n), bin_bits));
  return family;
}

}  // namespace

HashFamily build_family(const std::string& construction, int n, int bin_bits, int n_hashes, std::mt19937_64& rng) {
  if (construction == "random") return build_random_family(n, bin_bits, n_hashes, rng);
  if (construction == "disjoint" && n % n_hashes == 0) return build_disjoint_family(n, n_hashes);
  if (construction == "projection" && n_hashes >= 2 && n % n_hashes == 0) return build_projection_family(n, n_hashes);
  if (construction != "disjoint" && construction != "projection" && construction != "circular")
    throw std::invalid_argument("build_family: unknown construction '" + construction + "'");
  if (n_hashes == 1) return single_window_family(n, bin_bits);
  return build_generalized_family(n, bin_bits, n_hashes);
}

std::vector<SuccessRow> run_success_experiment(const ExperimentGrid& grid) {
  require(grid.trials >= 1, "run_success_experiment: need at least one trial");
  require(!grid.alphas.empty() && !grid.c_values.empty(), "run_success_experiment: empty grid");
  if (grid.beta_overrides) require(grid.beta_overrides->size() == grid.alphas.size(),
                                   "run_success_experiment: beta override size mismatch");
  std::vector<SuccessRow> rows;
  std::uint64_t point = 0;
  for (std::size_t ai = 0; ai < grid.alphas.size(); ++ai) {
    const double alpha = grid.alphas[ai];
    for (int c_hashes : grid.c_values) {
      const int b = default_bin_bits(grid.n, alpha);
      const std::uint64_t k = grid.beta_overrides
                                  ? static_cast<std::uint64_t>(std::llround((*grid.beta_overrides)[ai] * std::pow(2.0, b)))
                                  : sparsity_from_alpha(grid.n, alpha);
      const std::uint64_t point_seed = mix_seed(grid.seed, point++);
      const bool random_family = grid.construction == "random";
      HashFamily shared;
      if (!random_family) {
        std::mt19937_64 rng(point_seed);
        shared = build_family(grid.construction, grid.n, b, c_hashes, rng);
      }
      DecodeOptions opts;
      opts.max_passes = grid.max_passes;
      const int successes = count_successes(grid.trials, grid.threads, [&](int t) {
        std::mt19937_64 rng(mix_seed(point_seed, static_cast<std::uint64_t>(t)));
        const HashFamily family =
            random_family ? build_family("random", grid.n, b, c_hashes, rng) : shared;
        auto [x, truth] = gen_sparse_signal(grid.n, k, SupportModel::rs1, rng);
        const DecodeReport report = sparse_fht(x, family, opts);
        return report.success && recovery_matches(truth, report.recovered);
      });
      SuccessRow row;
      row.alpha = alpha;
      row.c_hashes = c_hashes;
      row.trials = grid.trials;
      row.successes = successes;
      row.rate = static_cast<double>(successes) / grid.trials;
      row.std_err = std::sqrt(row.rate * (1.0 - row.rate) / grid.trials);
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<BetaRow> run_beta_sweep(int n, int b_fixed, int c_hashes, std::span<const double> alphas, int trials,
                                    std::uint64_t seed, int threads) {
  require(b_fixed >= 1 && b_fixed < n, "run_beta_sweep: bad bin bits");
  require(trials >= 1, "run_beta_sweep: need at least one trial");
  const double n_bins = std::pow(2.0, b_fixed);
  std::vector<BetaRow> rows;
  std::uint64_t point = 0;
  for (double alpha : alphas) {
    const std::uint64_t k = sparsity_from_alpha(n, alpha);
    const std::uint64_t point_seed = mix_seed(seed, point++);
    const HashFamily family = build_generalized_family(n, b_fixed, c_hashes);
    const int successes = count_successes(trials, threads, [&](int t) {
      std::mt19937_64 rng(mix_seed(point_seed, static_cast<std::uint64_t>(t)));
      auto [x, truth] = gen_sparse_signal(n, k, SupportModel::rs1, rng);
      const DecodeReport report = sparse_fht(x, family);
      return report.success && recovery_matches(truth, report.recovered);
    });
    BetaRow row;
    row.beta = static_cast<double>(k) / n_bins;
    row.trials = trials;
    row.successes = successes;
    row.rate = static_cast<double>(successes) / trials;
    rows.push_back(row);
  }
  return rows;
}

BenchResult bench_runtime(std::span<const int> n_values, std::span<const double> alphas, int reps,
                          std::uint64_t seed) {
  require(reps >= 5, "bench_runtime: need at least five reps for a stable median");
  using clock = std::chrono::steady_clock;
  BenchResult result;
  for (int n : n_values) {
    std::vector<double> sorted_alphas(alphas.begin(), alphas.end());
    std::sort(sorted_alphas.begin(), sorted_alphas.end());
    double star = 0.0;
    bool prefix_ok = true;
    for (double alpha : sorted_alphas) {
      const std::uint64_t k = sparsity_from_alpha(n, alpha);
      const int b = default_bin_bits(n, alpha);
      const int c_hashes =
          std::clamp(static_cast<int>(std::lround(1.0 / std::min(alpha, 1.0 - alpha))), 3, 8);
      const HashFamily family = build_generalized_family(n, b, c_hashes);
      std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(n) * 1000 + static_cast<std::uint64_t>(alpha * 100)));
      auto [x, truth] = gen_sparse_signal(n, k, SupportModel::rs1, rng);

      std::vector<double> t_full;
      DenseSignal scratch(x.size());
      for (int r = 0; r < reps; ++r) {
        std::copy(x.begin(), x.end(), scratch.begin());
        const auto start = clock::now();
        fht_inplace(scratch);
        t_full.push_back(std::chrono::duration<double, std::milli>(clock::now() - start).count());
      }
      std::vector<double> t_sparse;
      for (int r = 0; r < reps; ++r) {
        const auto start = clock::now();
        const DecodeReport report = sparse_fht(x, family);
        t_sparse.push_back(std::chrono::duration<double, std::milli>(clock::now() - start).count());
        (void)report;
      }
      BenchRow row;
      row.n = n;
      row.alpha = alpha;
      row.t_fht_ms = median(t_full);
      row.t_sfht_ms = median(t_sparse);
      result.rows.push_back(row);
      if (prefix_ok && row.t_sfht_ms < row.t_fht_ms)
        star = alpha;
      else
        prefix_ok = false;
    }
    result.alpha_star.emplace_back(n, star);
  }
  return result;
}

void write_success_csv(std::ostream& os, std::span<const SuccessRow> rows) {
  os << "alpha,C,trials,successes,rate,stderr\n";
  for (const SuccessRow& r : rows)
    os << format_double(r.alpha) << ',' << r.c_hashes << ',' << r.trials << ',' << r.successes << ','
       << format_double(r.rate) << ',' << format_double(r.std_err) << '\n';
}

std::vector<SuccessRow> read_success_csv(std::istream& is) {
  std::vector<SuccessRow> rows;
  read_csv(is, "alpha,C,trials,successes,rate,stderr", [&rows](const std::vector<std::string>& f) {
    if (f.size() != 6) throw std::runtime_error("success csv: bad row");
    SuccessRow r;
    r.alpha = std::stod(f[0]);
    r.c_hashes = std::stoi(f[1]);
    r.trials = std::stoi(f[2]);
    r.successes = std::stoi(f[3]);
    r.rate = std::stod(f[4]);
    r.std_err = std::stod(f[5]);
    rows.push_back(r);
  });
  return rows;
}

void write_beta_csv(std::ostream& os, std::span<const BetaRow> rows) {
  os << "beta,trials,successes,rate\n";
  for (const BetaRow& r : rows)
    os << format_double(r.beta) << ',' << r.trials << ',' << r.successes << ',' << format_double(r.rate) << '\n';
}

std::vector<BetaRow> read_beta_csv(std::istream& is) {
  std::vector<BetaRow> rows;
  read_csv(is, "beta,trials,successes,rate", [&rows](const std::vector<std::string>& f) {
    if (f.size() != 4) throw std::runtime_error("beta csv: bad row");
    BetaRow r;
    r.beta = std::stod(f[0]);
    r.trials = std::stoi(f[1]);
    r.successes = std::stoi(f[2]);
    r.rate = std::stod(f[3]);
    rows.push_back(r);
  });
  return rows;
}

void write_bench_csv(std::ostream& os, const BenchResult& result) {
  os << "n,alpha,t_fht_ms,t_sfht_ms\n";
  for (const BenchRow& r : result.rows)
    os << r.n << ',' << format_double(r.alpha) << ',' << format_double(r.t_fht_ms) << ','
       << format_double(r.t_sfht_ms) << '\n';
  for (const auto& [n, star] : result.alpha_star)
    os << "# alpha_star," << n << ',' << format_double(star) << '\n';
}

}  // namespace sfht
