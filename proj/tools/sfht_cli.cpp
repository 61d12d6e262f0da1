// Command-line harness for the sparse Walsh-Hadamard transform library:
// signal generation, single-shot transforms, hashed-spectrum dumps, decoding,
// density-evolution queries and the success-probability / runtime studies.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sfht/analysis.hpp"
#include "sfht/decoder.hpp"
#include "sfht/experiments.hpp"
#include "sfht/signal_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDecodeFailure = 1;
constexpr int kExitUsage = 2;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Writes to the named file, or stdout when the name is empty.
void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  fn(out);
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    std::size_t next = csv.find(',', pos);
    if (next == std::string::npos) next = csv.size();
    values.push_back(std::stod(csv.substr(pos, next - pos)));
    pos = next + 1;
  }
  return values;
}

struct FamilySpec {
  std::string construction = "circular";
  int c_hashes = 4;
  std::optional<int> b_bits;
  std::optional<double> alpha;
  std::optional<std::uint64_t> k;

  int resolve_bin_bits(int n) const {
    if (b_bits) return *b_bits;
    if (k) {
      const int b = static_cast<int>(std::lround(std::log2(static_cast<double>(*k))));
      return std::clamp(b, 1, n);
    }
    if (alpha) return sfht::default_bin_bits(n, *alpha);
    throw CLI::ValidationError("need one of --b-bits, --k or --alpha to size the hash bins");
  }
};

void add_family_flags(CLI::App* cmd, FamilySpec& spec) {
  cmd->add_option("--construction", spec.construction, "Hash construction")
      ->check(CLI::IsMember({"disjoint", "projection", "circular", "random"}));
  cmd->add_option("--c-hashes", spec.c_hashes, "Number of hashes C");
  auto* b = cmd->add_option("--b-bits", spec.b_bits, "Bits per hash bin");
  auto* a = cmd->add_option("--alpha", spec.alpha, "Sparsity index; bins default to round(n*alpha)");
  auto* k = cmd->add_option("--k", spec.k, "Sparsity K; bins default to 2^round(log2 K)");
  b->excludes(a);
  b->excludes(k);
}

sfht::HashFamily make_family(const FamilySpec& spec, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  sfht::HashFamily family = sfht::build_family(spec.construction, n, spec.resolve_bin_bits(n), spec.c_hashes, rng);
  family.seed = (spec.construction == "random") ? seed : 0;
  return family;
}

int run(int argc, char** argv) {
  CLI::App app{"Sparse fast Walsh-Hadamard transform toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name

  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Root seed for all randomness")->capture_default_str();

  // --- gen ---------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Generate a random sparse-spectrum signal");
  int gen_n = 10;
  std::uint64_t gen_k = 8;
  std::string gen_model = "rs1";
  std::string gen_out;
  std::string gen_truth;
  gen->add_option("--n", gen_n, "log2 of the signal length")->required();
  gen->add_option("--k", gen_k, "Number of non-zero spectral coefficients")->required();
  gen->add_option("--model", gen_model, "Support model")->check(CLI::IsMember({"rs1", "rs2"}));
  gen->add_option("--out", gen_out, "Signal file (f64le)")->required();
  gen->add_option("--truth", gen_truth, "Optional ground-truth spectrum CSV");

  // --- fht ---------------------------------------------------------------
  auto* fht_cmd = app.add_subcommand("fht", "Full transform of a signal file");
  std::string fht_in, fht_out;
  fht_cmd->add_option("--in", fht_in, "Input signal (f64le)")->required();
  fht_cmd->add_option("--out", fht_out, "Output signal (f64le)")->required();

  // --- hash --------------------------------------------------------------
  auto* hash_cmd = app.add_subcommand("hash", "Emit the hashed-spectrum state as CSV");
  FamilySpec hash_spec;
  std::string hash_in, hash_out;
  hash_cmd->add_option("--in", hash_in, "Input signal (f64le)")->required();
  hash_cmd->add_option("--out", hash_out, "Output CSV (stdout when omitted)");
  add_family_flags(hash_cmd, hash_spec);

  // --- decode ------------------------------------------------------------
  auto* decode = app.add_subcommand("decode", "Recover a sparse spectrum by peeling");
  FamilySpec decode_spec;
  std::string decode_in, decode_out, decode_report;
  int decode_max_passes = 32;
  decode->add_option("--in", decode_in, "Input signal (f64le)")->required();
  decode->add_option("--out", decode_out, "Recovered spectrum CSV (stdout when omitted)");
  decode->add_option("--report", decode_report, "Decode report JSON (stderr when omitted)");
  decode->add_option("--max-passes", decode_max_passes, "Peeling pass limit");
  add_family_flags(decode, decode_spec);

  // --- de ----------------------------------------------------------------
  auto* de = app.add_subcommand("de", "Density-evolution threshold, iteration or bin-degree pmf");
  int de_c = 3;
  double de_tol = 1e-3;
  std::optional<double> de_beta;
  int de_steps = 50;
  double de_p0 = 1.0;
  bool de_pmf = false;
  int de_imax = 20;
  std::string de_out;
  de->add_option("--c-hashes", de_c, "Number of hashes C");
  de->add_option("--tol", de_tol, "Threshold bisection tolerance");
  de->add_option("--beta", de_beta, "Run the iteration (or pmf) at this bin load instead");
  de->add_option("--steps", de_steps, "Iteration steps");
  de->add_option("--p0", de_p0, "Iteration start value");
  de->add_flag("--pmf", de_pmf, "Print the Poisson bin-degree pmf (needs --beta)");
  de->add_option("--i-max", de_imax, "Largest degree for --pmf");
  de->add_option("--out", de_out, "Output file (stdout when omitted)");

  // --- exp-success -------------------------------------------------------
  auto* exps = app.add_subcommand("exp-success", "Success probability over an (alpha, C) grid");
  sfht::ExperimentGrid grid;
  std::string exps_alphas = "0.111,0.167,0.222,0.278,0.333";
  std::string exps_cs = "2,3,4,5";
  std::string exps_out;
  exps->add_option("--n", grid.n, "log2 of the signal length")->capture_default_str();
  exps->add_option("--trials", grid.trials, "Trials per grid point")->capture_default_str();
  exps->add_option("--alpha", exps_alphas, "Comma-separated sparsity indices")->capture_default_str();
  exps->add_option("--c-hashes", exps_cs, "Comma-separated hash counts")->capture_default_str();
  exps->add_option("--construction", grid.construction, "Hash construction")
      ->check(CLI::IsMember({"disjoint", "projection", "circular", "random"}));
  exps->add_option("--max-passes", grid.max_passes, "Peeling pass limit");
  exps->add_option("--threads", grid.threads, "Worker threads (0 = auto)");
  exps->add_option("--out", exps_out, "Output CSV (stdout when omitted)");

  // --- exp-beta ----------------------------------------------------------
  auto* expb = app.add_subcommand("exp-beta", "Success probability against the bin load beta");
  int expb_n = 18;
  int expb_b = 12;
  int expb_c = 4;
  int expb_trials = 100;
  int expb_threads = 0;
  std::string expb_alphas = "0.55,0.6,0.64,0.667,0.7,0.73,0.75,0.78,0.8";
  std::string expb_out;
  expb->add_option("--n", expb_n, "log2 of the signal length")->capture_default_str();
  expb->add_option("--b-bits", expb_b, "Fixed bin bits")->capture_default_str();
  expb->add_option("--c-hashes", expb_c, "Number of hashes C")->capture_default_str();
  expb->add_option("--trials", expb_trials, "Trials per point")->capture_default_str();
  expb->add_option("--alpha", expb_alphas, "Comma-separated sparsity indices")->capture_default_str();
  expb->add_option("--threads", expb_threads, "Worker threads (0 = auto)");
  expb->add_option("--out", expb_out, "Output CSV (stdout when omitted)");

  // --- bench -------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "Median runtime of the full vs sparse transform");
  std::string bench_ns = "15,18";
  std::string bench_alphas = "0.125,0.25,0.333,0.5,0.667,0.8";
  int bench_reps = 9;
  std::string bench_out;
  bench->add_option("--n", bench_ns, "Comma-separated log2 lengths")->capture_default_str();
  bench->add_option("--alpha", bench_alphas, "Comma-separated sparsity indices")->capture_default_str();
  bench->add_option("--reps", bench_reps, "Repetitions per point (median is reported)")->capture_default_str();
  bench->add_option("--out", bench_out, "Output CSV (stdout when omitted)");

  // --- rs2 ---------------------------------------------------------------
  auto* rs2 = app.add_subcommand("rs2", "Distinct-support statistics of with-replacement draws");
  int rs2_n = 20;
  std::uint64_t rs2_k = 1024;
  int rs2_trials = 10000;
  std::string rs2_out;
  rs2->add_option("--n", rs2_n, "log2 of the index range")->capture_default_str();
  rs2->add_option("--k", rs2_k, "Number of draws")->capture_default_str();
  rs2->add_option("--trials", rs2_trials, "Monte Carlo trials")->capture_default_str();
  rs2->add_option("--out", rs2_out, "Output CSV (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (gen->parsed()) {
    std::mt19937_64 rng(seed);
    const auto model = (gen_model == "rs2") ? sfht::SupportModel::rs2 : sfht::SupportModel::rs1;
    auto [x, truth] = sfht::gen_sparse_signal(gen_n, gen_k, model, rng);
    sfht::write_signal_f64le(gen_out, x);
    if (!gen_truth.empty())
      with_output(gen_truth, [&](std::ostream& os) { sfht::write_spectrum_csv(os, truth); });
    return kExitOk;
  }

  if (fht_cmd->parsed()) {
    sfht::DenseSignal x = sfht::read_signal_f64le(fht_in);
    sfht::fht_inplace(x);
    sfht::write_signal_f64le(fht_out, x);
    return kExitOk;
  }

  if (hash_cmd->parsed()) {
    const sfht::DenseSignal x = sfht::read_signal_f64le(hash_in);
    const sfht::HashFamily family = make_family(hash_spec, sfht::signal_bits(x), seed);
    const sfht::HashState state = sfht::compute_hash_state(x, family);
    with_output(hash_out, [&](std::ostream& os) { sfht::write_state_csv(os, state); });
    return kExitOk;
  }

  if (decode->parsed()) {
    const sfht::DenseSignal x = sfht::read_signal_f64le(decode_in);
    const sfht::HashFamily family = make_family(decode_spec, sfht::signal_bits(x), seed);
    sfht::DecodeOptions opts;
    opts.max_passes = decode_max_passes;
    const sfht::DecodeReport report = sfht::sparse_fht(x, family, opts);
    with_output(decode_out, [&](std::ostream& os) { sfht::write_spectrum_csv(os, report.recovered); });
    if (decode_report.empty())
      sfht::write_report_json(std::cerr, report);
    else
      with_output(decode_report, [&](std::ostream& os) { sfht::write_report_json(os, report); });
    return report.success ? kExitOk : kExitDecodeFailure;
  }

  if (de->parsed()) {
    with_output(de_out, [&](std::ostream& os) {
      if (de_pmf) {
        if (!de_beta) throw CLI::ValidationError("--pmf needs --beta");
        os << "i,prob\n";
        for (int i = 0; i <= de_imax; ++i) os << i << ',' << format_double(sfht::check_degree_pmf(*de_beta, i)) << '\n';
      } else if (de_beta) {
        os << "j,p\n";
        const std::vector<double> p = sfht::de_iterate({de_c, *de_beta}, de_p0, de_steps);
        for (std::size_t j = 0; j < p.size(); ++j) os << j << ',' << format_double(p[j]) << '\n';
      } else {
        os << "C,beta_star\n";
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.4f", sfht::de_threshold(de_c, de_tol));
        os << de_c << ',' << buf << '\n';
      }
    });
    return kExitOk;
  }

  if (exps->parsed()) {
    grid.alphas = parse_list(exps_alphas);
    grid.c_values.clear();
    for (double c : parse_list(exps_cs)) grid.c_values.push_back(static_cast<int>(c));
    grid.seed = seed;
    const std::vector<sfht::SuccessRow> rows = sfht::run_success_experiment(grid);
    with_output(exps_out, [&](std::ostream& os) { sfht::write_success_csv(os, rows); });
    return kExitOk;
  }

  if (expb->parsed()) {
    const std::vector<double> alphas = parse_list(expb_alphas);
    const std::vector<sfht::BetaRow> rows =
        sfht::run_beta_sweep(expb_n, expb_b, expb_c, alphas, expb_trials, seed, expb_threads);
    with_output(expb_out, [&](std::ostream& os) { sfht::write_beta_csv(os, rows); });
    return kExitOk;
  }

  if (bench->parsed()) {
    std::vector<int> ns;
    for (double n : parse_list(bench_ns)) ns.push_back(static_cast<int>(n));
    const std::vector<double> alphas = parse_list(bench_alphas);
    const sfht::BenchResult result = sfht::bench_runtime(ns, alphas, bench_reps, seed);
    with_output(bench_out, [&](std::ostream& os) { sfht::write_bench_csv(os, result); });
    return kExitOk;
  }

  if (rs2->parsed()) {
    std::mt19937_64 rng(seed);
    const std::uint64_t n_total = 1ull << rs2_n;
    const std::vector<double> ratios = sfht::simulate_rs2(n_total, rs2_k, rs2_trials, rng);
    double mean = 0.0;
    for (double r : ratios) mean += r;
    mean /= static_cast<double>(ratios.size());
    double var = 0.0;
    for (double r : ratios) var += (r - mean) * (r - mean);
    var /= static_cast<double>(ratios.size() - 1);
    const double std_err = std::sqrt(var / static_cast<double>(ratios.size()));
    const double expected = sfht::rs2_expected_support(n_total, rs2_k) / static_cast<double>(rs2_k);
    with_output(rs2_out, [&](std::ostream& os) {
      os << "N,K,trials,mean_ratio,expected_ratio,stderr\n";
      os << n_total << ',' << rs2_k << ',' << rs2_trials << ',' << format_double(mean) << ','
         << format_double(expected) << ',' << format_double(std_err) << '\n';
    });
    return kExitOk;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
