#include "sfht/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace sfht {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

double DegreePolynomials::lambda(double x) const { return std::pow(x, c_hashes - 1); }

double DegreePolynomials::rho(double x) const { return std::exp(-beta * (1.0 - x)); }

std::vector<double> de_iterate(const DegreePolynomials& poly, double p0, int steps) {
  require(p0 >= 0.0 && p0 <= 1.0, "de_iterate: p0 must lie in [0, 1]");
  require(steps >= 0, "de_iterate: steps must be non-negative");
  std::vector<double> p;
  p.reserve(static_cast<std::size_t>(steps) + 1);
  p.push_back(p0);
  for (int j = 0; j < steps; ++j) p.push_back(poly.lambda(1.0 - poly.rho(1.0 - p.back())));
  return p;
}

bool de_success_condition(const DegreePolynomials& poly, int grid_size) {
  require(grid_size >= 1000, "de_success_condition: grid too coarse");
  // Strict inequality with a small margin so grid points sitting exactly on
  // the boundary do not flip the verdict.
  constexpr double kMargin = 1e-12;
  for (int i = 1; i <= grid_size; ++i) {
    const double x = static_cast<double>(i) / grid_size;
    if (poly.rho(1.0 - poly.lambda(x)) <= 1.0 - x + kMargin) return false;
  }
  return true;
}

double de_threshold(int c_hashes, double tol) {
  require(c_hashes >= 3, "de_threshold: need at least three hashes");
  require(tol > 0.0, "de_threshold: tol must be positive");
  double lo = 0.1;   // condition holds
  double hi = 10.0;  // condition fails
  if (!de_success_condition({c_hashes, lo})) return lo;
  if (de_success_condition({c_hashes, hi})) return hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (de_success_condition({c_hashes, mid}))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double check_degree_pmf(double beta, int i) {
  require(beta > 0.0, "check_degree_pmf: beta must be positive");
  require(i >= 0, "check_degree_pmf: i must be non-negative");
  double log_p = -beta + i * std::log(beta);
  for (int t = 2; t <= i; ++t) log_p -= std::log(static_cast<double>(t));
  return std::exp(log_p);
}

double rs2_expected_support(std::uint64_t n_total, std::uint64_t k_draws) {
  require(n_total >= 1, "rs2_expected_support: empty index set");
  require(k_draws <= n_total, "rs2_expected_support: k exceeds n");
  const double n = static_cast<double>(n_total);
  return n * (1.0 - std::pow(1.0 - 1.0 / n, static_cast<double>(k_draws)));
}

std::vector<double> simulate_rs2(std::uint64_t n_total, std::uint64_t k_draws, int trials, std::mt19937_64& rng) {
  require(n_total >= 1 && k_draws >= 1, "simulate_rs2: empty draw");
  require(trials >= 1, "simulate_rs2: need at least one trial");
  std::uniform_int_distribution<std::uint64_t> uniform(0, n_total - 1);
  std::vector<double> ratios;
  ratios.reserve(static_cast<std::size_t>(trials));
  std::vector<std::uint64_t> draws(k_draws);
  for (int t = 0; t < trials; ++t) {
    for (std::uint64_t& d : draws) d = uniform(rng);
    std::sort(draws.begin(), draws.end());
    std::uint64_t distinct = 1;
    for (std::size_t i = 1; i < draws.size(); ++i)
      if (draws[i] != draws[i - 1]) ++distinct;
    ratios.push_back(static_cast<double>(distinct) / static_cast<double>(k_draws));
  }
  return ratios;
}

bool is_trapping_set(std::span<const std::uint64_t> support, const HashFamily& family) {
  if (support.empty()) throw std::invalid_argument("is_trapping_set: empty support");
  for (int c = 0; c < family.n_hashes; ++c) {
    const HashConfig& cfg = family.configs[static_cast<std::size_t>(c)];
    std::unordered_map<std::uint64_t, int> load;
    for (std::uint64_t v : support) ++load[cfg.bin_of(v)];
    for (std::uint64_t v : support)
      if (load[cfg.bin_of(v)] < 2) return false;
  }
  return true;
}

std::vector<std::uint64_t> peel_residual(std::span<const std::uint64_t> support, const HashFamily& family) {
  const int c_hashes = family.n_hashes;
  std::vector<std::uint64_t> elems(support.begin(), support.end());
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());

  std::vector<std::unordered_map<std::uint64_t, int>> load(static_cast<std::size_t>(c_hashes));
  for (int c = 0; c < c_hashes; ++c)
    for (std::uint64_t v : elems) ++load[static_cast<std::size_t>(c)][family.configs[static_cast<std::size_t>(c)].bin_of(v)];

  std::vector<char> alive(elems.size(), 1);
  std::vector<std::size_t> stack;
  auto is_peelable = [&](std::size_t i) {
    for (int c = 0; c < c_hashes; ++c)
      if (load[static_cast<std::size_t>(c)][family.configs[static_cast<std::size_t>(c)].bin_of(elems[i])] == 1) return true;
    return false;
  };
  for (std::size_t i = 0; i < elems.size(); ++i)
    if (is_peelable(i)) stack.push_back(i);

  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    if (!alive[i]) continue;
    if (!is_peelable(i)) continue;
    alive[i] = 0;
    for (int c = 0; c < c_hashes; ++c) {
      const std::uint64_t bin = family.configs[static_cast<std::size_t>(c)].bin_of(elems[i]);
      if (--load[static_cast<std::size_t>(c)][bin] == 1) {
        // The surviving occupant of this bin just became peelable.
        for (std::size_t j = 0; j < elems.size(); ++j)
          if (alive[j] && family.configs[static_cast<std::size_t>(c)].bin_of(elems[j]) == bin) stack.push_back(j);
      }
    }
  }

  std::vector<std::uint64_t> residual;
  for (std::size_t i = 0; i < elems.size(); ++i)
    if (alive[i]) residual.push_back(elems[i]);
  return residual;
}

namespace {

// All 2^{n-b} kernel elements of one hash, found by brute enumeration; the
// search only runs at small n.
std::vector<std::uint64_t> kernel_elements(const HashConfig& cfg) {
  std::vector<std::uint64_t> kernel;
  const std::uint64_t n_indices = 1ull << cfg.n();
  for (std::uint64_t j = 0; j < n_indices; ++j)
    if (cfg.bin_of(j) == 0) kernel.push_back(j);
  return kernel;
}

struct TrapSearch {
  const std::vector<std::vector<std::uint64_t>>* kernels = nullptr;
  int c_hashes = 0;
  std::size_t cap = 0;
  std::set<std::uint64_t> members;

  // True when some extension of `members` within cap is a trapping set.
  bool extend() {
    for (std::uint64_t v : members) {
      for (int c = 0; c < c_hashes; ++c) {
        bool satisfied = false;
        for (std::uint64_t q : (*kernels)[static_cast<std::size_t>(c)]) {
          if (q != 0 && members.count(v ^ q)) {
            satisfied = true;
            break;
          }
        }
        if (satisfied) continue;
        if (members.size() >= cap) return false;
        // Branch on every way to hand v a collision partner in hash c.
        for (std::uint64_t q : (*kernels)[static_cast<std::size_t>(c)]) {
          if (q == 0) continue;
          const std::uint64_t w = v ^ q;
          members.insert(w);
          if (extend()) return true;
          members.erase(w);
        }
        return false;
      }
    }
    return true;  // every member collides everywhere
  }
};

}  // namespace

std::optional<std::size_t> min_trapping_set_size(const HashFamily& family, std::size_t cap) {
  require(family.n <= 20, "min_trapping_set_size: width too large for exhaustive search");
  require(cap >= 2, "min_trapping_set_size: cap below the smallest possible set");
  std::vector<std::vector<std::uint64_t>> kernels;
  kernels.reserve(family.configs.size());
  for (const HashConfig& cfg : family.configs) kernels.push_back(kernel_elements(cfg));

  for (std::size_t target = 2; target <= cap; ++target) {
    TrapSearch search;
    search.kernels = &kernels;
    search.c_hashes = family.n_hashes;
    search.cap = target;
    search.members.insert(0);
    if (search.extend()) return target;
  }
  return std::nullopt;
}

}  // namespace sfht
