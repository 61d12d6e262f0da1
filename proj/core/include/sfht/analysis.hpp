#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "sfht/hashing.hpp"

namespace sfht {

/// Edge-degree model of the hashing graph: every spectral variable meets one
/// bin per hash, and bin loads tend to Poisson(beta) as the signal grows.
struct DegreePolynomials {
  int c_hashes = 0;   // variable-node degree, one edge per hash
  double beta = 0.0;  // average bin load K / B

  double lambda(double x) const;  // x^{C-1}
  double rho(double x) const;     // exp(-beta * (1 - x))
};

/// Surviving-edge recursion p' = lambda(1 - rho(1 - p)); returns p_0..p_steps.
std::vector<double> de_iterate(const DegreePolynomials& poly, double p0, int steps);

/// True when rho(1 - lambda(x)) > 1 - x holds across a grid over (0, 1],
/// which is the regime where iteration from p_0 = 1 drains to zero.
bool de_success_condition(const DegreePolynomials& poly, int grid_size = 10000);

/// Largest beta (to within tol) at which the success condition holds,
/// located by bisection over [0.1, 10].
double de_threshold(int c_hashes, double tol = 1e-3);

/// Poisson(beta) pmf at i, the limiting bin-degree law.
double check_degree_pmf(double beta, int i);

/// Random support models: rs1 draws K distinct indices, rs2 draws K indices
/// independently with replacement (so the support can be smaller than K).
enum class SupportModel { rs1, rs2 };

/// Expected number of distinct indices among k_draws uniform draws with
/// replacement from n_total: N * (1 - (1 - 1/N)^K).
double rs2_expected_support(std::uint64_t n_total, std::uint64_t k_draws);

/// Distinct-count ratios H/K over independent with-replacement draws.
std::vector<double> simulate_rs2(std::uint64_t n_total, std::uint64_t k_draws, int trials, std::mt19937_64& rng);

/// True when every support element collides with another one in every hash;
/// such a support stalls the peeling decoder.
bool is_trapping_set(std::span<const std::uint64_t> support, const HashFamily& family);

/// Combinatorial peeling on the bin-occupancy graph: repeatedly remove
/// elements that sit alone in some bin. Returns the stalled residual
/// (empty when peeling clears the whole support), which is either empty or a
/// trapping set. Oracle for decoder success on a known support.
std::vector<std::uint64_t> peel_residual(std::span<const std::uint64_t> support, const HashFamily& family);

/// Size of the smallest trapping set with at most `cap` elements, or nullopt
/// when none exists. The hashes are linear, so any trapping set translates
/// to one containing index zero; the search fixes that element and fills
/// collision deficits depth-first.
std::optional<std::size_t> min_trapping_set_size(const HashFamily& family, std::size_t cap);

}  // namespace sfht
