#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "sfht/gf2.hpp"
#include "sfht/wht.hpp"

namespace sfht {

/// One spectral-domain hash. The invertible matrix `perm` scrambles indices;
/// a spectral index j lands in the bin spelled by the top bin_bits of
/// perm^T j. The first n - bin_bits columns of perm double as the probe
/// shifts used for collision detection, and together with the bin they pin
/// down a lone index in a bin exactly.
struct HashConfig {
  GF2Matrix perm;        // n x n, invertible
  GF2Matrix perm_inv_t;  // cached inverse transpose
  int bin_bits = 0;
  std::vector<std::uint64_t> cols;  // packed columns of perm

  /// Validates and fills the caches; throws if perm is singular.
  static HashConfig make(GF2Matrix perm, int bin_bits);

  int n() const { return perm.n_rows; }
  int n_probes() const { return n() - bin_bits; }
  std::uint64_t n_bins() const { return 1ull << bin_bits; }
  /// Probe shift d in [0, n_probes), packed.
  std::uint64_t shift(int d) const { return cols[static_cast<std::size_t>(d)]; }

  /// Bin of spectral index j, packed into bin_bits bits.
  std::uint64_t bin_of(std::uint64_t j) const;
};

/// BinaryIndex wrapper around HashConfig::bin_of.
BinaryIndex hash_index(const HashConfig& cfg, BinaryIndex j);

struct HashFamily {
  int n = 0;
  int bin_bits = 0;
  int n_hashes = 0;
  std::string construction;  // disjoint | projection | circular | random
  std::uint64_t seed = 0;    // meaningful for random families only
  std::vector<HashConfig> configs;
};

/// n_hashes non-overlapping index windows of width n / n_hashes each;
/// requires n_hashes to divide n.
HashFamily build_disjoint_family(int n, int n_hashes);

/// n_hashes windows of width (n_hashes - 1) * n / n_hashes; config i drops
/// the length-t slice (i + n_hashes - 1) mod n_hashes and concatenates the
/// remaining slices in increasing order. Any two configs have trivial kernel
/// intersection. Requires n_hashes to divide n.
HashFamily build_projection_family(int n, int n_hashes);

/// Circularly shifted windows of width bin_bits starting at multiples of
/// t = round(n / n_hashes), wrapping mod n. Coincides with the disjoint
/// family at bin_bits = n / n_hashes and covers every other width.
HashFamily build_generalized_family(int n, int bin_bits, int n_hashes);

/// Independent uniform draws from GL(n, F2); probe shifts are the leading
/// columns of each draw, as for the deterministic constructions.
HashFamily build_random_family(int n, int bin_bits, int n_hashes, std::mt19937_64& rng);

/// round(n * alpha) clipped to [1, n - 1].
int default_bin_bits(int n, double alpha);

/// Signal accessor used by the hashing front end; lets tests audit exactly
/// which samples get touched.
using SampleReader = std::function<double(std::uint64_t)>;

/// Hashed spectrum of x under cfg with time shift p: output bin k receives
/// the sum of X_j over spectral indices j with bin_of(j) = k, each term
/// signed by the mod-2 inner product of p and j. Reads exactly n_bins
/// samples of x and costs O(B log B) arithmetic.
std::vector<double> fast_hadamard_hashing(std::span<const double> x, const HashConfig& cfg, std::uint64_t p);
std::vector<double> fast_hadamard_hashing(const SampleReader& read, int n, const HashConfig& cfg, std::uint64_t p);

/// All hash observations feeding one decode, n_hashes x (n_probes + 1) x
/// n_bins. Slice d = 0 is the unshifted hash; slice d >= 1 uses probe shift
/// d - 1 of the config.
struct HashState {
  int n = 0;
  int bin_bits = 0;
  int n_hashes = 0;
  std::vector<double> u;
  double scale = 0.0;  // max |u| right after hashing; anchors decode tolerances

  int n_probes() const { return n - bin_bits; }
  std::size_t n_bins() const { return std::size_t{1} << bin_bits; }

  double& at(int c, int d, std::uint64_t k) {
    return u[(static_cast<std::size_t>(c) * static_cast<std::size_t>(n_probes() + 1) + static_cast<std::size_t>(d)) * n_bins() + k];
  }
  double at(int c, int d, std::uint64_t k) const {
    return u[(static_cast<std::size_t>(c) * static_cast<std::size_t>(n_probes() + 1) + static_cast<std::size_t>(d)) * n_bins() + k];
  }
};

HashState compute_hash_state(std::span<const double> x, const HashFamily& family);
HashState compute_hash_state(const SampleReader& read, const HashFamily& family);

/// Text format: header "n bin_bits n_hashes construction seed", then each
/// perm matrix in the gf2 text format.
void write_family(std::ostream& os, const HashFamily& family);
HashFamily read_family(std::istream& is);

/// CSV rows "c,d,k,value".
void write_state_csv(std::ostream& os, const HashState& state);

}  // namespace sfht
