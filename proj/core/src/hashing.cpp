#include "sfht/hashing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace sfht {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

// Fills the bins with the subsampled signal and runs the small transform.
// The sample set {perm * (m << (n-b)) XOR p : m in F2^b} is walked in Gray
// code order so each step XORs a single column of perm into the running
// index; that keeps the front end at exactly B reads and O(B) index work.
template <class Sampler>
std::vector<double> hashed_spectrum(Sampler&& sample, int n, const HashConfig& cfg, std::uint64_t p) {
  const int b = cfg.bin_bits;
  const std::uint64_t n_bins = cfg.n_bins();
  std::vector<double> u(n_bins);
  std::uint64_t idx = p;
  u[0] = sample(idx);
  for (std::uint64_t i = 1; i < n_bins; ++i) {
    const int flip = std::countr_zero(i);
    idx ^= cfg.cols[static_cast<std::size_t>(n - b + flip)];
    u[i ^ (i >> 1)] = sample(idx);
  }
  fht_inplace(u);
  const double scale = std::sqrt(static_cast<double>(std::uint64_t{1} << (n - b)));
  for (double& v : u) v *= scale;
  return u;
}

template <class Sampler>
HashState state_from(Sampler&& sample, const HashFamily& family) {
  HashState st;
  st.n = family.n;
  st.bin_bits = family.bin_bits;
  st.n_hashes = family.n_hashes;
  const int slices = st.n_probes() + 1;
  st.u.resize(static_cast<std::size_t>(family.n_hashes) * static_cast<std::size_t>(slices) * st.n_bins());
  double scale = 0.0;
  for (int c = 0; c < family.n_hashes; ++c) {
    const HashConfig& cfg = family.configs[static_cast<std::size_t>(c)];
    for (int d = 0; d < slices; ++d) {
      const std::uint64_t p = (d == 0) ? 0 : cfg.shift(d - 1);
      std::vector<double> bins = hashed_spectrum(sample, family.n, cfg, p);
      for (std::uint64_t k = 0; k < st.n_bins(); ++k) {
        st.at(c, d, k) = bins[k];
        scale = std::max(scale, std::abs(bins[k]));
      }
    }
  }
  st.scale = scale;
  return st;
}

HashFamily make_family(int n, int bin_bits, int n_hashes, std::string construction, std::uint64_t seed,
                       std::vector<GF2Matrix> perms) {
  HashFamily family;
  family.n = n;
  family.bin_bits = bin_bits;
  family.n_hashes = n_hashes;
  family.construction = std::move(construction);
  family.seed = seed;
  family.configs.reserve(perms.size());
  for (GF2Matrix& perm : perms) family.configs.push_back(HashConfig::make(std::move(perm), bin_bits));
  return family;
}

}  // namespace

HashConfig HashConfig::make(GF2Matrix perm, int bin_bits) {
  require(perm.n_rows == perm.n_cols, "HashConfig: matrix not square");
  require(perm.n_rows >= 1 && perm.n_rows <= kMaxBits, "HashConfig: bad width");
  require(bin_bits >= 1 && bin_bits <= perm.n_rows, "HashConfig: bad bin_bits");
  auto inv = mat_inverse(perm);
  require(inv.has_value(), "HashConfig: matrix is singular");
  HashConfig cfg;
  cfg.perm = std::move(perm);
  cfg.perm_inv_t = transpose(*inv);
  cfg.bin_bits = bin_bits;
  cfg.cols.resize(static_cast<std::size_t>(cfg.perm.n_cols));
  for (int c = 0; c < cfg.perm.n_cols; ++c) cfg.cols[static_cast<std::size_t>(c)] = cfg.perm.column_word(c);
  return cfg;
}

std::uint64_t HashConfig::bin_of(std::uint64_t j) const {
  const int d = n_probes();
  std::uint64_t bin = 0;
  for (int s = 0; s < bin_bits; ++s)
    bin |= static_cast<std::uint64_t>(std::popcount(cols[static_cast<std::size_t>(d + s)] & j) & 1u) << s;
  return bin;
}

BinaryIndex hash_index(const HashConfig& cfg, BinaryIndex j) {
  require(j.width == cfg.n(), "hash_index: width mismatch");
  return BinaryIndex(cfg.bin_of(j.word), cfg.bin_bits);
}

HashFamily build_disjoint_family(int n, int n_hashes) {
  require(n >= 1 && n <= kMaxBits, "build_disjoint_family: bad width");
  require(n_hashes >= 1, "build_disjoint_family: need at least one hash");
  require(n % n_hashes == 0, "build_disjoint_family: hash count must divide n");
  const int b = n / n_hashes;
  std::vector<GF2Matrix> perms;
  for (int i = 0; i < n_hashes; ++i) perms.push_back(circular_shift_matrix(n, ((i + 1) * b) % n));
  return make_family(n, b, n_hashes, "disjoint", 0, std::move(perms));
}

HashFamily build_projection_family(int n, int n_hashes) {
  require(n >= 2 && n <= kMaxBits, "build_projection_family: bad width");
  require(n_hashes >= 2, "build_projection_family: need at least two hashes");
  require(n % n_hashes == 0, "build_projection_family: hash count must divide n");
  const int t = n / n_hashes;
  const int b = (n_hashes - 1) * t;
  std::vector<GF2Matrix> perms;
  for (int i = 0; i < n_hashes; ++i) {
    const int dropped = (i + n_hashes - 1) % n_hashes;
    std::vector<std::uint64_t> cols;
    cols.reserve(static_cast<std::size_t>(n));
    // Probe columns first: the dropped slice completes the basis.
    for (int s = 0; s < t; ++s) cols.push_back(1ull << (dropped * t + s));
    for (int w = 0; w < n_hashes; ++w) {
      if (w == dropped) continue;
      for (int s = 0; s < t; ++s) cols.push_back(1ull << (w * t + s));
    }
    perms.push_back(GF2Matrix::from_columns(n, cols));
  }
  return make_family(n, b, n_hashes, "projection", 0, std::move(perms));
}

HashFamily build_generalized_family(int n, int bin_bits, int n_hashes) {
  require(n >= 2 && n <= kMaxBits, "build_generalized_family: bad width");
  require(bin_bits >= 1 && bin_bits <= n - 1, "build_generalized_family: bad bin_bits");
  require(n_hashes >= 2, "build_generalized_family: need at least two hashes");
  const int t = static_cast<int>(std::lround(static_cast<double>(n) / n_hashes));
  std::vector<GF2Matrix> perms;
  for (int i = 0; i < n_hashes; ++i) {
    // Window [i*t, i*t + bin_bits) mod n; the matching rotation puts it in
    // the top bin_bits of perm^T.
    perms.push_back(circular_shift_matrix(n, (i * t + bin_bits) % n));
  }
  return make_family(n, bin_bits, n_hashes, "circular", 0, std::move(perms));
}

HashFamily build_random_family(int n, int bin_bits, int n_hashes, std::mt19937_64& rng) {
  require(n >= 1 && n <= kMaxBits, "build_random_family: bad width");
  require(bin_bits >= 1 && bin_bits <= n, "build_random_family: bad bin_bits");
  require(n_hashes >= 1, "build_random_family: need at least one hash");
  std::vector<GF2Matrix> perms;
  for (int i = 0; i < n_hashes; ++i) perms.push_back(random_invertible(n, rng));
  return make_family(n, bin_bits, n_hashes, "random", 0, std::move(perms));
}

int default_bin_bits(int n, double alpha) {
  const int b = static_cast<int>(std::lround(n * alpha));
  return std::clamp(b, 1, n - 1);
}

std::vector<double> fast_hadamard_hashing(std::span<const double> x, const HashConfig& cfg, std::uint64_t p) {
  require(signal_bits(x) == cfg.n(), "fast_hadamard_hashing: signal width mismatch");
  return hashed_spectrum([&x](std::uint64_t i) { return x[i]; }, cfg.n(), cfg, p);
}

std::vector<double> fast_hadamard_hashing(const SampleReader& read, int n, const HashConfig& cfg, std::uint64_t p) {
  require(n == cfg.n(), "fast_hadamard_hashing: width mismatch");
  return hashed_spectrum(read, n, cfg, p);
}

HashState compute_hash_state(std::span<const double> x, const HashFamily& family) {
  require(signal_bits(x) == family.n, "compute_hash_state: signal width mismatch");
  return state_from([&x](std::uint64_t i) { return x[i]; }, family);
}

HashState compute_hash_state(const SampleReader& read, const HashFamily& family) {
  return state_from(read, family);
}

void write_family(std::ostream& os, const HashFamily& family) {
  os << family.n << ' ' << family.bin_bits << ' ' << family.n_hashes << ' ' << family.construction << ' '
     << family.seed << '\n';
  for (const HashConfig& cfg : family.configs) write_matrix(os, cfg.perm);
}

HashFamily read_family(std::istream& is) {
  HashFamily family;
  if (!(is >> family.n >> family.bin_bits >> family.n_hashes >> family.construction >> family.seed))
    throw std::runtime_error("read_family: bad header");
  if (family.n < 1 || family.n > kMaxBits || family.bin_bits < 1 || family.bin_bits > family.n ||
      family.n_hashes < 1)
    throw std::runtime_error("read_family: bad header values");
  for (int c = 0; c < family.n_hashes; ++c) {
    GF2Matrix perm = read_matrix(is);
    if (perm.n_rows != family.n || perm.n_cols != family.n) throw std::runtime_error("read_family: bad matrix size");
    family.configs.push_back(HashConfig::make(std::move(perm), family.bin_bits));
  }
  return family;
}

void write_state_csv(std::ostream& os, const HashState& state) {
  os << "c,d,k,value\n";
  char buf[40];
  for (int c = 0; c < state.n_hashes; ++c) {
    for (int d = 0; d <= state.n_probes(); ++d) {
      for (std::uint64_t k = 0; k < state.n_bins(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", state.at(c, d, k));
        os << c << ',' << d << ',' << k << ',' << buf << '\n';
      }
    }
  }
}

}  // namespace sfht
