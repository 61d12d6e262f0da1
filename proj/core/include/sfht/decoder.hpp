#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>

#include "sfht/hashing.hpp"

namespace sfht {

/// Spectral coefficients keyed by packed index. Zero-valued entries are
/// never stored.
using SparseSpectrum = std::map<std::uint64_t, double>;

enum class BinKind { zeroton, singleton, multiton };

struct BinClassification {
  BinKind kind = BinKind::zeroton;
  BinaryIndex index{};  // filled for singletons
  double value = 0.0;   // filled for singletons
};

struct DecodeOptions {
  double eps_zero = 1e-9;   // zeroton threshold, relative to HashState::scale
  double eps_ratio = 1e-6;  // ratio-test tolerance around |r| = 1
  int max_passes = 32;
};

struct DecodeReport {
  SparseSpectrum recovered;
  bool success = false;
  int passes = 0;
  std::size_t peeled = 0;          // number of peel operations performed
  double residual_energy = 0.0;    // sum of squares over the unshifted bins
  std::size_t failure_support_size_bound = 0;  // bins left above threshold on failure
};

/// Ratio test on bin (c, k): zeroton when the unshifted observation is below
/// eps_zero * scale; singleton when every probe ratio has magnitude within
/// eps_ratio of one, in which case the ratio signs spell the missing index
/// bits and perm_inv_t maps (bin, sign bits) back to the spectral index;
/// multiton otherwise.
BinClassification classify_bin(const HashState& state, const HashFamily& family, int c, std::uint64_t k,
                               const DecodeOptions& opts = {});

/// Subtracts one recovered coefficient from every hash and probe slice it
/// touches: O(n_hashes * n_probes) arithmetic.
void peel(HashState& state, const HashFamily& family, BinaryIndex index, double value);

/// Full recovery loop: hash the signal, then sweep all bins peeling each
/// singleton as soon as it is found, until a sweep makes no progress or
/// max_passes is hit. Succeeds when every unshifted bin ends below the
/// zeroton threshold. Never throws on decode failure; NaN or Inf input is a
/// usage error.
DecodeReport sparse_fht(std::span<const double> x, const HashFamily& family, const DecodeOptions& opts = {});

/// CSV with header "index,value"; indices are the packed words in decimal.
void write_spectrum_csv(std::ostream& os, const SparseSpectrum& spectrum);
SparseSpectrum read_spectrum_csv(std::istream& is);

/// Single-line JSON record with keys recovered_count, success, passes,
/// peeled, residual_energy, residual_bins.
void write_report_json(std::ostream& os, const DecodeReport& report);

}  // namespace sfht
