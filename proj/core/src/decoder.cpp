#include "sfht/decoder.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sfht {

BinClassification classify_bin(const HashState& state, const HashFamily& family, int c, std::uint64_t k,
                               const DecodeOptions& opts) {
  const HashConfig& cfg = family.configs[static_cast<std::size_t>(c)];
  const double u0 = state.at(c, 0, k);
  if (std::abs(u0) <= opts.eps_zero * state.scale) return {BinKind::zeroton, {}, 0.0};
  std::uint64_t sign_bits = 0;
  for (int d = 1; d <= state.n_probes(); ++d) {
    const double r = state.at(c, d, k) / u0;
    if (std::abs(std::abs(r) - 1.0) > opts.eps_ratio) return {BinKind::multiton, {}, 0.0};
    if (r < 0.0) sign_bits |= 1ull << (d - 1);
  }
  // The bin supplies the top bin_bits of perm^T j and the probe signs the
  // rest, so the inverse transpose recovers j itself.
  const BinaryIndex packed((k << state.n_probes()) | sign_bits, family.n);
  return {BinKind::singleton, mat_vec_mul(cfg.perm_inv_t, packed), u0};
}

void peel(HashState& state, const HashFamily& family, BinaryIndex index, double value) {
  if (index.width != family.n) throw std::invalid_argument("peel: width mismatch");
  if (!std::isfinite(value)) throw std::invalid_argument("peel: value must be finite");
  for (int c = 0; c < family.n_hashes; ++c) {
    const HashConfig& cfg = family.configs[static_cast<std::size_t>(c)];
    const std::uint64_t bin = cfg.bin_of(index.word);
    state.at(c, 0, bin) -= value;
    for (int d = 1; d <= state.n_probes(); ++d) {
      const bool flip = std::popcount(cfg.shift(d - 1) & index.word) & 1u;
      state.at(c, d, bin) -= flip ? -value : value;
    }
  }
}

DecodeReport sparse_fht(std::span<const double> x, const HashFamily& family, const DecodeOptions& opts) {
  for (double v : x)
    if (!std::isfinite(v)) throw std::invalid_argument("sparse_fht: signal must be finite");

  HashState state = compute_hash_state(x, family);
  const double threshold = opts.eps_zero * state.scale;
  const std::uint64_t n_bins = state.n_bins();

  std::size_t live = 0;
  for (int c = 0; c < family.n_hashes; ++c)
    for (std::uint64_t k = 0; k < n_bins; ++k)
      if (std::abs(state.at(c, 0, k)) > threshold) ++live;

  DecodeReport report;
  std::vector<std::uint64_t> touched(static_cast<std::size_t>(family.n_hashes));
  while (report.passes < opts.max_passes && live > 0) {
    ++report.passes;
    std::size_t peels_this_pass = 0;
    for (int c = 0; c < family.n_hashes && live > 0; ++c) {
      for (std::uint64_t k = 0; k < n_bins && live > 0; ++k) {
        const BinClassification cls = classify_bin(state, family, c, k, opts);
        if (cls.kind != BinKind::singleton) continue;
        for (int cc = 0; cc < family.n_hashes; ++cc) {
          touched[static_cast<std::size_t>(cc)] = family.configs[static_cast<std::size_t>(cc)].bin_of(cls.index.word);
          if (std::abs(state.at(cc, 0, touched[static_cast<std::size_t>(cc)])) > threshold) --live;
        }
        peel(state, family, cls.index, cls.value);
        for (int cc = 0; cc < family.n_hashes; ++cc)
          if (std::abs(state.at(cc, 0, touched[static_cast<std::size_t>(cc)])) > threshold) ++live;
        report.recovered[cls.index.word] += cls.value;
        ++report.peeled;
        ++peels_this_pass;
      }
    }
    if (peels_this_pass == 0) break;
  }
  if (report.passes == 0 && live == 0) report.passes = 1;  // an already-clear state still costs one sweep

  bool all_zeroton = true;
  std::size_t residual_bins = 0;
  for (int c = 0; c < family.n_hashes; ++c) {
    for (std::uint64_t k = 0; k < n_bins; ++k) {
      const double u0 = state.at(c, 0, k);
      report.residual_energy += u0 * u0;
      if (std::abs(u0) > threshold) {
        all_zeroton = false;
        ++residual_bins;
      }
    }
  }
  report.success = all_zeroton;
  report.failure_support_size_bound = report.success ? 0 : residual_bins;

  // Cancellation chains can leave dust entries; drop anything at noise level.
  for (auto it = report.recovered.begin(); it != report.recovered.end();) {
    if (std::abs(it->second) <= threshold)
      it = report.recovered.erase(it);
    else
      ++it;
  }
  return report;
}

void write_spectrum_csv(std::ostream& os, const SparseSpectrum& spectrum) {
  os << "index,value\n";
  char buf[40];
  for (const auto& [index, value] : spectrum) {
    std::snprintf(buf, sizeof buf, "%.17g", value);
    os << index << ',' << buf << '\n';
  }
}

SparseSpectrum read_spectrum_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "index,value") throw std::runtime_error("spectrum csv: bad header");
  SparseSpectrum spectrum;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("spectrum csv: bad row");
    try {
      const std::uint64_t index = std::stoull(line.substr(0, comma));
      const double value = std::stod(line.substr(comma + 1));
      if (value != 0.0) spectrum[index] = value;
    } catch (const std::exception&) {
      throw std::runtime_error("spectrum csv: bad row");
    }
  }
  return spectrum;
}

void write_report_json(std::ostream& os, const DecodeReport& report) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", report.residual_energy);
  os << "{\"recovered_count\": " << report.recovered.size() << ", \"success\": "
     << (report.success ? "true" : "false") << ", \"passes\": " << report.passes
     << ", \"peeled\": " << report.peeled << ", \"residual_energy\": " << buf
     << ", \"residual_bins\": " << report.failure_support_size_bound << "}\n";
}

}  // namespace sfht
