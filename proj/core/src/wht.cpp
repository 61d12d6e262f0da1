#include "sfht/wht.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace sfht {

int signal_bits(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0 || !std::has_single_bit(n)) throw std::invalid_argument("signal length must be a power of two");
  return std::countr_zero(n);
}

void fht_inplace(std::span<double> x) {
  const std::size_t n = x.size();
  signal_bits(x);
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t base = 0; base < n; base += 2 * h) {
      for (std::size_t t = base; t < base + h; ++t) {
        const double a = x[t];
        const double b = x[t + h];
        x[t] = a + b;
        x[t + h] = a - b;
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (double& v : x) v *= scale;
}

DenseSignal fht(DenseSignal x) {
  fht_inplace(x);
  return x;
}

DenseSignal naive_wht(const DenseSignal& x) {
  const std::size_t n = x.size();
  signal_bits(x);
  DenseSignal out(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      acc += (std::popcount(k & m) & 1u) ? -x[m] : x[m];
    }
    out[k] = acc;
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (double& v : out) v *= scale;
  return out;
}

DenseSignal apply_shift(const DenseSignal& x, BinaryIndex p) {
  const int n = signal_bits(x);
  if (p.width != n) throw std::invalid_argument("apply_shift: width mismatch");
  DenseSignal out(x.size());
  for (std::size_t m = 0; m < x.size(); ++m) out[m] = x[m ^ p.word];
  return out;
}

DenseSignal apply_permutation(const DenseSignal& x, const GF2Matrix& perm) {
  const int n = signal_bits(x);
  if (perm.n_rows != n || perm.n_cols != n) throw std::invalid_argument("apply_permutation: width mismatch");
  if (!mat_inverse(perm)) throw std::invalid_argument("apply_permutation: matrix is singular");
  DenseSignal out(x.size());
  for (std::size_t m = 0; m < x.size(); ++m)
    out[m] = x[mat_vec_mul(perm, BinaryIndex(m, n)).word];
  return out;
}

DenseSignal subsample(const DenseSignal& x, int b, BinaryIndex p) {
  const int n = signal_bits(x);
  if (b < 0 || b >= n) throw std::invalid_argument("subsample: need 0 <= b < n");
  if (p.width != n) throw std::invalid_argument("subsample: width mismatch");
  if (p.word >> (n - b)) throw std::invalid_argument("subsample: p must be zero in its top b bits");
  DenseSignal out(std::size_t{1} << b);
  for (std::size_t m = 0; m < out.size(); ++m) out[m] = x[(m << (n - b)) ^ p.word];
  return out;
}

}  // namespace sfht
