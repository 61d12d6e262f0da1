#pragma once

#include <span>
#include <vector>

#include "sfht/gf2.hpp"

namespace sfht {

/// Length 2^n signal of 64-bit reals, indexed by packed elements of F2^n.
using DenseSignal = std::vector<double>;

/// log2 of the signal length; throws unless the length is a power of two.
int signal_bits(std::span<const double> x);

/// In-place unitary Walsh-Hadamard transform: stage-doubling butterflies
/// followed by a 1/sqrt(N) scale, O(N log N) operations. Applying it twice
/// returns the input.
void fht_inplace(std::span<double> x);

/// Out-of-place convenience wrapper around fht_inplace.
DenseSignal fht(DenseSignal x);

/// Quadratic transform straight from the definition, used as a reference
/// oracle for fht.
DenseSignal naive_wht(const DenseSignal& x);

/// result_m = x_{m + p} with XOR index addition.
DenseSignal apply_shift(const DenseSignal& x, BinaryIndex p);

/// result_m = x_{perm * m}; perm must be invertible so this permutes x.
DenseSignal apply_permutation(const DenseSignal& x, const GF2Matrix& perm);

/// Length 2^b signal picking the samples whose low n-b index bits equal p:
/// result_m = x at index (m << (n-b)) XOR p. Requires b < n and p zero in its
/// top b bits. In the transform domain every output bin aliases the 2^{n-b}
/// spectral components that share its top b index bits, with signs set by the
/// inner products of p against the aliased low bits.
DenseSignal subsample(const DenseSignal& x, int b, BinaryIndex p);

}  // namespace sfht
