#pragma once

#include <bit>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

namespace sfht {

// Widths are capped so a whole index always fits one machine word.
inline constexpr int kMaxBits = 63;

/// Element of F2^n packed into a word. Bit t of `word` is component t, so the
/// least significant bit of the packed index comes first.
struct BinaryIndex {
  std::uint64_t word = 0;
  int width = 0;

  constexpr BinaryIndex() = default;
  constexpr BinaryIndex(std::uint64_t w, int n) : word(w), width(n) {}

  constexpr bool bit(int t) const { return (word >> t) & 1u; }

  friend constexpr bool operator==(const BinaryIndex&, const BinaryIndex&) = default;
};

/// Mod-2 inner product: parity of the bitwise AND. Widths must match.
int gf2_inner_product(BinaryIndex u, BinaryIndex v);

/// Dense bit matrix over F2. Row r is packed into rows[r], bit c holding the
/// entry at column c (LSB-first, matching BinaryIndex).
struct GF2Matrix {
  int n_rows = 0;
  int n_cols = 0;
  std::vector<std::uint64_t> rows;

  static GF2Matrix zero(int n_rows, int n_cols);
  static GF2Matrix identity(int n);
  /// Build from packed column words: bit r of cols[c] is the entry (r, c).
  static GF2Matrix from_columns(int n_rows, const std::vector<std::uint64_t>& cols);

  bool get(int r, int c) const { return (rows[r] >> c) & 1u; }
  void set(int r, int c, bool v);
  BinaryIndex column(int c) const;
  /// Column c packed into a word (bit r = entry (r, c)).
  std::uint64_t column_word(int c) const;

  friend bool operator==(const GF2Matrix&, const GF2Matrix&) = default;
};

BinaryIndex mat_vec_mul(const GF2Matrix& m, BinaryIndex v);
GF2Matrix mat_mul(const GF2Matrix& a, const GF2Matrix& b);
GF2Matrix transpose(const GF2Matrix& m);

/// Gauss-Jordan elimination on the bit-packed rows; nullopt when singular.
std::optional<GF2Matrix> mat_inverse(const GF2Matrix& m);

/// Identity matrix with its columns rotated left by s, i.e. column j is the
/// standard basis vector e_{(j+s) mod n}. Invertible for every s.
GF2Matrix circular_shift_matrix(int n, int s);

/// Uniform draw from GL(n, F2) by rejection sampling of uniform bit matrices.
/// The acceptance rate stays above 0.288 for every n, so a draw costs a
/// handful of inversion attempts.
GF2Matrix random_invertible(int n, std::mt19937_64& rng);

/// Text format: first line "n_rows n_cols", then one 0/1 string per row,
/// LSB-first.
void write_matrix(std::ostream& os, const GF2Matrix& m);
GF2Matrix read_matrix(std::istream& is);

}  // namespace sfht
