#include "sfht/gf2.hpp"

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sfht {

namespace {

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

std::uint64_t width_mask(int n) { return (n >= 64) ? ~0ull : ((1ull << n) - 1); }

}  // namespace

int gf2_inner_product(BinaryIndex u, BinaryIndex v) {
  require(u.width == v.width, "gf2_inner_product: width mismatch");
  return static_cast<int>(std::popcount(u.word & v.word) & 1u);
}

GF2Matrix GF2Matrix::zero(int n_rows, int n_cols) {
  require(n_rows >= 0 && n_cols >= 0 && n_cols <= kMaxBits, "GF2Matrix: bad dimensions");
  GF2Matrix m;
  m.n_rows = n_rows;
  m.n_cols = n_cols;
  m.rows.assign(static_cast<std::size_t>(n_rows), 0);
  return m;
}

GF2Matrix GF2Matrix::identity(int n) {
  GF2Matrix m = zero(n, n);
  for (int r = 0; r < n; ++r) m.rows[r] = 1ull << r;
  return m;
}

GF2Matrix GF2Matrix::from_columns(int n_rows, const std::vector<std::uint64_t>& cols) {
  GF2Matrix m = zero(n_rows, static_cast<int>(cols.size()));
  for (int c = 0; c < m.n_cols; ++c)
    for (int r = 0; r < n_rows; ++r)
      if ((cols[c] >> r) & 1u) m.rows[r] |= 1ull << c;
  return m;
}

void GF2Matrix::set(int r, int c, bool v) {
  if (v)
    rows[r] |= 1ull << c;
  else
    rows[r] &= ~(1ull << c);
}

BinaryIndex GF2Matrix::column(int c) const { return BinaryIndex(column_word(c), n_rows); }

std::uint64_t GF2Matrix::column_word(int c) const {
  std::uint64_t w = 0;
  for (int r = 0; r < n_rows; ++r) w |= ((rows[r] >> c) & 1u) << r;
  return w;
}

BinaryIndex mat_vec_mul(const GF2Matrix& m, BinaryIndex v) {
  require(m.n_cols == v.width, "mat_vec_mul: dimension mismatch");
  std::uint64_t out = 0;
  for (int r = 0; r < m.n_rows; ++r) out |= static_cast<std::uint64_t>(std::popcount(m.rows[r] & v.word) & 1u) << r;
  return BinaryIndex(out, m.n_rows);
}

GF2Matrix mat_mul(const GF2Matrix& a, const GF2Matrix& b) {
  require(a.n_cols == b.n_rows, "mat_mul: dimension mismatch");
  GF2Matrix out = GF2Matrix::zero(a.n_rows, b.n_cols);
  for (int r = 0; r < a.n_rows; ++r) {
    std::uint64_t acc = 0;
    std::uint64_t row = a.rows[r];
    while (row) {
      int c = std::countr_zero(row);
      acc ^= b.rows[c];
      row &= row - 1;
    }
    out.rows[r] = acc;
  }
  return out;
}

GF2Matrix transpose(const GF2Matrix& m) {
  GF2Matrix out = GF2Matrix::zero(m.n_cols, m.n_rows);
  for (int r = 0; r < m.n_rows; ++r) {
    std::uint64_t row = m.rows[r];
    while (row) {
      int c = std::countr_zero(row);
      out.rows[c] |= 1ull << r;
      row &= row - 1;
    }
  }
  return out;
}

std::optional<GF2Matrix> mat_inverse(const GF2Matrix& m) {
  require(m.n_rows == m.n_cols, "mat_inverse: matrix not square");
  const int n = m.n_rows;
  std::vector<std::uint64_t> work = m.rows;
  GF2Matrix inv = GF2Matrix::identity(n);
  for (int c = 0; c < n; ++c) {
    int pivot = -1;
    for (int r = c; r < n; ++r) {
      if ((work[r] >> c) & 1u) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return std::nullopt;
    std::swap(work[c], work[pivot]);
    std::swap(inv.rows[c], inv.rows[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r != c && ((work[r] >> c) & 1u)) {
        work[r] ^= work[c];
        inv.rows[r] ^= inv.rows[c];
      }
    }
  }
  return inv;
}

GF2Matrix circular_shift_matrix(int n, int s) {
  require(n >= 1 && n <= kMaxBits, "circular_shift_matrix: bad width");
  require(s >= 0 && s < n, "circular_shift_matrix: shift out of range");
  GF2Matrix m = GF2Matrix::zero(n, n);
  // Column j = e_{(j+s) mod n}, so row r carries a one at column (r-s) mod n.
  for (int r = 0; r < n; ++r) m.rows[r] = 1ull << ((r - s + n) % n);
  return m;
}

GF2Matrix random_invertible(int n, std::mt19937_64& rng) {
  require(n >= 1 && n <= kMaxBits, "random_invertible: bad width");
  const std::uint64_t mask = width_mask(n);
  GF2Matrix m = GF2Matrix::zero(n, n);
  for (;;) {
    for (int r = 0; r < n; ++r) m.rows[r] = rng() & mask;
    if (mat_inverse(m)) return m;
  }
}

void write_matrix(std::ostream& os, const GF2Matrix& m) {
  os << m.n_rows << ' ' << m.n_cols << '\n';
  for (int r = 0; r < m.n_rows; ++r) {
    std::string line(static_cast<std::size_t>(m.n_cols), '0');
    for (int c = 0; c < m.n_cols; ++c)
      if (m.get(r, c)) line[static_cast<std::size_t>(c)] = '1';
    os << line << '\n';
  }
}

GF2Matrix read_matrix(std::istream& is) {
  int n_rows = 0;
  int n_cols = 0;
  if (!(is >> n_rows >> n_cols)) throw std::runtime_error("read_matrix: missing header");
  if (n_rows < 0 || n_cols < 0 || n_cols > kMaxBits) throw std::runtime_error("read_matrix: bad dimensions");
  GF2Matrix m = GF2Matrix::zero(n_rows, n_cols);
  for (int r = 0; r < n_rows; ++r) {
    std::string line;
    if (!(is >> line) || line.size() != static_cast<std::size_t>(n_cols))
      throw std::runtime_error("read_matrix: bad row");
    for (int c = 0; c < n_cols; ++c) {
      if (line[static_cast<std::size_t>(c)] == '1')
        m.rows[r] |= 1ull << c;
      else if (line[static_cast<std::size_t>(c)] != '0')
        throw std::runtime_error("read_matrix: row must be a 0/1 string");
    }
  }
  return m;
}

}  // namespace sfht
