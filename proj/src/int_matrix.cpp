#include "blinksig/int_matrix.hpp"

#include <gmpxx.h>

#include <sstream>
#include <utility>

namespace blinksig {
namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("integer matrix entry overflow");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("integer matrix entry overflow");
  return out;
}

}  // namespace

IntMatrix::IntMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0);
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  data_.reserve(static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_));
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != cols_) throw std::invalid_argument("ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix out(n, n);
  for (int i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows.front().size());
  IntMatrix out(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged matrix rows");
    for (int j = 0; j < c; ++j) out(i, j) = rows[i][j];
  }
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

IntMatrix IntMatrix::operator-() const {
  IntMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = checked_mul(data_[i], -1);
  return out;
}

IntMatrix IntMatrix::operator+(const IntMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("shape mismatch in sum");
  IntMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = checked_add(data_[i], other.data_[i]);
  return out;
}

IntMatrix IntMatrix::operator-(const IntMatrix& other) const { return *this + (-other); }

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("shape mismatch in product");
  IntMatrix out(rows_, other.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const std::int64_t a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < other.cols_; ++j)
        out(i, j) = checked_add(out(i, j), checked_mul(a, other(k, j)));
    }
  return out;
}

std::vector<std::vector<std::int64_t>> IntMatrix::to_rows() const {
  std::vector<std::vector<std::int64_t>> out(rows_, std::vector<std::int64_t>(cols_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
    os << ']';
  }
  os << ']';
  return os.str();
}

std::int64_t determinant(const IntMatrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
  const int n = m.rows();
  if (n == 0) return 1;
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = static_cast<long>(m(i, j));
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        mpz_class v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = v;
      }
    prev = a[k][k];
  }
  mpz_class det = a[n - 1][n - 1] * sign;
  if (!det.fits_slong_p()) throw std::overflow_error("determinant exceeds int64");
  return det.get_si();
}

}  // namespace blinksig
