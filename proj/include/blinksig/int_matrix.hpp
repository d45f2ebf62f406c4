#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace blinksig {

/// Dense row-major integer matrix. Arithmetic is overflow-checked: products
/// and sums that leave int64 throw std::overflow_error instead of wrapping.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols);
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  std::int64_t& operator()(int r, int c) { return data_[index(r, c)]; }
  std::int64_t operator()(int r, int c) const { return data_[index(r, c)]; }

  IntMatrix transposed() const;
  IntMatrix operator-() const;
  IntMatrix operator+(const IntMatrix& other) const;
  IntMatrix operator-(const IntMatrix& other) const;
  IntMatrix operator*(const IntMatrix& other) const;

  bool operator==(const IntMatrix& other) const = default;

  std::vector<std::vector<std::int64_t>> to_rows() const;
  std::string to_string() const;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Exact determinant by fraction-free elimination in arbitrary precision.
/// Throws std::overflow_error if the value itself leaves int64.
std::int64_t determinant(const IntMatrix& m);

}  // namespace blinksig
