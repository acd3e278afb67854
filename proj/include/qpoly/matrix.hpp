#pragma once

/**
 * @file matrix.hpp
 * @brief Small dense integer matrices (n <= 8) with exact, checked arithmetic.
 */

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "qpoly/arith.hpp"

namespace qpoly {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const IntVector& d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector col(std::size_t j) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

IntMatrix transpose(const IntMatrix& m);
IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

bool is_symmetric(const IntMatrix& m);

/// Determinant by fraction-free (Bareiss) elimination.
Wide determinant(const IntMatrix& m);

/// Leading principal minors, top-left 1x1 first.
std::vector<Wide> leading_minors(const IntMatrix& m);
bool is_positive_definite(const IntMatrix& m);

/// Inverse of a matrix with determinant +-1.
IntMatrix unimodular_inverse(const IntMatrix& m);

/// Solve m * x = rhs exactly over the rationals; m must be nonsingular.
RatVector solve(const IntMatrix& m, const RatVector& rhs);

/// x * m * x^T for a row vector x, in 128 bits.
Wide quadratic_value(const IntMatrix& m, const IntVector& x);
/// x * m * y^T.
Wide bilinear_value(const IntMatrix& m, const IntVector& x, const IntVector& y);

Rational quadratic_value(const IntMatrix& m, const RatVector& x);
Rational bilinear_value(const IntMatrix& m, const RatVector& x, const RatVector& y);

}  // namespace qpoly
