#include "qpoly/matrix.hpp"

#include <utility>

namespace qpoly {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& d) {
  IntMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::col(std::size_t j) const {
  IntVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntMatrix transpose(const IntMatrix& m) {
  IntMatrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j);
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("matrix dimension mismatch in product");
  IntMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Wide s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s = checked::add(s, checked::mul(a(i, k), b(k, j)));
      r(i, j) = checked::narrow(s);
    }
  }
  return r;
}

bool is_symmetric(const IntMatrix& m) {
  if (!m.is_square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

namespace {

// Bareiss elimination on a copy; returns the sequence of pivots so that the
// k-th leading minor can be read off when no row swaps were needed.
Wide bareiss_det(std::vector<std::vector<Wide>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  Wide sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Wide num = checked::sub(checked::mul(a[i][j], a[k][k]), checked::mul(a[i][k], a[k][j]));
        a[i][j] = num / prev;
      }
    }
    prev = a[k][k];
  }
  return checked::mul(sign, a[n - 1][n - 1]);
}

std::vector<std::vector<Wide>> to_wide(const IntMatrix& m, std::size_t size) {
  std::vector<std::vector<Wide>> a(size, std::vector<Wide>(size));
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) a[i][j] = m(i, j);
  return a;
}

}  // namespace

Wide determinant(const IntMatrix& m) {
  if (!m.is_square()) throw InputError("determinant of a non-square matrix");
  return bareiss_det(to_wide(m, m.rows()));
}

std::vector<Wide> leading_minors(const IntMatrix& m) {
  if (!m.is_square()) throw InputError("leading minors of a non-square matrix");
  std::vector<Wide> out;
  for (std::size_t k = 1; k <= m.rows(); ++k) out.push_back(bareiss_det(to_wide(m, k)));
  return out;
}

bool is_positive_definite(const IntMatrix& m) {
  if (!is_symmetric(m)) return false;
  for (Wide d : leading_minors(m))
    if (d <= 0) return false;
  return true;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  const std::size_t n = m.rows();
  Wide det = determinant(m);
  if (det != 1 && det != -1) throw InputError("matrix is not unimodular");
  IntMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    RatVector e(n, Rational(0));
    e[j] = Rational(1);
    RatVector col = solve(m, e);
    for (std::size_t i = 0; i < n; ++i) {
      if (!col[i].is_integer()) throw InputError("unimodular inverse is not integral");
      inv(i, j) = checked::narrow(col[i].num());
    }
  }
  return inv;
}

RatVector solve(const IntMatrix& m, const RatVector& rhs) {
  const std::size_t n = m.rows();
  if (!m.is_square() || rhs.size() != n) throw InputError("solve: dimension mismatch");
  std::vector<RatVector> a(n, RatVector(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m(i, j));
    a[i][n] = rhs[i];
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == Rational(0)) ++piv;
    if (piv == n) throw InputError("solve: singular matrix");
    std::swap(a[k], a[piv]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == Rational(0)) continue;
      Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j <= n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  RatVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

Wide quadratic_value(const IntMatrix& m, const IntVector& x) { return bilinear_value(m, x, x); }

Wide bilinear_value(const IntMatrix& m, const IntVector& x, const IntVector& y) {
  if (x.size() != m.rows() || y.size() != m.cols()) throw InputError("bilinear form: dimension mismatch");
  Wide s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    Wide row = 0;
    for (std::size_t j = 0; j < y.size(); ++j) row = checked::add(row, checked::mul(m(i, j), y[j]));
    s = checked::add(s, checked::mul(x[i], row));
  }
  return s;
}

Rational quadratic_value(const IntMatrix& m, const RatVector& x) { return bilinear_value(m, x, x); }

Rational bilinear_value(const IntMatrix& m, const RatVector& x, const RatVector& y) {
  if (x.size() != m.rows() || y.size() != m.cols()) throw InputError("bilinear form: dimension mismatch");
  Rational s(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == Rational(0)) continue;
    Rational row(0);
    for (std::size_t j = 0; j < y.size(); ++j) row += Rational(m(i, j)) * y[j];
    s += x[i] * row;
  }
  return s;
}

}  // namespace qpoly
