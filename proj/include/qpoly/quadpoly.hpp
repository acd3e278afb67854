#pragma once

/**
 * @file quadpoly.hpp
 * @brief Integral quadratic polynomials: evaluation, completion of squares,
 *        affine equivalence and Minkowski reduction of ternary polynomials.
 *
 * A QuadPoly stores
 *
 *     f(x) = (x G x^T + L . x) / 2 + c
 *
 * with G a symmetric integer matrix (twice the coefficient matrix of the
 * quadratic part), L an integer vector (twice the linear coefficients) and c
 * an integer. This covers every integer-valued quadratic polynomial: those
 * are exactly the ones with 2 * coefficients integral and c integral, and
 * in particular the triangular forms a_i x_i (x_i + 1) / 2.
 *
 * With Q(x) = x G x^T / 2 and B its bilinear form, the completion vector v
 * satisfies L(x) = 2 B(v, x), i.e. G v^T = L^T / 2, and
 * f(x) = Q(x + v) - Q(v) + c.
 */

#include <cstddef>
#include <optional>
#include <vector>

#include "qpoly/arith.hpp"
#include "qpoly/lattice.hpp"
#include "qpoly/matrix.hpp"

namespace qpoly {

inline constexpr std::size_t kMaxVariables = 8;

class QuadPoly {
 public:
  QuadPoly() = default;
  /// Validates shape (1 <= n <= 8, G symmetric, sizes consistent).
  QuadPoly(IntMatrix gram2, IntVector linear2, Int constant);

  std::size_t n() const noexcept { return gram2_.rows(); }
  const IntMatrix& gram2() const noexcept { return gram2_; }
  const IntVector& linear2() const noexcept { return linear2_; }
  Int constant() const noexcept { return constant_; }

  /// Quadratic part positive definite.
  bool is_positive_definite() const { return qpoly::is_positive_definite(gram2_); }

  friend bool operator==(const QuadPoly&, const QuadPoly&) = default;

 private:
  IntMatrix gram2_;
  IntVector linear2_;
  Int constant_ = 0;
};

/// Same polynomial with a different constant term.
QuadPoly with_constant(const QuadPoly& f, Int c);

struct Completion {
  RatVector v;       // G v^T = L^T / 2
  Rational m_f;      // c - Q(v), the real minimum
  Int m_int = 0;     // minimum over integer vectors
  IntVector argmin;  // an integer vector attaining m_int
};

/// g(x) = f(x T + x0), x a row vector.
struct AffineTransform {
  IntMatrix t;
  IntVector x0;

  static AffineTransform identity(std::size_t n);
  friend bool operator==(const AffineTransform&, const AffineTransform&) = default;
};

Rational evaluate(const QuadPoly& f, const IntVector& x);

/// Exact f(x) when f is integer valued at x; throws InputError otherwise.
Int evaluate_int(const QuadPoly& f, const IntVector& x);

bool is_integer_valued(const QuadPoly& f);

/// Completion of squares plus the exact integer minimum (enumerates the
/// ellipsoid f(x) <= f(0)).
Completion complete(const QuadPoly& f, std::uint64_t budget = kDefaultBudget);

/// All integer x with f(x) <= bound, in enumeration order. f must be positive definite.
std::vector<IntVector> points_at_most(const QuadPoly& f, const Rational& bound, std::uint64_t budget = kDefaultBudget);

/// Some integer x with f(x) = a, if any.
std::optional<IntVector> find_representation(const QuadPoly& f, Int a, std::uint64_t budget = kDefaultBudget);

/// g(x) = f(x T + x0). Throws when |det T| != 1 or when the new constant
/// f(x0) is not an integer (possible only for non-integer-valued f).
QuadPoly apply_transform(const QuadPoly& f, const AffineTransform& t);

/// Composition: apply_transform(apply_transform(f, first), second)
/// == apply_transform(f, compose(first, second)).
AffineTransform compose(const AffineTransform& first, const AffineTransform& second);

struct ReducedPoly {
  QuadPoly g;
  AffineTransform transform;  // g = apply_transform(f, transform)
};

/// Equivalent ternary polynomial whose quadratic part is the canonical
/// Minkowski-reduced Gram matrix of its class and whose minimum is attained
/// at the zero vector.
ReducedPoly minkowski_reduce(const QuadPoly& f, std::uint64_t budget = kDefaultBudget);

/// Canonical Minkowski-reduced ternary Gram matrix and the row-basis change
/// realizing it (reduced = t * gram2 * t^T).
struct ReducedGram {
  IntMatrix gram2;
  IntMatrix t;
};
ReducedGram canonical_reduced_gram(const IntMatrix& gram2, std::uint64_t budget = kDefaultBudget);

bool is_reduced(const QuadPoly& f, std::uint64_t budget = kDefaultBudget);

/// A transform with g = apply_transform(f, transform), if one exists.
std::optional<AffineTransform> find_equivalence(const QuadPoly& f, const QuadPoly& g,
                                                std::uint64_t budget = kDefaultBudget);
bool equivalent(const QuadPoly& f, const QuadPoly& g, std::uint64_t budget = kDefaultBudget);

}  // namespace qpoly
