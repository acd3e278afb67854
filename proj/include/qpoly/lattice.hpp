#pragma once

/**
 * @file lattice.hpp
 * @brief Exact lattice-point machinery shared by the polynomial and coset
 *        layers: ellipsoid enumeration, greedy (Minkowski) reduction for
 *        small rank, short-vector lists and isometry search.
 *
 * All Gram matrices here are "doubled": gram2(i,j) = 2 B(e_i, e_j), so the
 * quadratic map is Q(y) = y * gram2 * y^T / 2.
 */

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "qpoly/arith.hpp"
#include "qpoly/matrix.hpp"

namespace qpoly {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// Step counter for enumerations; throws BudgetExceeded past its limit.
class Budget {
 public:
  explicit Budget(std::uint64_t limit = kDefaultBudget) : limit_(limit) {}

  void spend(std::uint64_t steps = 1) {
    used_ += steps;
    if (used_ > limit_) throw BudgetExceeded("enumeration budget of " + std::to_string(limit_) + " steps exceeded");
  }
  std::uint64_t used() const noexcept { return used_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

/// Enumerates the integer points x with Q(x + center) <= bound for a positive
/// definite doubled Gram matrix. Pruning uses an exact rational LDL^T
/// decomposition, so no point is ever missed or invented.
class EllipsoidEnumerator {
 public:
  explicit EllipsoidEnumerator(const IntMatrix& gram2);

  std::size_t dim() const noexcept { return d_.size(); }

  /// Calls visit(x, Q(x + center)) in a fixed deterministic order. The visitor
  /// returns false to stop early; the function then returns false as well.
  bool for_each(const RatVector& center, const Rational& bound,
                const std::function<bool(const IntVector&, const Rational&)>& visit, Budget& budget) const;

 private:
  bool descend(std::size_t level, const RatVector& center, const Rational& rem, IntVector& x, RatVector& y,
               const std::function<bool(const IntVector&, const Rational&)>& visit, const Rational& total,
               Budget& budget) const;

  // y G y^T = sum_i d_i (y_i + sum_{j>i} l_[j][i] y_j)^2
  std::vector<RatVector> l_;
  RatVector d_;
};

/// Row-basis transform T (|det T| = 1) such that T * gram2 * T^T is greedy
/// reduced: sorted diagonal, and every basis vector is a closest-vector
/// reduction against the span of the earlier ones. For rank <= 4 this is
/// Minkowski reduction. Basis vectors only change on strict norm decrease.
IntMatrix greedy_reduce(const IntMatrix& gram2, Budget& budget);

/// Explicit Minkowski conditions for rank <= 3.
bool is_minkowski_reduced(const IntMatrix& gram2);

struct ShortVector {
  IntVector x;
  Wide value2;  // x * gram2 * x^T = 2 Q(x)
};

/// Every x with 2 Q(x) <= bound2, sorted by value then lexicographically.
std::vector<ShortVector> short_vectors(const IntMatrix& gram2, Wide bound2, Budget& budget);

/// Calls visit(U) for every integer U with U^T * to * U = from and
/// |det U| = 1 (columns of U are the images of from's basis vectors).
/// Stops early when visit returns false.
void for_each_isometry(const IntMatrix& from, const IntMatrix& to, const std::function<bool(const IntMatrix&)>& visit,
                       Budget& budget);

}  // namespace qpoly
