#pragma once

/**
 * @file coset.hpp
 * @brief Positive definite integral lattices and their cosets M + v.
 *
 * Gram matrices are stored doubled (gram2 = 2 B(e_i, e_j)); the diagonal
 * is 2 Q(e_i). A coset's shift lives in QM, expressed in M's basis.
 */

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "qpoly/arith.hpp"
#include "qpoly/lattice.hpp"
#include "qpoly/matrix.hpp"

namespace qpoly {

inline constexpr Int kDefaultShiftDenominator = 4;
inline constexpr std::size_t kMaxIsometryRank = 4;

class IntegralLattice {
 public:
  IntegralLattice() = default;
  /// Requires a symmetric positive definite matrix of rank 1..8.
  explicit IntegralLattice(IntMatrix gram2);

  std::size_t rank() const noexcept { return gram2_.rows(); }
  const IntMatrix& gram2() const noexcept { return gram2_; }
  /// Discriminant of M: det of the Gram matrix of B, i.e. det(gram2) / 2^rank.
  Rational discriminant() const;

  friend bool operator==(const IntegralLattice&, const IntegralLattice&) = default;

 private:
  IntMatrix gram2_;
};

class Coset {
 public:
  Coset() = default;
  /// Every shift denominator must divide max_denominator.
  Coset(IntegralLattice lattice, RatVector shift, Int max_denominator = kDefaultShiftDenominator);

  const IntegralLattice& lattice() const noexcept { return lattice_; }
  const RatVector& shift() const noexcept { return shift_; }
  std::size_t rank() const noexcept { return lattice_.rank(); }

  /// Q(x + v) is an integer for every x in M.
  bool is_integral() const;

  /// Q(x + v) for a lattice coordinate vector x.
  Rational value(const IntVector& x) const;

 private:
  IntegralLattice lattice_;
  RatVector shift_;
};

/// Some x in Z^n with Q(x + v) = a, if any (a = 0 allows the zero vector
/// when v lies in M).
std::optional<IntVector> coset_represents(const Coset& cs, Int a, std::uint64_t budget = kDefaultBudget);

/// [M + Zv : M], the order of v modulo M.
Int coset_index(const Coset& cs);

/// The lattice M + Zv, from a Hermite normal form basis of the generators.
IntegralLattice coset_lattice(const Coset& cs);

/// Basis (rows, in M coordinates) of M + Zv used by coset_lattice.
std::vector<RatVector> coset_lattice_basis(const Coset& cs);

/// U with U^T * gram2(l2) * U = gram2(l1), |det U| = 1, if the lattices are isometric.
std::optional<IntMatrix> isometric(const IntegralLattice& l1, const IntegralLattice& l2,
                                   std::uint64_t budget = kDefaultBudget);

/// All isometries l1 -> l2 (exhaustive).
std::vector<IntMatrix> all_isometries(const IntegralLattice& l1, const IntegralLattice& l2,
                                      std::uint64_t budget = kDefaultBudget);

/// A lattice isometry sigma with sigma(v1) = v2 mod N, if one exists.
std::optional<IntMatrix> coset_isometric(const Coset& c1, const Coset& c2, std::uint64_t budget = kDefaultBudget);

struct LatticeVector {
  IntVector x;
  Rational value;  // Q(x)
  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;
};

/// Every x (the zero vector included) with Q(x) <= bound, sorted by value.
std::vector<LatticeVector> shortest_vectors(const IntegralLattice& l, const Rational& bound,
                                            std::uint64_t budget = kDefaultBudget);

}  // namespace qpoly
