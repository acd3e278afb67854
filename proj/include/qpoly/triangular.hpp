#pragma once

/**
 * @file triangular.hpp
 * @brief Triangular forms Delta(a_1, ..., a_n) = sum a_i x_i (x_i + 1) / 2:
 *        exact representation, sieves, universality, regularity sweeps,
 *        descent and the correspondence with the coset <4a_i> + (1/2, ..., 1/2).
 */

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "qpoly/arith.hpp"
#include "qpoly/lattice.hpp"
#include "qpoly/local.hpp"
#include "qpoly/quadpoly.hpp"

namespace qpoly {

class Coset;

class TriangularForm {
 public:
  TriangularForm() = default;
  /// Coefficients must be positive; they are stored sorted ascending.
  explicit TriangularForm(IntVector coeffs);

  const IntVector& coeffs() const noexcept { return coeffs_; }
  std::size_t n() const noexcept { return coeffs_.size(); }
  bool is_primitive() const;
  /// d(Delta), the product of the coefficients.
  Wide discriminant() const;
  /// a_1 + ... + a_n.
  Wide coefficient_sum() const;

  /// G = diag(a), L = a, c = 0.
  QuadPoly to_quadpoly() const;

  friend bool operator==(const TriangularForm&, const TriangularForm&) = default;
  friend auto operator<=>(const TriangularForm&, const TriangularForm&) = default;

 private:
  IntVector coeffs_;
};

/// Fixed-size bitset over [0, size) with word-level shifted OR.
class Bitset {
 public:
  explicit Bitset(std::size_t size = 0) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const noexcept { return size_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  /// this |= (src << shift), truncated to size().
  void or_shifted(const Bitset& src, std::size_t shift);
  std::size_t count() const;
  std::optional<std::size_t> first_unset() const;
  /// this restricted to [0, new_size).
  Bitset prefix(std::size_t new_size) const;

  friend bool operator==(const Bitset&, const Bitset&) = default;

 private:
  std::size_t size_;
  std::vector<std::uint64_t> words_;
};

inline constexpr Int kDefaultSieveLimit = 10'000'000;

/// Nonnegative x with sum a_i x_i (x_i + 1) / 2 = m, if any. Exact.
std::optional<IntVector> represents(const TriangularForm& d, Int m);

/// Membership of every m in [0, N]. Throws BudgetExceeded when N > limit.
Bitset represented_set(const TriangularForm& d, Int N, Int limit = kDefaultSieveLimit);

/// Smallest nonnegative integer not represented, searching up to `limit`.
std::optional<Int> truant(const TriangularForm& d, Int limit = 1'000'000);

inline constexpr std::array<Int, 5> kEightTargets = {1, 2, 4, 5, 8};

/// Represents 1, 2, 4, 5 and 8; equivalent to universality for triangular forms.
bool theorem_of_eight(const TriangularForm& d);

bool is_universal_up_to(const TriangularForm& d, Int N, Int limit = kDefaultSieveLimit);

enum class RegularityStatus { regular_up_to_N, counterexample };

/// Every odd vector y with a_i y_i^2 <= target (|y_i| <= max_odd[i]) was
/// checked against sum a_i y_i^2 = target = 8m + sum a_i.
struct GlobalSearchCertificate {
  Wide target = 0;
  IntVector max_odd;
  friend bool operator==(const GlobalSearchCertificate&, const GlobalSearchCertificate&) = default;
};

struct RegularityCounterexample {
  Int m = 0;
  std::vector<LocalVerdict> local;  // one verdict per checked prime, all soluble
  GlobalSearchCertificate search;
  friend bool operator==(const RegularityCounterexample&, const RegularityCounterexample&) = default;
};

struct RegularityVerdict {
  RegularityStatus status = RegularityStatus::regular_up_to_N;
  Int N = 0;
  std::optional<RegularityCounterexample> witness;
  friend bool operator==(const RegularityVerdict&, const RegularityVerdict&) = default;
};

/// Primes at which Delta = m must be checked locally: the obstruction
/// primes, plus (for n <= 2) the odd primes dividing 8m + sum a_i. For n = 1
/// a nonsquare ratio (8m + a) / a also needs one extra prime, added by
/// locally_represented_everywhere.
std::vector<Int> primes_to_check(const TriangularForm& d, Int m);

/// Local verdicts of Delta = m at every prime that matters; the bool is
/// true when all are soluble (the real place is always soluble for m >= 0).
std::pair<bool, std::vector<LocalVerdict>> locally_represented_everywhere(const TriangularForm& d, Int m,
                                                                          const TriangularLocalOptions& opts = {});

/// Sweeps m = 1..N for a locally represented but globally missed integer.
RegularityVerdict is_regular_up_to(const TriangularForm& d, Int N, Int limit = kDefaultSieveLimit,
                                   const TriangularLocalOptions& opts = {});

/// Descending step at the odd prime q for Delta(a, q^r b, q^s c), q not
/// dividing abc, 1 <= r <= s: returns Delta(q^(2-t) a, q^(r-t) b, q^(s-t) c)
/// with t = min(2, r).
TriangularForm descend(const TriangularForm& d, Int q);

/// Odd primes q for which d has the shape descend() accepts.
std::vector<Int> descent_primes(const TriangularForm& d);

/// At most one coefficient divisible by the odd prime p.
bool behaves_well(const TriangularForm& d, Int p);

/// The coset <4 a_1, ..., 4 a_n> + (1/2, ..., 1/2); Delta represents m iff
/// the coset represents 8m + sum a_i.
Coset to_coset(const TriangularForm& d);

}  // namespace qpoly
