#pragma once

/**
 * @file search.hpp
 * @brief Search harnesses over triangular forms (escalator, regularity sweep)
 *        and two small constructive devices: a CRT-built integer missed by a
 *        family of binary polynomials, and a coprime-count lower bound for
 *        arithmetic progressions.
 */

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpoly/arith.hpp"
#include "qpoly/lattice.hpp"
#include "qpoly/matrix.hpp"
#include "qpoly/triangular.hpp"

namespace qpoly {

struct SearchConfig {
  Int coeff_bound = 30;
  Int disc_bound = 100;
  Int verify_N = 5000;
  std::uint64_t budget = kDefaultBudget;
  unsigned jobs = 1;
  /// Decide universality by the five targets 1, 2, 4, 5, 8 instead of a sieve.
  bool use_toe = true;

  /// Throws InputError unless every bound is positive and verify_N >= 8.
  void validate() const;
  friend bool operator==(const SearchConfig&, const SearchConfig&) = default;
};

/// One escalator node: forms starting with `prefix` must represent `truant`,
/// so the next coefficient lies in [prefix.back(), truant].
struct PruneStep {
  IntVector prefix;
  Int truant = 0;
  Int next_low = 0;
  Int next_high = 0;
  bool truncated = false;  // next_high was clipped by coeff_bound
  friend bool operator==(const PruneStep&, const PruneStep&) = default;
};

struct DescentCheck {
  Int q = 0;
  TriangularForm descended;
  RegularityVerdict verdict;
  bool survives() const { return verdict.status == RegularityStatus::regular_up_to_N; }
  friend bool operator==(const DescentCheck&, const DescentCheck&) = default;
};

struct Candidate {
  TriangularForm form;
  bool accepted = false;
  /// Sieve cross-check at verify_N (universal search only).
  std::optional<bool> universal_up_to;
  std::optional<RegularityVerdict> regularity;
  std::vector<DescentCheck> descents;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct SearchReport {
  std::string kind;  // "universal" or "regular"
  SearchConfig config;
  std::vector<Candidate> candidates;  // accepted forms, sorted by (discriminant, coefficients)
  std::vector<PruneStep> pruning;
  Int examined = 0;
  bool exhaustive = true;
  std::string coverage;
  double seconds = 0;
  friend bool operator==(const SearchReport& a, const SearchReport& b) {
    return a.kind == b.kind && a.config == b.config && a.candidates == b.candidates && a.pruning == b.pruning &&
           a.examined == b.examined && a.exhaustive == b.exhaustive && a.coverage == b.coverage;
  }
};

/// Escalator over primitive ternary triangular forms; accepted forms are the universal ones.
SearchReport escalate_universal_ternary(const SearchConfig& cfg);

/// Every primitive ternary form with discriminant <= disc_bound, swept for
/// regularity up to verify_N; survivors get their descended forms checked too.
SearchReport enumerate_regular_ternary(const SearchConfig& cfg);

/// f(x) = q(x) + 2 b(w, x) + c for the binary form q.
struct BinaryOffset {
  RatVector w;
  Int c = 0;
};

struct UnrepresentedResult {
  Int N = 0;
  IntVector primes;  // p_1 < ... < p_t
  Wide modulus = 1;  // product of p_i^2
};

/// Smallest N >= k with N = p_i + c_i - q(w_i) mod p_i^2 for the smallest odd
/// primes p_i at which -det(q) is a nonresidue. The result is checked by
/// enumeration before it is returned. gram2 is the doubled 2x2 Gram matrix.
UnrepresentedResult find_unrepresented(const IntMatrix& gram2, const std::vector<BinaryOffset>& polys, Int k,
                                       std::uint64_t budget = kDefaultBudget);

struct CoprimeCount {
  Int count = 0;
  Rational bound;
};

/// Members of {d, a + d, ..., (n - 1) a + d} prime to every p in T, and the
/// lower bound n (p - 1) / (p + t - 1) - 2^t + 1 with p = min T, t = |T|.
CoprimeCount kko_lower_bound(const IntVector& T, Int a, Int d, Int n);

}  // namespace qpoly
