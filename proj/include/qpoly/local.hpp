#pragma once

/**
 * @file local.hpp
 * @brief p-adic solubility of f(x) = a, with closed-form shortcuts for
 *        triangular forms.
 *
 * Every decision is certified. "Soluble" comes with a residue vector x0 and
 * exponent e such that the doubled equation F(x) = 2 f(x) - 2a satisfies
 * F(x0) = 0 mod p^e and e > 2 min_i v_p(dF/dx_i (x0)), which by Hensel's
 * lemma lifts to a root in Z_p^n (closed-form verdicts carry no witness).
 * "Insoluble" means no residue class mod p^e solves F = 0 at all.
 */

#include <optional>
#include <string>
#include <vector>

#include "qpoly/arith.hpp"
#include "qpoly/lattice.hpp"
#include "qpoly/quadpoly.hpp"

namespace qpoly {

class TriangularForm;

enum class LocalMethod { closed_form_2adic, closed_form_odd_unit, hensel_lift, exhausted };

std::string to_string(LocalMethod m);
LocalMethod local_method_from_string(const std::string& s);

struct LocalWitness {
  IntVector residue;  // entries in [0, p^exponent)
  int exponent = 0;
  friend bool operator==(const LocalWitness&, const LocalWitness&) = default;
};

struct LocalVerdict {
  Int p = 0;
  bool soluble = false;
  std::optional<LocalWitness> witness;
  LocalMethod method = LocalMethod::exhausted;
  int depth = 0;  // largest exponent examined by the lifting search (0 for closed forms)
  friend bool operator==(const LocalVerdict&, const LocalVerdict&) = default;
};

struct LocalOptions {
  /// Largest exponent the lifting search may reach; 0 selects the automatic cutoff.
  int max_exp = 0;
  std::uint64_t budget = kDefaultBudget;
};

/// Legendre symbol (a|p); p must be an odd prime.
int legendre_symbol(Int a, Int p);

/// Some residue x0 (entries in [0, p^e)) with f(x0) = a mod p^e, by
/// exhaustive search. Throws BudgetExceeded when p^(e n) exceeds the budget.
std::optional<IntVector> represents_mod(const QuadPoly& f, Int a, Int p, int e, std::uint64_t budget = kDefaultBudget);

/// True when (x0, e) is a valid lifting certificate for f(x) = a over Z_p.
bool verify_witness(const QuadPoly& f, Int a, Int p, const LocalWitness& w);

/// Spec-style valuation cutoff v_p(det G) + v_p(a - c) + 2 v_p(2) + 3.
int valuation_cutoff(const QuadPoly& f, Int a, Int p);

/// Decides f(x) = a over Z_p by lifting residue solutions mod p, p^2, ...
/// Requires f integer valued with positive definite quadratic part.
LocalVerdict represents_locally(const QuadPoly& f, Int a, Int p, const LocalOptions& opts = {});

/// f(x) = a over the reals: a >= the real minimum of f.
bool represents_over_reals(const QuadPoly& f, Int a);

struct TriangularLocalOptions {
  /// Allow the closed-form shortcuts; when false every case goes through
  /// the general lifting decider.
  bool closed_forms = true;
  LocalOptions local;
};

/// Local solubility of Delta(a_1..a_n) = m over Z_p.
LocalVerdict triangular_locally_represents(const TriangularForm& d, Int m, Int p,
                                           const TriangularLocalOptions& opts = {});

/// Exact decision of sum a_i y_i^2 = target over Z_p (p odd, target != 0),
/// returning y mod p^e when soluble, together with e.
struct DiagonalSolution {
  IntVector y;
  int exponent = 0;
};
std::optional<DiagonalSolution> solve_diagonal_odd(const IntVector& coeffs, Wide target, Int p);

/// Primes dividing 2 d(Delta); outside this set a primitive form with at
/// least three coefficients is soluble for every m.
std::vector<Int> local_obstruction_primes(const TriangularForm& d);

}  // namespace qpoly
