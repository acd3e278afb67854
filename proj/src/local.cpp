#include "qpoly/local.hpp"

#include <algorithm>
#include <climits>

#include "qpoly/triangular.hpp"

namespace qpoly {

std::string to_string(LocalMethod m) {
  switch (m) {
    case LocalMethod::closed_form_2adic: return "closed_form_2adic";
    case LocalMethod::closed_form_odd_unit: return "closed_form_odd_unit";
    case LocalMethod::hensel_lift: return "hensel_lift";
    case LocalMethod::exhausted: return "exhausted";
  }
  return "exhausted";
}

LocalMethod local_method_from_string(const std::string& s) {
  for (LocalMethod m : {LocalMethod::closed_form_2adic, LocalMethod::closed_form_odd_unit, LocalMethod::hensel_lift,
                        LocalMethod::exhausted}) {
    if (to_string(m) == s) return m;
  }
  throw InputError("unknown local method '" + s + "'");
}

int legendre_symbol(Int a, Int p) { return legendre(a, p); }

namespace {

void require_prime(Int p) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not a prime");
}

Wide power_or_throw(Int p, int e) {
  Wide m = 1;
  for (int i = 0; i < e; ++i) {
    m = checked::mul(m, p);
    if (m > (Wide(1) << 62)) throw OverflowError("modulus p^e exceeds 2^62");
  }
  return m;
}

// F(x) = x G x^T + L.x + k0 reduced mod `modulus` (entries of x reduced too).
Wide doubled_value_mod(const QuadPoly& f, Wide k0, const IntVector& x, Wide modulus) {
  const std::size_t n = f.n();
  Wide acc = mod(k0, modulus);
  for (std::size_t i = 0; i < n; ++i) {
    Wide xi = mod(x[i], modulus);
    Wide row = mod(f.linear2()[i], modulus);
    for (std::size_t j = 0; j < n; ++j) row = (row + mod(f.gram2()(i, j), modulus) * mod(x[j], modulus) % modulus) % modulus;
    // row = (G x)_i + L_i; x.G.x + L.x = sum_i x_i ((G x)_i + L_i)
    acc = (acc + xi * row) % modulus;
  }
  return acc;
}

// Minimal valuation of the gradient 2 G x + L, computed mod p^e; e means
// "at least e".
int gradient_valuation(const QuadPoly& f, const IntVector& x, Int p, int e, Wide modulus) {
  const std::size_t n = f.n();
  int best = e;
  for (std::size_t i = 0; i < n; ++i) {
    Wide g = mod(f.linear2()[i], modulus);
    for (std::size_t j = 0; j < n; ++j) g = (g + mod(2 * Wide(f.gram2()(i, j)), modulus) * mod(x[j], modulus)) % modulus;
    if (g != 0) best = std::min(best, valuation(g, p));
  }
  return best;
}

Wide doubled_value_exact(const QuadPoly& f, Wide k0, const IntVector& x) {
  Wide v = checked::add(quadratic_value(f.gram2(), x), k0);
  for (std::size_t i = 0; i < x.size(); ++i) v = checked::add(v, checked::mul(f.linear2()[i], x[i]));
  return v;
}

bool is_exact_root(const QuadPoly& f, Wide k0, const IntVector& x) {
  try {
    return doubled_value_exact(f, k0, x) == 0;
  } catch (const OverflowError&) {
    return false;
  }
}

Wide doubled_constant(const QuadPoly& f, Int a) {
  return checked::sub(checked::mul(2, f.constant()), checked::mul(2, a));
}

// Visits every vector in [0, base)^n.
template <class Visit>
bool for_each_residue(std::size_t n, Int base, Budget& budget, Visit&& visit) {
  IntVector x(n, 0);
  while (true) {
    budget.spend();
    if (!visit(x)) return false;
    std::size_t i = 0;
    while (i < n) {
      if (++x[i] < base) break;
      x[i] = 0;
      ++i;
    }
    if (i == n) return true;
  }
}

}  // namespace

std::optional<IntVector> represents_mod(const QuadPoly& f, Int a, Int p, int e, std::uint64_t budget) {
  require_prime(p);
  if (e < 1) throw InputError("exponent must be positive");
  const Wide modulus = power_or_throw(p, e);
  Wide space = 1;
  for (std::size_t i = 0; i < f.n(); ++i) {
    space = checked::mul(space, modulus);
    if (space > Wide(budget)) throw BudgetExceeded("p^(e n) exceeds the enumeration budget");
  }
  // f(x) = a mod p^e  <=>  2 f(x) - 2a = 0 mod p^e * 2^[p == 2].
  const Wide test_mod = p == 2 ? checked::mul(modulus, 2) : modulus;
  const Wide k0 = doubled_constant(f, a);
  Budget b(budget);
  std::optional<IntVector> found;
  for_each_residue(f.n(), static_cast<Int>(modulus), b, [&](const IntVector& x) {
    if (doubled_value_mod(f, k0, x, test_mod) == 0) {
      found = x;
      return false;
    }
    return true;
  });
  return found;
}

bool verify_witness(const QuadPoly& f, Int a, Int p, const LocalWitness& w) {
  if (w.residue.size() != f.n() || w.exponent < 1) return false;
  const Wide k0 = doubled_constant(f, a);
  if (is_exact_root(f, k0, w.residue)) return true;
  const Wide modulus = power_or_throw(p, w.exponent);
  if (doubled_value_mod(f, k0, w.residue, modulus) != 0) return false;
  int k = gradient_valuation(f, w.residue, p, w.exponent, modulus);
  return 2 * k < w.exponent;
}

int valuation_cutoff(const QuadPoly& f, Int a, Int p) {
  int vdet = valuation(determinant(f.gram2()), p);
  Wide diff = checked::sub(a, f.constant());
  int vdiff = diff == 0 ? 0 : valuation(diff, p);
  return vdet + vdiff + 2 * (p == 2 ? 1 : 0) + 3;
}

namespace {

// Exponent past which no uncertified residue class can survive when
// a != m_f: survivors sit within p^(e/2 - delta) of the centre, where
// F equals 2 (m_f - a) up to terms of valuation >= e - 2 delta.
int automatic_max_exp(const QuadPoly& f, Int a, Int p) {
  const std::size_t n = f.n();
  int delta = valuation(determinant(f.gram2()), p) + static_cast<int>(n) * (p == 2 ? 1 : 0);
  RatVector half_l(n);
  for (std::size_t i = 0; i < n; ++i) half_l[i] = Rational(f.linear2()[i], 2);
  RatVector v = solve(f.gram2(), half_l);
  Rational m_f = Rational(f.constant()) - quadratic_value(f.gram2(), v) / Rational(2);
  Rational k = (m_f - Rational(a)) * Rational(2);
  int base = valuation_cutoff(f, a, p);
  if (k == Rational(0)) return base + 2 * delta + 4;
  return std::max(base, std::max(0, k.valuation(p)) + 2 * delta + 1);
}

}  // namespace

LocalVerdict represents_locally(const QuadPoly& f, Int a, Int p, const LocalOptions& opts) {
  require_prime(p);
  if (!is_integer_valued(f)) throw InputError("local solubility needs an integer-valued polynomial");
  if (!f.is_positive_definite()) throw InputError("quadratic part is not positive definite");
  const std::size_t n = f.n();
  const Wide k0 = doubled_constant(f, a);
  const int max_exp = opts.max_exp > 0 ? opts.max_exp : automatic_max_exp(f, a, p);
  Budget budget(opts.budget);

  LocalVerdict out;
  out.p = p;

  IntVector zero(n, 0);
  if (k0 == 0) {
    out.soluble = true;
    out.method = LocalMethod::hensel_lift;
    out.witness = LocalWitness{zero, 1};
    return out;
  }

  // Level e holds the residue classes mod p^e solving F = 0 mod p^e that are
  // not yet certified; each is lifted by all p^n digit vectors.
  std::vector<IntVector> level{zero};
  Wide prev_modulus = 1;
  for (int e = 1; e <= max_exp; ++e) {
    const Wide modulus = power_or_throw(p, e);
    std::vector<IntVector> next;
    for (const IntVector& base : level) {
      bool certified = false;
      for_each_residue(n, p, budget, [&](const IntVector& digits) {
        IntVector x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<Int>(base[i] + prev_modulus * digits[i]);
        if (doubled_value_mod(f, k0, x, modulus) != 0) return true;
        int k = gradient_valuation(f, x, p, e, modulus);
        if (2 * k < e || is_exact_root(f, k0, x)) {
          out.soluble = true;
          out.method = LocalMethod::hensel_lift;
          out.witness = LocalWitness{x, e};
          out.depth = e;
          certified = true;
          return false;
        }
        next.push_back(std::move(x));
        return true;
      });
      if (certified) return out;
    }
    if (next.empty()) {
      out.soluble = false;
      out.method = LocalMethod::exhausted;
      out.depth = e;
      return out;
    }
    level = std::move(next);
    prev_modulus = modulus;
  }
  throw BudgetExceeded("p-adic search at p = " + std::to_string(p) + " undecided after exponent " +
                       std::to_string(max_exp));
}

bool represents_over_reals(const QuadPoly& f, Int a) {
  if (!f.is_positive_definite()) throw InputError("quadratic part is not positive definite");
  const std::size_t n = f.n();
  RatVector half_l(n);
  for (std::size_t i = 0; i < n; ++i) half_l[i] = Rational(f.linear2()[i], 2);
  RatVector v = solve(f.gram2(), half_l);
  Rational m_f = Rational(f.constant()) - quadratic_value(f.gram2(), v) / Rational(2);
  return Rational(a) >= m_f;
}

namespace {

struct UnitSolution {
  IntVector z;           // values for the unit coordinates, in [0, p)
  std::size_t pivot = 0;  // index into z of a nonzero entry
};

// Nonzero z mod p with sum u_i z_i^2 = t mod p, for units u_i.
std::optional<UnitSolution> solve_units_mod_p(const std::vector<Wide>& u, Wide t, Int p) {
  const std::size_t k = u.size();
  t = mod(t, p);
  if (k == 0) return std::nullopt;
  UnitSolution s;
  s.z.assign(k, 0);
  if (k == 1) {
    if (t == 0) return std::nullopt;
    auto r = sqrt_mod_prime(t * invmod(u[0], p), p);
    if (!r) return std::nullopt;
    s.z[0] = *r;
    return s;
  }
  // Binary part u0 z0^2 + u1 z1^2 = rhs with rhs a nonzero residue always has
  // a solution; find z0 by scanning.
  auto solve_binary = [&](Wide rhs) -> bool {
    const Int inv1 = invmod(u[1], p);
    for (Int z0 = 0; z0 < p; ++z0) {
      Wide rest = mod(rhs - mod(u[0], p) * z0 % p * z0, p) * inv1 % p;
      auto r = sqrt_mod_prime(rest, p);
      if (r) {
        s.z[0] = z0;
        s.z[1] = *r;
        return true;
      }
    }
    return false;
  };
  if (t != 0) {
    if (!solve_binary(t)) return std::nullopt;
    s.pivot = s.z[0] != 0 ? 0 : 1;
    return s;
  }
  if (legendre(-u[0] * u[1], p) == 1) {
    s.z[0] = 1;
    s.z[1] = *sqrt_mod_prime(mod(-u[0], p) * invmod(u[1], p), p);
    s.pivot = 0;
    return s;
  }
  if (k >= 3) {
    s.z[2] = 1;
    if (!solve_binary(mod(-u[2], p))) return std::nullopt;
    s.pivot = 2;
    return s;
  }
  return std::nullopt;
}

}  // namespace

std::optional<DiagonalSolution> solve_diagonal_odd(const IntVector& coeffs, Wide target, Int p) {
  if (p == 2 || !is_prime(p)) throw InputError("diagonal decider needs an odd prime");
  if (target == 0) throw InputError("diagonal decider needs a nonzero target");
  const std::size_t n = coeffs.size();
  // Invariant: coeffs[i] p^(2 s[i]) = c[i] p^D and target = t p^D, where the
  // original variable is y_i = p^s[i] z_i.
  std::vector<Wide> c(coeffs.begin(), coeffs.end());
  std::vector<int> s(n, 0);
  Wide t = target;
  int divisions = 0;
  while (true) {
    int m0 = INT32_MAX;
    for (Wide ci : c) m0 = std::min(m0, valuation(ci, p));
    if (m0 >= 1) {
      if (t % p != 0) return std::nullopt;
      for (Wide& ci : c) ci /= p;
      t /= p;
      ++divisions;
      continue;
    }
    std::vector<std::size_t> units;
    std::vector<Wide> unit_coeffs;
    for (std::size_t i = 0; i < n; ++i) {
      if (c[i] % p != 0) {
        units.push_back(i);
        unit_coeffs.push_back(c[i]);
      }
    }
    auto found = solve_units_mod_p(unit_coeffs, t, p);
    if (!found) {
      // Every unit coordinate must then be divisible by p.
      for (std::size_t i : units) {
        c[i] = checked::mul(c[i], checked::mul(p, p));
        ++s[i];
      }
      continue;
    }

    // Lift the pivot coordinate so that sum c z^2 = t mod p^(D + 1) (enough
    // for a certificate of the original equation, see below).
    const std::size_t pivot = units[found->pivot];
    const int precision = divisions + 1;
    DiagonalSolution out;
    const int gvals = divisions - s[pivot];  // v_p(coeff * y) at the pivot
    out.exponent = 2 * gvals + 1;
    Wide mod_prec, mod_out;
    try {
      mod_prec = power_or_throw(p, std::max(precision, out.exponent));
      mod_out = power_or_throw(p, out.exponent);
    } catch (const OverflowError&) {
      return DiagonalSolution{{}, 0};
    }
    IntVector z(n, 0);
    for (std::size_t j = 0; j < units.size(); ++j) z[units[j]] = found->z[j];
    Wide rhs = mod(t, mod_prec);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == pivot) continue;
      rhs = mod(rhs - mod(c[i], mod_prec) * (Wide(z[i]) * z[i] % mod_prec), mod_prec);
    }
    Wide u = mod(c[pivot], mod_prec);
    Wide zp = z[pivot];
    for (int it = 0; it < 8 * (precision + 1); ++it) {
      Wide fval = mod(u * (zp * zp % mod_prec) - rhs, mod_prec);
      if (fval == 0) break;
      Wide deriv = 2 * u % mod_prec * zp % mod_prec;
      zp = mod(zp - fval * invmod(deriv, static_cast<Int>(mod_prec)), mod_prec);
    }
    z[pivot] = static_cast<Int>(zp);
    out.y.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      Wide yi = mod(z[i], mod_out);
      for (int k = 0; k < s[i]; ++k) yi = yi * p % mod_out;
      out.y[i] = static_cast<Int>(yi);
    }
    return out;
  }
}

LocalVerdict triangular_locally_represents(const TriangularForm& d, Int m, Int p, const TriangularLocalOptions& opts) {
  require_prime(p);
  if (m < 0) throw InputError("target must be nonnegative");
  LocalVerdict out;
  out.p = p;
  const QuadPoly f = d.to_quadpoly();
  if (!opts.closed_forms) return represents_locally(f, m, p, opts.local);

  const IntVector& a = d.coeffs();
  if (p == 2) {
    if (d.is_primitive()) {
      out.soluble = true;
      out.method = LocalMethod::closed_form_2adic;
      return out;
    }
    return represents_locally(f, m, p, opts.local);
  }
  const Wide target = checked::add(checked::mul(8, m), d.coefficient_sum());
  if (d.n() >= 3 && d.discriminant() % p != 0) {
    out.soluble = true;
    out.method = LocalMethod::closed_form_odd_unit;
    return out;
  }
  if (d.n() == 2 && a[0] % p != 0 && a[1] % p != 0) {
    if (target % p != 0 || (a[0] + a[1]) % p == 0) {
      out.soluble = true;
      out.method = LocalMethod::closed_form_odd_unit;
      return out;
    }
  }

  // General odd case: sum a_i y_i^2 = 8m + sum a_i with y_i = 2 x_i + 1.
  auto sol = solve_diagonal_odd(a, target, p);
  if (!sol) {
    out.soluble = false;
    out.method = LocalMethod::exhausted;
    return out;
  }
  out.soluble = true;
  out.method = LocalMethod::hensel_lift;
  out.depth = sol->exponent;
  if (!sol->y.empty()) {
    const Wide modulus = power_or_throw(p, sol->exponent);
    const Int half = invmod(2, static_cast<Int>(modulus));
    LocalWitness w;
    w.exponent = sol->exponent;
    for (Int y : sol->y) w.residue.push_back(static_cast<Int>(mod(Wide(y - 1) * half, modulus)));
    if (!verify_witness(f, m, p, w)) throw Error("internal: diagonal witness failed verification");
    out.witness = std::move(w);
  }
  return out;
}

std::vector<Int> local_obstruction_primes(const TriangularForm& d) {
  std::vector<Int> out{2};
  for (Int a : d.coeffs())
    for (Int q : prime_divisors(a)) out.push_back(q);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace qpoly
