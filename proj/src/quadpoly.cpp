#include "qpoly/quadpoly.hpp"

#include <array>

namespace qpoly {

namespace {

IntVector row_times(const IntVector& x, const IntMatrix& m) {
  IntVector out(m.cols(), 0);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Wide s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s = checked::add(s, checked::mul(x[i], m(i, j)));
    out[j] = checked::narrow(s);
  }
  return out;
}

void require_ternary(const QuadPoly& f, const char* op) {
  if (f.n() != 3) throw InputError(std::string(op) + " is only defined for ternary polynomials");
}

void require_positive(const QuadPoly& f) {
  if (!f.is_positive_definite()) throw InputError("quadratic part is not positive definite");
}

}  // namespace

QuadPoly::QuadPoly(IntMatrix gram2, IntVector linear2, Int constant)
    : gram2_(std::move(gram2)), linear2_(std::move(linear2)), constant_(constant) {
  const std::size_t n = gram2_.rows();
  if (n < 1 || n > kMaxVariables) throw InputError("variable count must be between 1 and 8");
  if (!gram2_.is_square() || linear2_.size() != n) throw InputError("G must be n x n and L must have n entries");
  if (!is_symmetric(gram2_)) throw InputError("G must be symmetric");
}

QuadPoly with_constant(const QuadPoly& f, Int c) { return QuadPoly(f.gram2(), f.linear2(), c); }

AffineTransform AffineTransform::identity(std::size_t n) { return {IntMatrix::identity(n), IntVector(n, 0)}; }

Rational evaluate(const QuadPoly& f, const IntVector& x) {
  if (x.size() != f.n()) throw InputError("evaluation point has the wrong dimension");
  Wide twice = quadratic_value(f.gram2(), x);
  for (std::size_t i = 0; i < x.size(); ++i) twice = checked::add(twice, checked::mul(f.linear2()[i], x[i]));
  return Rational(twice, 2) + Rational(f.constant());
}

Int evaluate_int(const QuadPoly& f, const IntVector& x) {
  Rational v = evaluate(f, x);
  if (!v.is_integer()) throw InputError("polynomial value " + v.str() + " is not an integer");
  return checked::narrow(v.num());
}

bool is_integer_valued(const QuadPoly& f) {
  // A quadratic polynomial is integer valued iff it is at 0, e_i and e_i + e_j.
  const std::size_t n = f.n();
  IntVector x(n, 0);
  if (!evaluate(f, x).is_integer()) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      std::fill(x.begin(), x.end(), 0);
      x[i] += 1;
      if (j != i) x[j] += 1;
      if (!evaluate(f, x).is_integer()) return false;
    }
  }
  return true;
}

Completion complete(const QuadPoly& f, std::uint64_t budget) {
  require_positive(f);
  const std::size_t n = f.n();
  RatVector half_l(n);
  for (std::size_t i = 0; i < n; ++i) half_l[i] = Rational(f.linear2()[i], 2);
  Completion out;
  out.v = solve(f.gram2(), half_l);
  const Rational qv = quadratic_value(f.gram2(), out.v) / Rational(2);
  out.m_f = Rational(f.constant()) - qv;

  // f(x) <= f(0) <=> Q(x + v) <= Q(v).
  Budget b(budget);
  EllipsoidEnumerator en(f.gram2());
  Rational best = qv;
  IntVector best_x(n, 0);
  en.for_each(out.v, qv, [&](const IntVector& x, const Rational& q) {
    if (q < best) {
      best = q;
      best_x = x;
    }
    return true;
  }, b);
  Rational m = best + out.m_f;
  if (!m.is_integer()) throw InputError("integer minimum " + m.str() + " is not an integer; f is not integer valued");
  out.m_int = checked::narrow(m.num());
  out.argmin = best_x;
  return out;
}

std::vector<IntVector> points_at_most(const QuadPoly& f, const Rational& bound, std::uint64_t budget) {
  require_positive(f);
  const std::size_t n = f.n();
  RatVector half_l(n);
  for (std::size_t i = 0; i < n; ++i) half_l[i] = Rational(f.linear2()[i], 2);
  RatVector v = solve(f.gram2(), half_l);
  Rational m_f = Rational(f.constant()) - quadratic_value(f.gram2(), v) / Rational(2);
  std::vector<IntVector> out;
  Budget b(budget);
  EllipsoidEnumerator en(f.gram2());
  en.for_each(v, bound - m_f, [&](const IntVector& x, const Rational&) {
    out.push_back(x);
    return true;
  }, b);
  return out;
}

std::optional<IntVector> find_representation(const QuadPoly& f, Int a, std::uint64_t budget) {
  require_positive(f);
  const std::size_t n = f.n();
  RatVector half_l(n);
  for (std::size_t i = 0; i < n; ++i) half_l[i] = Rational(f.linear2()[i], 2);
  RatVector v = solve(f.gram2(), half_l);
  Rational m_f = Rational(f.constant()) - quadratic_value(f.gram2(), v) / Rational(2);
  const Rational target = Rational(a) - m_f;
  std::optional<IntVector> found;
  Budget b(budget);
  EllipsoidEnumerator en(f.gram2());
  en.for_each(v, target, [&](const IntVector& x, const Rational& q) {
    if (q == target) {
      found = x;
      return false;
    }
    return true;
  }, b);
  return found;
}

QuadPoly apply_transform(const QuadPoly& f, const AffineTransform& tr) {
  const std::size_t n = f.n();
  if (tr.t.rows() != n || tr.t.cols() != n || tr.x0.size() != n) throw InputError("transform has the wrong dimension");
  Wide det = determinant(tr.t);
  if (det != 1 && det != -1) throw InputError("transform matrix is not unimodular");
  IntMatrix g = tr.t * f.gram2() * transpose(tr.t);
  // L'^T = T (2 G x0^T + L^T)
  IntVector inner(n);
  for (std::size_t i = 0; i < n; ++i) {
    Wide s = f.linear2()[i];
    for (std::size_t j = 0; j < n; ++j) s = checked::add(s, checked::mul(2 * Wide(f.gram2()(i, j)), tr.x0[j]));
    inner[i] = checked::narrow(s);
  }
  IntVector l(n);
  for (std::size_t i = 0; i < n; ++i) {
    Wide s = 0;
    for (std::size_t j = 0; j < n; ++j) s = checked::add(s, checked::mul(tr.t(i, j), inner[j]));
    l[i] = checked::narrow(s);
  }
  Rational c = evaluate(f, tr.x0);
  if (!c.is_integer()) throw InputError("translated constant " + c.str() + " is not an integer");
  return QuadPoly(std::move(g), std::move(l), checked::narrow(c.num()));
}

AffineTransform compose(const AffineTransform& first, const AffineTransform& second) {
  AffineTransform out;
  out.t = second.t * first.t;
  out.x0 = row_times(second.x0, first.t);
  for (std::size_t i = 0; i < out.x0.size(); ++i)
    out.x0[i] = checked::narrow(checked::add(out.x0[i], first.x0[i]));
  return out;
}

namespace {

AffineTransform inverse(const AffineTransform& tr) {
  // g(x) = f(x T + y)  =>  f(z) = g(z T^-1 - y T^-1)
  IntMatrix inv = unimodular_inverse(tr.t);
  IntVector shift = row_times(tr.x0, inv);
  for (auto& s : shift) s = checked::narrow(checked::sub(0, s));
  return {inv, shift};
}

using GramKey = std::array<Int, 9>;

GramKey key_of(const IntMatrix& g) {
  return {g(0, 0), g(1, 1), g(2, 2), std::abs(g(0, 1)), std::abs(g(0, 2)), std::abs(g(1, 2)),
          g(0, 1), g(0, 2), g(1, 2)};
}

}  // namespace

ReducedGram canonical_reduced_gram(const IntMatrix& gram2, std::uint64_t budget) {
  if (gram2.rows() != 3) throw InputError("canonical reduction is only implemented for ternary forms");
  Budget b(budget);
  const IntMatrix t1 = greedy_reduce(gram2, b);
  const IntMatrix r = t1 * gram2 * transpose(t1);
  if (!is_minkowski_reduced(r)) throw Error("internal: greedy reduction did not produce a Minkowski-reduced form");

  // Every Minkowski-reduced basis has diagonal (mu1, mu2, mu3); enumerate
  // them and keep the smallest key. Ties keep the incumbent, so an input that
  // is already canonical comes back with the identity transform.
  std::vector<IntVector> s1, s2, s3;
  for (auto& sv : short_vectors(r, r(2, 2), b)) {
    if (sv.value2 == r(0, 0)) s1.push_back(sv.x);
    if (sv.value2 == r(1, 1)) s2.push_back(sv.x);
    if (sv.value2 == r(2, 2)) s3.push_back(sv.x);
  }
  IntMatrix best_basis = IntMatrix::identity(3);
  GramKey best_key = key_of(r);
  IntMatrix basis(3, 3);
  for (const auto& b1 : s1) {
    for (const auto& b2 : s2) {
      Wide g01 = bilinear_value(r, b1, b2);
      if (2 * abs_wide(g01) > r(0, 0)) continue;
      for (const auto& b3 : s3) {
        b.spend();
        Wide g02 = bilinear_value(r, b1, b3);
        Wide g12 = bilinear_value(r, b2, b3);
        if (2 * abs_wide(g02) > r(0, 0) || 2 * abs_wide(g12) > r(1, 1)) continue;
        for (std::size_t j = 0; j < 3; ++j) {
          basis(0, j) = b1[j];
          basis(1, j) = b2[j];
          basis(2, j) = b3[j];
        }
        Wide det = determinant(basis);
        if (det != 1 && det != -1) continue;
        IntMatrix c = basis * r * transpose(basis);
        if (!is_minkowski_reduced(c)) continue;
        GramKey k = key_of(c);
        if (k < best_key) {
          best_key = k;
          best_basis = basis;
        }
      }
    }
  }
  ReducedGram out;
  out.t = best_basis * t1;
  out.gram2 = out.t * gram2 * transpose(out.t);
  return out;
}

ReducedPoly minkowski_reduce(const QuadPoly& f, std::uint64_t budget) {
  require_ternary(f, "Minkowski reduction");
  require_positive(f);
  if (!is_integer_valued(f)) throw InputError("Minkowski reduction needs an integer-valued polynomial");
  ReducedGram rg = canonical_reduced_gram(f.gram2(), budget);
  AffineTransform basis{rg.t, IntVector(3, 0)};
  QuadPoly f1 = apply_transform(f, basis);
  Completion c = complete(f1, budget);
  AffineTransform shift{IntMatrix::identity(3), c.argmin};
  return {apply_transform(f1, shift), compose(basis, shift)};
}

bool is_reduced(const QuadPoly& f, std::uint64_t budget) {
  require_ternary(f, "is_reduced");
  if (!f.is_positive_definite() || !is_minkowski_reduced(f.gram2())) return false;
  Completion c = complete(f, budget);
  return c.m_int == f.constant();
}

std::optional<AffineTransform> find_equivalence(const QuadPoly& f, const QuadPoly& g, std::uint64_t budget) {
  require_ternary(f, "equivalence testing");
  require_ternary(g, "equivalence testing");
  ReducedPoly rf = minkowski_reduce(f, budget);
  ReducedPoly rg = minkowski_reduce(g, budget);
  if (rf.g.gram2() != rg.g.gram2() || rf.g.constant() != rg.g.constant()) return std::nullopt;

  // Both reduced forms have the same quadratic part A. Any equivalence
  // between them is x -> x T + x0 with T an automorph of A and f'(x0) = min.
  const IntMatrix& a = rf.g.gram2();
  std::vector<IntVector> minima = points_at_most(rf.g, Rational(rf.g.constant()), budget);
  std::optional<AffineTransform> found;
  Budget b(budget);
  for_each_isometry(a, a, [&](const IntMatrix& u) {
    IntMatrix t = transpose(u);
    for (const IntVector& x0 : minima) {
      AffineTransform candidate{t, x0};
      if (apply_transform(rf.g, candidate) == rg.g) {
        found = compose(rf.transform, compose(candidate, inverse(rg.transform)));
        return false;
      }
    }
    return true;
  }, b);
  if (found && apply_transform(f, *found) != g) throw Error("internal: equivalence transform failed verification");
  return found;
}

bool equivalent(const QuadPoly& f, const QuadPoly& g, std::uint64_t budget) {
  return find_equivalence(f, g, budget).has_value();
}

}  // namespace qpoly
