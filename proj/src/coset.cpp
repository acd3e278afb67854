#include "qpoly/coset.hpp"

#include <algorithm>

namespace qpoly {

IntegralLattice::IntegralLattice(IntMatrix gram2) : gram2_(std::move(gram2)) {
  if (!gram2_.is_square() || gram2_.rows() < 1 || gram2_.rows() > 8)
    throw InputError("lattice Gram matrix must be square of size 1..8");
  if (!is_symmetric(gram2_)) throw InputError("lattice Gram matrix must be symmetric");
  if (!is_positive_definite(gram2_)) throw InputError("lattice Gram matrix must be positive definite");
}

Rational IntegralLattice::discriminant() const {
  return Rational(determinant(gram2_), ipow(2, static_cast<unsigned>(rank())));
}

Coset::Coset(IntegralLattice lattice, RatVector shift, Int max_denominator)
    : lattice_(std::move(lattice)), shift_(std::move(shift)) {
  if (shift_.size() != lattice_.rank()) throw InputError("shift length does not match the lattice rank");
  if (max_denominator < 1) throw InputError("denominator bound must be positive");
  for (const Rational& s : shift_)
    if (max_denominator % s.den() != 0)
      throw InputError("shift denominator " + to_string(s.den()) + " does not divide " +
                       std::to_string(max_denominator));
}

Rational Coset::value(const IntVector& x) const {
  if (x.size() != rank()) throw InputError("vector length does not match the lattice rank");
  RatVector y(rank());
  for (std::size_t i = 0; i < rank(); ++i) y[i] = Rational(x[i]) + shift_[i];
  return quadratic_value(lattice_.gram2(), y) / Rational(2);
}

bool Coset::is_integral() const {
  const std::size_t n = rank();
  IntVector x(n, 0);
  if (!value(x).is_integer()) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      x.assign(n, 0);
      x[i] += 1;
      x[j] += 1;
      if (!value(x).is_integer()) return false;
      if (i == j) {
        x[i] = 1;
        if (!value(x).is_integer()) return false;
      }
    }
  }
  return true;
}

std::optional<IntVector> coset_represents(const Coset& cs, Int a, std::uint64_t budget) {
  if (a < 0) throw InputError("target must be nonnegative");
  EllipsoidEnumerator en(cs.lattice().gram2());
  Budget b(budget);
  std::optional<IntVector> found;
  const Rational target(a);
  en.for_each(cs.shift(), target, [&](const IntVector& x, const Rational& value) {
    if (value == target) {
      found = x;
      return false;
    }
    return true;
  }, b);
  return found;
}

Int coset_index(const Coset& cs) {
  Wide l = 1;
  for (const Rational& s : cs.shift()) l = lcm(l, s.den());
  return checked::narrow(l);
}

namespace {

// Hermite normal form (upper triangular, positive pivots) of the row span.
std::vector<std::vector<Wide>> hermite_rows(std::vector<std::vector<Wide>> rows, std::size_t n) {
  std::size_t pr = 0;
  for (std::size_t col = 0; col < n && pr < rows.size(); ++col) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t r = pr; r < rows.size(); ++r)
        if (rows[r][col] != 0 && (best == rows.size() || abs_wide(rows[r][col]) < abs_wide(rows[best][col]))) best = r;
      if (best == rows.size()) break;
      std::swap(rows[pr], rows[best]);
      bool clean = true;
      for (std::size_t r = pr + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        Wide q = floor_div(rows[r][col], rows[pr][col]);
        for (std::size_t c = 0; c < n; ++c) rows[r][c] = checked::sub(rows[r][c], checked::mul(q, rows[pr][c]));
        if (rows[r][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (rows[pr][col] == 0) continue;
    if (rows[pr][col] < 0)
      for (Wide& v : rows[pr]) v = -v;
    for (std::size_t r = 0; r < pr; ++r) {
      Wide q = floor_div(rows[r][col], rows[pr][col]);
      for (std::size_t c = 0; c < n; ++c) rows[r][c] = checked::sub(rows[r][c], checked::mul(q, rows[pr][c]));
    }
    ++pr;
  }
  rows.resize(pr);
  return rows;
}

}  // namespace

std::vector<RatVector> coset_lattice_basis(const Coset& cs) {
  const std::size_t n = cs.rank();
  const Int D = coset_index(cs);
  std::vector<std::vector<Wide>> gens;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Wide> row(n, 0);
    row[i] = D;
    gens.push_back(row);
  }
  std::vector<Wide> sv(n);
  for (std::size_t i = 0; i < n; ++i) sv[i] = (cs.shift()[i] * Rational(D)).num();
  gens.push_back(sv);
  auto h = hermite_rows(std::move(gens), n);
  if (h.size() != n) throw Error("internal: coset lattice basis lost rank");
  std::vector<RatVector> out;
  for (const auto& row : h) {
    RatVector b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = Rational(row[i], D);
    out.push_back(std::move(b));
  }
  return out;
}

IntegralLattice coset_lattice(const Coset& cs) {
  const std::size_t n = cs.rank();
  const auto basis = coset_lattice_basis(cs);
  IntMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational v = bilinear_value(cs.lattice().gram2(), basis[i], basis[j]);
      if (!v.is_integer()) throw InputError("M + Zv is not an integral lattice");
      g(i, j) = checked::narrow(v.num());
    }
  }
  return IntegralLattice(std::move(g));
}

namespace {

void require_isometry_rank(const IntegralLattice& l) {
  if (l.rank() > kMaxIsometryRank) throw InputError("isometry testing is limited to rank <= 4");
}

bool is_isometry(const IntMatrix& u, const IntMatrix& g1, const IntMatrix& g2) {
  Wide det = determinant(u);
  return (det == 1 || det == -1) && transpose(u) * g2 * u == g1;
}

}  // namespace

std::vector<IntMatrix> all_isometries(const IntegralLattice& l1, const IntegralLattice& l2, std::uint64_t budget) {
  require_isometry_rank(l1);
  require_isometry_rank(l2);
  std::vector<IntMatrix> out;
  if (l1.rank() != l2.rank() || determinant(l1.gram2()) != determinant(l2.gram2())) return out;
  Budget b(budget);
  for_each_isometry(l1.gram2(), l2.gram2(), [&](const IntMatrix& u) {
    if (!is_isometry(u, l1.gram2(), l2.gram2())) throw Error("internal: isometry search returned a non-isometry");
    out.push_back(u);
    return true;
  }, b);
  return out;
}

std::optional<IntMatrix> isometric(const IntegralLattice& l1, const IntegralLattice& l2, std::uint64_t budget) {
  require_isometry_rank(l1);
  require_isometry_rank(l2);
  if (l1.rank() != l2.rank() || determinant(l1.gram2()) != determinant(l2.gram2())) return std::nullopt;
  Budget b(budget);
  std::optional<IntMatrix> found;
  for_each_isometry(l1.gram2(), l2.gram2(), [&](const IntMatrix& u) {
    found = u;
    return false;
  }, b);
  if (found && !is_isometry(*found, l1.gram2(), l2.gram2()))
    throw Error("internal: isometry search returned a non-isometry");
  return found;
}

std::optional<IntMatrix> coset_isometric(const Coset& c1, const Coset& c2, std::uint64_t budget) {
  const std::size_t n = c1.rank();
  std::optional<IntMatrix> found;
  for (const IntMatrix& u : all_isometries(c1.lattice(), c2.lattice(), budget)) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      Rational img(0);
      for (std::size_t j = 0; j < n; ++j) img += Rational(u(i, j)) * c1.shift()[j];
      ok = (img - c2.shift()[i]).is_integer();
    }
    if (ok) {
      found = u;
      break;
    }
  }
  return found;
}

std::vector<LatticeVector> shortest_vectors(const IntegralLattice& l, const Rational& bound, std::uint64_t budget) {
  std::vector<LatticeVector> out;
  if (bound < Rational(0)) return out;
  Budget b(budget);
  for (ShortVector& sv : short_vectors(l.gram2(), (bound * Rational(2)).floor(), b))
    out.push_back(LatticeVector{std::move(sv.x), Rational(sv.value2, 2)});
  return out;
}

}  // namespace qpoly
