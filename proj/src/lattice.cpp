#include "qpoly/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace qpoly {

EllipsoidEnumerator::EllipsoidEnumerator(const IntMatrix& gram2) {
  if (!is_positive_definite(gram2)) throw InputError("ellipsoid enumeration needs a positive definite Gram matrix");
  const std::size_t n = gram2.rows();
  l_.assign(n, RatVector(n, Rational(0)));
  d_.assign(n, Rational(0));
  // LDL^T with unit lower-triangular L; l_[i][j] holds L(i, j) for i > j.
  for (std::size_t j = 0; j < n; ++j) {
    Rational dj(gram2(j, j));
    for (std::size_t k = 0; k < j; ++k) dj -= l_[j][k] * l_[j][k] * d_[k];
    d_[j] = dj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Rational v(gram2(i, j));
      for (std::size_t k = 0; k < j; ++k) v -= l_[i][k] * l_[j][k] * d_[k];
      l_[i][j] = v / dj;
    }
  }
}

bool EllipsoidEnumerator::for_each(const RatVector& center, const Rational& bound,
                                   const std::function<bool(const IntVector&, const Rational&)>& visit,
                                   Budget& budget) const {
  const std::size_t n = dim();
  if (center.size() != n) throw InputError("ellipsoid center has the wrong dimension");
  if (bound < Rational(0)) return true;
  IntVector x(n, 0);
  RatVector y(n, Rational(0));
  const Rational total = bound * Rational(2);
  if (n == 0) return visit(x, Rational(0));
  return descend(n - 1, center, total, x, y, visit, total, budget);
}

bool EllipsoidEnumerator::descend(std::size_t level, const RatVector& center, const Rational& rem, IntVector& x,
                                  RatVector& y, const std::function<bool(const IntVector&, const Rational&)>& visit,
                                  const Rational& total, Budget& budget) const {
  const std::size_t n = dim();
  Rational z = center[level];
  for (std::size_t j = level + 1; j < n; ++j) z += l_[j][level] * y[j];
  // Need d (x + z)^2 <= rem.
  const Rational q = rem / d_[level];
  const Wide k = isqrt(q.floor());
  const Wide lo = (-z).floor() - k - 1;
  const Wide hi = (-z).ceil() + k + 1;
  for (Wide xi = lo; xi <= hi; ++xi) {
    budget.spend();
    Rational t = Rational(xi) + z;
    Rational used = d_[level] * t * t;
    if (used > rem) continue;
    x[level] = checked::narrow(xi);
    y[level] = Rational(xi) + center[level];
    Rational left = rem - used;
    if (level == 0) {
      if (!visit(x, (total - left) / Rational(2))) return false;
    } else if (!descend(level - 1, center, left, x, y, visit, total, budget)) {
      return false;
    }
  }
  x[level] = 0;
  y[level] = Rational(0);
  return true;
}

namespace {

IntMatrix congruent(const IntMatrix& t, const IntMatrix& g) { return t * g * transpose(t); }

// Stable reorder of the rows of t by the diagonal of t g t^T.
IntMatrix sort_by_norm(const IntMatrix& t, const IntMatrix& g) {
  const std::size_t n = t.rows();
  IntMatrix r = congruent(t, g);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return r(a, a) < r(b, b); });
  IntMatrix out(n, t.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) out(i, j) = t(order[i], j);
  return out;
}

}  // namespace

IntMatrix greedy_reduce(const IntMatrix& gram2, Budget& budget) {
  const std::size_t n = gram2.rows();
  if (!is_positive_definite(gram2)) throw InputError("reduction needs a positive definite Gram matrix");
  IntMatrix t = IntMatrix::identity(n);
  while (true) {
    budget.spend();
    t = sort_by_norm(t, gram2);
    bool changed = false;
    for (std::size_t k = 1; k < n && !changed; ++k) {
      IntMatrix r = congruent(t, gram2);
      // Minimize Q(b_k + sum_{j<k} x_j b_j). With sub = r[0..k), the center w
      // solves sub * w = r[0..k, k], and values are Q_sub(x + w) + const.
      IntMatrix sub(k, k);
      RatVector rhs(k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = r(i, j);
        rhs[i] = Rational(r(i, k));
      }
      RatVector w = solve(sub, rhs);
      EllipsoidEnumerator en(sub);
      const Rational at_zero = quadratic_value(sub, w) / Rational(2);
      Rational best = at_zero;
      IntVector best_x(k, 0);
      en.for_each(w, at_zero, [&](const IntVector& x, const Rational& v) {
        if (v < best) {
          best = v;
          best_x = x;
        }
        return true;
      }, budget);
      if (best < at_zero) {
        for (std::size_t j = 0; j < k; ++j) {
          if (best_x[j] == 0) continue;
          for (std::size_t c = 0; c < n; ++c)
            t(k, c) = checked::narrow(checked::add(t(k, c), checked::mul(best_x[j], t(j, c))));
        }
        changed = true;
      }
    }
    if (!changed) return t;
  }
}

bool is_minkowski_reduced(const IntMatrix& g) {
  const std::size_t n = g.rows();
  if (!is_positive_definite(g)) return false;
  if (n > 3) throw InputError("explicit Minkowski conditions are only implemented for rank <= 3");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (g(i, i) > g(i + 1, i + 1)) return false;
  // 2|B(e_i, e_j)| <= Q(e_i) for i < j, i.e. 2|g_ij| <= g_ii.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (2 * std::abs(g(i, j)) > g(i, i)) return false;
  if (n == 3) {
    // Q(e3 + s1 e1 + s2 e2) >= Q(e3) for all signs.
    for (Int s1 : {-1, 1}) {
      for (Int s2 : {-1, 1}) {
        Wide v = Wide(g(0, 0)) + g(1, 1) + 2 * (Wide(s1) * s2 * g(0, 1) + Wide(s1) * g(0, 2) + Wide(s2) * g(1, 2));
        if (v < 0) return false;
      }
    }
  }
  return true;
}

std::vector<ShortVector> short_vectors(const IntMatrix& gram2, Wide bound2, Budget& budget) {
  std::vector<ShortVector> out;
  EllipsoidEnumerator en(gram2);
  RatVector zero(gram2.rows(), Rational(0));
  en.for_each(zero, Rational(bound2, 2), [&](const IntVector& x, const Rational& v) {
    out.push_back({x, (v * Rational(2)).num()});
    return true;
  }, budget);
  std::sort(out.begin(), out.end(), [](const ShortVector& a, const ShortVector& b) {
    if (a.value2 != b.value2) return a.value2 < b.value2;
    return a.x < b.x;
  });
  return out;
}

void for_each_isometry(const IntMatrix& from, const IntMatrix& to, const std::function<bool(const IntMatrix&)>& visit,
                       Budget& budget) {
  const std::size_t n = from.rows();
  if (to.rows() != n || !is_positive_definite(from) || !is_positive_definite(to))
    throw InputError("isometry search needs two positive definite Gram matrices of equal rank");
  if (determinant(from) != determinant(to)) return;

  // Search images of a reduced basis of `from`, then undo the reduction.
  const IntMatrix t = greedy_reduce(from, budget);
  const IntMatrix reduced = t * from * transpose(t);
  const IntMatrix undo = transpose(unimodular_inverse(t));

  Wide max_norm = 0;
  for (std::size_t i = 0; i < n; ++i) max_norm = std::max<Wide>(max_norm, reduced(i, i));
  std::map<Wide, std::vector<IntVector>> by_norm;
  for (auto& sv : short_vectors(to, max_norm, budget)) by_norm[sv.value2].push_back(std::move(sv.x));

  std::vector<IntVector> chosen(n);
  IntMatrix v(n, n);
  bool keep_going = true;
  std::function<void(std::size_t)> extend = [&](std::size_t i) {
    if (!keep_going) return;
    if (i == n) {
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) v(r, c) = chosen[c][r];
      Wide det = determinant(v);
      if (det != 1 && det != -1) return;
      IntMatrix u = v * undo;
      keep_going = visit(u);
      return;
    }
    auto it = by_norm.find(reduced(i, i));
    if (it == by_norm.end()) return;
    for (const IntVector& cand : it->second) {
      budget.spend();
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = bilinear_value(to, cand, chosen[j]) == reduced(i, j);
      if (!ok) continue;
      chosen[i] = cand;
      extend(i + 1);
      if (!keep_going) return;
    }
  };
  extend(0);
}

}  // namespace qpoly
