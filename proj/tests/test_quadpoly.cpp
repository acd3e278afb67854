#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "qpoly/lattice.hpp"
#include "qpoly/quadpoly.hpp"

using namespace qpoly;

namespace {

QuadPoly sum_of_squares(IntVector w, IntVector lin = {}, Int c = 0) {
  IntVector g;
  for (Int a : w) g.push_back(2 * a);
  if (lin.empty()) lin.assign(w.size(), 0);
  for (Int& l : lin) l *= 2;
  return QuadPoly(IntMatrix::diagonal(g), lin, c);
}

// Values up to `cap` attained on the box [-r, r]^3, computed straight from the coefficients.
std::set<Int> box_values(const QuadPoly& f, Int r, Int cap) {
  std::set<Int> out;
  const IntMatrix& g = f.gram2();
  for (Int a = -r; a <= r; ++a)
    for (Int b = -r; b <= r; ++b)
      for (Int c = -r; c <= r; ++c) {
        Int x[3] = {a, b, c};
        Wide twice = 0;
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) twice += Wide(x[i]) * g(i, j) * x[j];
          twice += Wide(f.linear2()[i]) * x[i];
        }
        Wide v = twice / 2 + f.constant();
        if (v <= cap) out.insert(static_cast<Int>(v));
      }
  return out;
}

IntMatrix random_unimodular(std::mt19937_64& rng) {
  std::uniform_int_distribution<Int> d(-2, 2);
  IntMatrix t = IntMatrix::identity(3);
  for (int step = 0; step < 4; ++step) {
    std::size_t i = rng() % 3, j = rng() % 3;
    if (i == j) continue;
    Int k = d(rng);
    IntMatrix e = IntMatrix::identity(3);
    e(i, j) = k;
    t = e * t;
  }
  return t;
}

QuadPoly random_positive(std::mt19937_64& rng) {
  std::uniform_int_distribution<Int> diag(2, 6), off(-1, 1), lin(-4, 4), cst(-3, 3);
  for (;;) {
    IntMatrix g(3, 3);
    for (std::size_t i = 0; i < 3; ++i) g(i, i) = 2 * diag(rng);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) g(i, j) = g(j, i) = off(rng);
    if (!is_positive_definite(g)) continue;
    IntVector l{lin(rng), lin(rng), lin(rng)};
    QuadPoly f(g, l, cst(rng));
    if (is_integer_valued(f)) return f;
  }
}

}  // namespace

TEST(QuadPoly, ValidatesShape) {
  EXPECT_THROW(QuadPoly(IntMatrix{{2, 1}, {0, 2}}, {0, 0}, 0), InputError);
  EXPECT_THROW(QuadPoly(IntMatrix{{2}}, {0, 0}, 0), InputError);
}

TEST(QuadPoly, EvaluateExamples) {
  QuadPoly tri(IntMatrix{{1}}, {1}, 0);
  EXPECT_EQ(evaluate(tri, {3}), Rational(6));
  EXPECT_EQ(evaluate(sum_of_squares({1, 1, 1}), {1, 1, 1}), Rational(3));
  QuadPoly f = sum_of_squares({1}, {-2});
  EXPECT_EQ(evaluate(f, {1}), Rational(-1));
  EXPECT_EQ(evaluate_int(f, {1}), -1);
  QuadPoly half(IntMatrix{{1}}, {0}, 0);
  EXPECT_EQ(evaluate(half, {1}), Rational(1, 2));
  EXPECT_THROW(evaluate_int(half, {1}), InputError);
}

TEST(QuadPoly, IntegerValuedExamples) {
  EXPECT_TRUE(is_integer_valued(QuadPoly(IntMatrix{{1}}, {1}, 0)));
  EXPECT_FALSE(is_integer_valued(QuadPoly(IntMatrix{{1}}, {0}, 0)));
  EXPECT_TRUE(is_integer_valued(QuadPoly(IntMatrix::diagonal({1, 1, 1}), {1, 1, 1}, 0)));
}

TEST(QuadPoly, IntegerValuedMatchesSmallPoints) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<Int> d(-3, 3);
  for (int trial = 0; trial < 300; ++trial) {
    IntMatrix g(2, 2);
    g(0, 0) = 1 + (rng() % 4);
    g(1, 1) = 1 + (rng() % 4);
    g(0, 1) = g(1, 0) = d(rng);
    QuadPoly f(g, {d(rng), d(rng)}, d(rng));
    bool all_int = true;
    for (Int a = -2; a <= 2; ++a)
      for (Int b = -2; b <= 2; ++b) all_int = all_int && evaluate(f, {a, b}).is_integer();
    EXPECT_EQ(is_integer_valued(f), all_int);
  }
}

TEST(QuadPoly, CompletionExamples) {
  Completion a = complete(sum_of_squares({1}, {-2}));
  EXPECT_EQ(a.v, (RatVector{Rational(-1)}));
  EXPECT_EQ(a.m_f, Rational(-1));
  EXPECT_EQ(a.m_int, -1);

  Completion b = complete(QuadPoly(IntMatrix::diagonal({1, 1, 1}), {1, 1, 1}, 0));
  EXPECT_EQ(b.v, (RatVector{Rational(1, 2), Rational(1, 2), Rational(1, 2)}));
  EXPECT_EQ(b.m_int, 0);

  Completion c = complete(sum_of_squares({1, 1}, {0, 2}, 5));
  EXPECT_EQ(c.v, (RatVector{Rational(0), Rational(1)}));
  EXPECT_EQ(c.m_f, Rational(4));
  EXPECT_EQ(c.m_int, 4);
}

TEST(QuadPoly, IntegerMinimumMatchesBox) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    QuadPoly f = random_positive(rng);
    Completion c = complete(f);
    std::set<Int> vals = box_values(f, 6, 1000);
    ASSERT_FALSE(vals.empty());
    EXPECT_EQ(c.m_int, *vals.begin());
    EXPECT_EQ(evaluate_int(f, c.argmin), c.m_int);
    EXPECT_LE(c.m_f, Rational(c.m_int));
  }
}

TEST(QuadPoly, TransformExamples) {
  QuadPoly f = sum_of_squares({1}, {2}, 1);  // (x + 1)^2
  EXPECT_EQ(apply_transform(f, AffineTransform::identity(1)), f);
  QuadPoly g = apply_transform(f, AffineTransform{IntMatrix{{1}}, {1}});
  EXPECT_EQ(evaluate_int(g, {0}), 4);
  EXPECT_EQ(g, sum_of_squares({1}, {4}, 4));
  EXPECT_THROW(apply_transform(f, AffineTransform{IntMatrix{{2}}, {0}}), InputError);
}

TEST(QuadPoly, TransformPreservesValuesAndComposes) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<Int> d(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    QuadPoly f = random_positive(rng);
    AffineTransform t1{random_unimodular(rng), {d(rng), d(rng), d(rng)}};
    AffineTransform t2{random_unimodular(rng), {d(rng), d(rng), d(rng)}};
    QuadPoly g = apply_transform(f, t1);
    for (int k = 0; k < 10; ++k) {
      IntVector x{d(rng), d(rng), d(rng)};
      IntVector y(3);
      for (std::size_t j = 0; j < 3; ++j) {
        Wide s = t1.x0[j];
        for (std::size_t i = 0; i < 3; ++i) s += Wide(x[i]) * t1.t(i, j);
        y[j] = static_cast<Int>(s);
      }
      EXPECT_EQ(evaluate(g, x), evaluate(f, y));
    }
    EXPECT_EQ(apply_transform(g, t2), apply_transform(f, compose(t1, t2)));
  }
}

TEST(QuadPoly, ReduceExamples) {
  QuadPoly f = sum_of_squares({1, 1, 1}, {0, 0, 2});
  ReducedPoly r = minkowski_reduce(f);
  EXPECT_EQ(r.g, sum_of_squares({1, 1, 1}, {}, -1));
  EXPECT_EQ(apply_transform(f, r.transform), r.g);
  EXPECT_TRUE(is_reduced(sum_of_squares({1, 1, 1})));
  EXPECT_FALSE(is_reduced(f));
  EXPECT_TRUE(is_reduced(r.g));
  EXPECT_EQ(minkowski_reduce(r.g).g, r.g);
}

TEST(QuadPoly, ReductionIsSoundOnRandomForms) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    QuadPoly f = random_positive(rng);
    ReducedPoly r = minkowski_reduce(f);
    EXPECT_EQ(apply_transform(f, r.transform), r.g);
    EXPECT_TRUE(is_reduced(r.g));
    EXPECT_TRUE(is_minkowski_reduced(r.g.gram2()));
    EXPECT_EQ(r.g.constant(), complete(f).m_int);
    EXPECT_EQ(minkowski_reduce(r.g).g, r.g);
    EXPECT_EQ(box_values(f, 9, 30), box_values(r.g, 9, 30));
  }
}

TEST(QuadPoly, EquivalenceExamples) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<Int> d(-2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    QuadPoly f = random_positive(rng);
    AffineTransform t{random_unimodular(rng), {d(rng), d(rng), d(rng)}};
    QuadPoly g = apply_transform(f, t);
    auto e = find_equivalence(f, g);
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(apply_transform(f, *e), g);
  }
  EXPECT_FALSE(equivalent(sum_of_squares({1, 1, 1}), sum_of_squares({1, 1, 2})));
  QuadPoly tri(IntMatrix::diagonal({1, 1, 2}), {1, 1, 2}, 0);
  QuadPoly perm(IntMatrix::diagonal({1, 2, 1}), {1, 2, 1}, 0);
  EXPECT_TRUE(equivalent(tri, perm));
  EXPECT_FALSE(equivalent(tri, with_constant(perm, 1)));
}

TEST(Lattice, EnumeratorMatchesBox) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    QuadPoly f = random_positive(rng);
    auto pts = points_at_most(f, Rational(12));
    std::set<IntVector> got(pts.begin(), pts.end());
    EXPECT_EQ(got.size(), pts.size());
    std::set<IntVector> want;
    for (Int a = -8; a <= 8; ++a)
      for (Int b = -8; b <= 8; ++b)
        for (Int c = -8; c <= 8; ++c)
          if (evaluate(f, {a, b, c}) <= Rational(12)) want.insert({a, b, c});
    EXPECT_EQ(got, want);
  }
}

TEST(Lattice, ShortVectorsSortedAndComplete) {
  IntMatrix g{{6, 2, -2}, {2, 6, 2}, {-2, 2, 6}};
  Budget b;
  auto sv = short_vectors(g, 6, b);
  std::size_t nonzero = std::count_if(sv.begin(), sv.end(), [](const ShortVector& s) { return s.value2 > 0; });
  std::size_t brute = 0;
  for (Int x = -3; x <= 3; ++x)
    for (Int y = -3; y <= 3; ++y)
      for (Int z = -3; z <= 3; ++z) {
        Wide v = quadratic_value(g, IntVector{x, y, z});
        if (v > 0 && v <= 6) ++brute;
      }
  EXPECT_EQ(nonzero, brute);
  for (std::size_t i = 1; i < sv.size(); ++i) EXPECT_LE(sv[i - 1].value2, sv[i].value2);
}

TEST(Lattice, BudgetIsEnforced) {
  Budget b(10);
  EXPECT_THROW(short_vectors(IntMatrix::diagonal({2, 2, 2}), 200, b), BudgetExceeded);
}

TEST(Lattice, GreedyReduceGivesMinkowskiBasis) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 60; ++trial) {
    QuadPoly f = random_positive(rng);
    IntMatrix u = random_unimodular(rng);
    IntMatrix g = u * f.gram2() * transpose(u);
    Budget b;
    IntMatrix t = greedy_reduce(g, b);
    EXPECT_EQ(std::abs(static_cast<long long>(determinant(t))), 1);
    EXPECT_TRUE(is_minkowski_reduced(t * g * transpose(t)));
  }
}

TEST(Lattice, IsometriesAreVerified) {
  IntMatrix a = IntMatrix::diagonal({2, 2, 4});
  IntMatrix b = IntMatrix::diagonal({4, 2, 2});
  Budget budget;
  int count = 0;
  for_each_isometry(a, b, [&](const IntMatrix& u) {
    EXPECT_EQ(transpose(u) * b * u, a);
    ++count;
    return true;
  }, budget);
  EXPECT_EQ(count, 16);  // signs (8) times the swap of the two norm-1 vectors (2)
}
