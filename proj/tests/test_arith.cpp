#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "qpoly/arith.hpp"
#include "qpoly/matrix.hpp"

using namespace qpoly;

TEST(Checked, OverflowThrows) {
  const Wide big = static_cast<Wide>(std::numeric_limits<std::int64_t>::max()) << 62;
  EXPECT_THROW(checked::mul(big, 8), OverflowError);
  EXPECT_THROW(checked::narrow(Wide(1) << 70), OverflowError);
  EXPECT_EQ(checked::narrow(-5), -5);
  EXPECT_EQ(checked::add(2, 3), 5);
}

TEST(Arith, FloorDivAndMod) {
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(floor_div(7, 2), 3);
  EXPECT_EQ(mod(-7, 3), 2);
  EXPECT_EQ(mod(7, 3), 1);
  EXPECT_EQ(gcd(-12, 18), 6);
  EXPECT_EQ(lcm(4, 6), 12);
}

TEST(Arith, IsqrtMatchesDefinition) {
  for (Wide n = 0; n < 5000; ++n) {
    Wide r = isqrt(n);
    EXPECT_LE(r * r, n);
    EXPECT_GT((r + 1) * (r + 1), n);
  }
  const Wide big = Wide(3037000499LL) * 3037000499LL;
  EXPECT_EQ(isqrt(big), 3037000499LL);
  EXPECT_TRUE(is_square(big));
  EXPECT_FALSE(is_square(big + 1));
}

TEST(Arith, Valuation) {
  EXPECT_EQ(valuation(48, 2), 4);
  EXPECT_EQ(valuation(-45, 3), 2);
  EXPECT_EQ(valuation(7, 5), 0);
}

TEST(Arith, PrimalityAgreesWithSieve) {
  const int N = 20000;
  std::vector<bool> composite(N + 1, false);
  for (int i = 2; i * i <= N; ++i)
    if (!composite[i])
      for (int j = i * i; j <= N; j += i) composite[j] = true;
  for (int n = 0; n <= N; ++n) EXPECT_EQ(is_prime(n), n >= 2 && !composite[n]) << n;
  EXPECT_TRUE(is_prime(1000000007));
  EXPECT_FALSE(is_prime(3215031751LL));  // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_EQ(next_prime(13), 17);
  EXPECT_EQ(prime_divisors(360), (std::vector<Int>{2, 3, 5}));
}

TEST(Arith, LegendreExamples) {
  EXPECT_EQ(legendre(1, 3), 1);
  EXPECT_EQ(legendre(2, 3), -1);
  EXPECT_EQ(legendre(-1, 5), 1);
  EXPECT_EQ(legendre(10, 5), 0);
  EXPECT_THROW(legendre(1, 2), InputError);
  EXPECT_THROW(legendre(1, 9), InputError);
}

TEST(Arith, LegendreMatchesSquareTable) {
  for (Int p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 97}) {
    std::vector<bool> square(static_cast<std::size_t>(p), false);
    for (Int x = 1; x < p; ++x) square[static_cast<std::size_t>(x * x % p)] = true;
    for (Int a = -2 * p; a <= 2 * p; ++a) {
      Int r = ((a % p) + p) % p;
      int expect = r == 0 ? 0 : (square[static_cast<std::size_t>(r)] ? 1 : -1);
      EXPECT_EQ(legendre(a, p), expect) << a << " mod " << p;
      auto s = sqrt_mod_prime(a, p);
      EXPECT_EQ(s.has_value(), expect >= 0);
      if (s) EXPECT_EQ(mod(Wide(*s) * *s - a, p), 0);
    }
  }
}

TEST(Arith, PowmodAndInverse) {
  EXPECT_EQ(powmod(3, 200, 1000000007), powmod(9, 100, 1000000007));
  EXPECT_EQ(mod(Wide(invmod(17, 101)) * 17, 101), 1);
  EXPECT_THROW(invmod(6, 9), InputError);
}

TEST(Rational, NormalizesAndCompares) {
  Rational a(6, -4);
  EXPECT_EQ(a.num(), -3);
  EXPECT_EQ(a.den(), 2);
  EXPECT_EQ(a.floor(), -2);
  EXPECT_EQ(a.ceil(), -1);
  EXPECT_EQ(Rational(1, 2) + Rational(1, 3), Rational(5, 6));
  EXPECT_EQ(Rational(1, 2) * Rational(2, 3), Rational(1, 3));
  EXPECT_EQ(Rational(1, 2) / Rational(1, 4), Rational(2));
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
  EXPECT_EQ(Rational(12, 5).valuation(2), 2);
  EXPECT_EQ(Rational(3, 20).valuation(2), -2);
  EXPECT_EQ(Rational(7, 3).str(), "7/3");
  EXPECT_THROW(Rational(1, 0), InputError);
}

namespace {

Wide cofactor_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  Wide s = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    Wide term = m(0, j) * cofactor_det(minor);
    s += (j % 2 == 0) ? term : -term;
  }
  return s;
}

}  // namespace

TEST(Matrix, DeterminantMatchesCofactorExpansion) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Int> d(-9, 9);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 5;
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
    EXPECT_EQ(determinant(m), cofactor_det(m));
  }
}

TEST(Matrix, UnimodularInverseAndSolve) {
  IntMatrix t{{2, 1, 0}, {1, 1, 0}, {3, 2, 1}};
  IntMatrix inv = unimodular_inverse(t);
  EXPECT_EQ(t * inv, IntMatrix::identity(3));
  IntMatrix g{{2, 1}, {1, 2}};
  RatVector x = solve(g, {Rational(1), Rational(0)});
  EXPECT_EQ(x[0], Rational(2, 3));
  EXPECT_EQ(x[1], Rational(-1, 3));
  EXPECT_TRUE(is_positive_definite(g));
  EXPECT_FALSE(is_positive_definite(IntMatrix{{1, 2}, {2, 1}}));
}
