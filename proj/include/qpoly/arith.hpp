#pragma once

/**
 * @file arith.hpp
 * @brief Checked 128-bit integer helpers, exact rationals, and the small
 *        number-theory toolkit (primes, valuations, Legendre symbols).
 *
 * Storage throughout the library is 64-bit; every intermediate product is
 * formed in 128 bits and checked. Nothing here ever wraps silently.
 */

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpoly/errors.hpp"

namespace qpoly {

using Int = std::int64_t;
using Wide = __int128;

namespace checked {

inline Wide add(Wide a, Wide b) {
  Wide r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("128-bit addition overflow");
  return r;
}

inline Wide sub(Wide a, Wide b) {
  Wide r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("128-bit subtraction overflow");
  return r;
}

inline Wide mul(Wide a, Wide b) {
  Wide r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("128-bit multiplication overflow");
  return r;
}

/// Narrow to 64 bits, throwing when the value does not fit.
Int narrow(Wide v);

}  // namespace checked

std::string to_string(Wide v);

Wide abs_wide(Wide v);
Wide gcd(Wide a, Wide b);
Wide lcm(Wide a, Wide b);

/// Floor division and the matching nonnegative remainder (m > 0).
Wide floor_div(Wide a, Wide b);
Wide mod(Wide a, Wide m);

/// floor(sqrt(n)) for n >= 0.
Wide isqrt(Wide n);
bool is_square(Wide n);

/// base^exp with overflow checking.
Wide ipow(Wide base, unsigned exp);

/// (base^exp) mod m for 0 < m < 2^63.
Int powmod(Int base, Wide exp, Int m);

/// Inverse of a modulo m (gcd must be 1); throws InputError otherwise.
Int invmod(Wide a, Int m);

/// p-adic valuation of a nonzero integer. Returns INT32_MAX for zero.
int valuation(Wide n, Int p);

bool is_prime(Int n);
/// Distinct prime divisors of |n|, ascending. |n| <= 2^62.
std::vector<Int> prime_divisors(Wide n);
/// Smallest prime strictly greater than n.
Int next_prime(Int n);

/// Legendre symbol (a|p) for an odd prime p.
int legendre(Wide a, Int p);

/// A square root of a modulo the odd prime p, if a is a square (a may be 0).
std::optional<Int> sqrt_mod_prime(Wide a, Int p);

/// Exact rational number over checked 128-bit integers, always normalized
/// (den > 0, gcd(num, den) = 1).
class Rational {
 public:
  constexpr Rational() = default;
  Rational(Wide n) : num_(n), den_(1) {}  // NOLINT(implicit)
  Rational(Wide n, Wide d);

  Wide num() const noexcept { return num_; }
  Wide den() const noexcept { return den_; }
  bool is_integer() const noexcept { return den_ == 1; }
  int sign() const noexcept { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  Wide floor() const;
  Wide ceil() const;

  /// v_p(num) - v_p(den); INT32_MAX for zero.
  int valuation(Int p) const;

  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  Wide num_ = 0;
  Wide den_ = 1;
};

using IntVector = std::vector<Int>;
using RatVector = std::vector<Rational>;

}  // namespace qpoly
