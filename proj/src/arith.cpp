#include "qpoly/arith.hpp"

#include <algorithm>
#include <climits>
#include <limits>

namespace qpoly {

namespace checked {

Int narrow(Wide v) {
  if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min()) {
    throw OverflowError("value " + to_string(v) + " does not fit in 64 bits");
  }
  return static_cast<Int>(v);
}

}  // namespace checked

std::string to_string(Wide v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  // Work on the unsigned magnitude so the most negative value is handled.
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

Wide abs_wide(Wide v) {
  if (v < 0) return checked::sub(0, v);
  return v;
}

Wide gcd(Wide a, Wide b) {
  a = abs_wide(a);
  b = abs_wide(b);
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Wide lcm(Wide a, Wide b) {
  if (a == 0 || b == 0) return 0;
  return checked::mul(abs_wide(a) / gcd(a, b), abs_wide(b));
}

Wide floor_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Wide mod(Wide a, Wide m) {
  Wide r = a % m;
  if (r < 0) r += m;
  return r;
}

Wide isqrt(Wide n) {
  if (n < 0) throw InputError("isqrt of a negative number");
  if (n < 2) return n;
  // Newton iteration from a power-of-two overestimate.
  int bits = 0;
  for (Wide t = n; t > 0; t >>= 1) ++bits;
  Wide x = Wide(1) << ((bits + 1) / 2);
  while (true) {
    Wide y = (x + n / x) / 2;
    if (y >= x) break;
    x = y;
  }
  while (x * x > n) --x;
  while ((x + 1) * (x + 1) <= n) ++x;
  return x;
}

bool is_square(Wide n) {
  if (n < 0) return false;
  Wide r = isqrt(n);
  return r * r == n;
}

Wide ipow(Wide base, unsigned exp) {
  Wide r = 1;
  for (unsigned i = 0; i < exp; ++i) r = checked::mul(r, base);
  return r;
}

Int powmod(Int base, Wide exp, Int m) {
  if (m == 1) return 0;
  Wide b = mod(base, m);
  Wide r = 1;
  while (exp > 0) {
    if (exp & 1) r = (r * b) % m;
    b = (b * b) % m;
    exp >>= 1;
  }
  return static_cast<Int>(r);
}

Int invmod(Wide a, Int m) {
  Wide old_r = mod(a, m), r = m;
  Wide old_s = 1, s = 0;
  while (r != 0) {
    Wide q = old_r / r;
    Wide t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw InputError("no modular inverse of " + to_string(a) + " mod " + std::to_string(m));
  return static_cast<Int>(mod(old_s, m));
}

int valuation(Wide n, Int p) {
  if (n == 0) return INT32_MAX;
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

bool is_prime(Int n) {
  if (n < 2) return false;
  for (Int sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % sp == 0) return n == sp;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  Int d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (Int a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    Wide x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = (x * x) % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<Int> prime_divisors(Wide n) {
  n = abs_wide(n);
  std::vector<Int> out;
  if (n == 0) return out;
  for (Wide p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      out.push_back(static_cast<Int>(p));
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(checked::narrow(n));
  return out;
}

Int next_prime(Int n) {
  Int c = n < 2 ? 2 : n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

int legendre(Wide a, Int p) {
  if (p <= 2 || !is_prime(p)) throw InputError("legendre symbol needs an odd prime, got " + std::to_string(p));
  Int r = static_cast<Int>(mod(a, p));
  if (r == 0) return 0;
  Int e = powmod(r, (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

std::optional<Int> sqrt_mod_prime(Wide a, Int p) {
  Int r = static_cast<Int>(mod(a, p));
  if (r == 0) return Int{0};
  if (legendre(r, p) != 1) return std::nullopt;
  if (p % 4 == 3) return powmod(r, (p + 1) / 4, p);
  // Tonelli-Shanks.
  Int q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  Int z = 2;
  while (legendre(z, p) != -1) ++z;
  Wide m = s;
  Wide c = powmod(z, q, p);
  Wide t = powmod(r, q, p);
  Wide x = powmod(r, (q + 1) / 2, p);
  while (t != 1) {
    Wide i = 0, tt = t;
    while (tt != 1) {
      tt = (tt * tt) % p;
      ++i;
    }
    Wide b = c;
    for (Wide j = 0; j < m - i - 1; ++j) b = (b * b) % p;
    x = (x * b) % p;
    c = (b * b) % p;
    t = (t * c) % p;
    m = i;
  }
  return static_cast<Int>(x);
}

Rational::Rational(Wide n, Wide d) {
  if (d == 0) throw InputError("rational with zero denominator");
  if (d < 0) {
    n = checked::sub(0, n);
    d = checked::sub(0, d);
  }
  Wide g = gcd(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = n;
  den_ = d;
}

Wide Rational::floor() const { return floor_div(num_, den_); }

Wide Rational::ceil() const { return -floor_div(-num_, den_); }

int Rational::valuation(Int p) const {
  if (num_ == 0) return INT32_MAX;
  return qpoly::valuation(num_, p) - qpoly::valuation(den_, p);
}

std::string Rational::str() const {
  if (den_ == 1) return to_string(num_);
  return to_string(num_) + "/" + to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) return Rational(checked::add(a.num_, b.num_), a.den_);
  Wide g = gcd(a.den_, b.den_);
  Wide lhs = checked::mul(a.num_, b.den_ / g);
  Wide rhs = checked::mul(b.num_, a.den_ / g);
  return Rational(checked::add(lhs, rhs), checked::mul(a.den_ / g, b.den_));
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  Wide g1 = gcd(a.num_, b.den_);
  Wide g2 = gcd(b.num_, a.den_);
  if (g1 == 0) g1 = 1;
  if (g2 == 0) g2 = 1;
  return Rational(checked::mul(a.num_ / g1, b.num_ / g2), checked::mul(a.den_ / g2, b.den_ / g1));
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw InputError("rational division by zero");
  return a * Rational(b.den_, b.num_);
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = checked::sub(0, num_);
  r.den_ = den_;
  return r;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  Wide lhs = checked::mul(a.num_, b.den_);
  Wide rhs = checked::mul(b.num_, a.den_);
  return lhs <=> rhs;
}

}  // namespace qpoly
