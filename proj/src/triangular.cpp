#include "qpoly/triangular.hpp"

#include <algorithm>
#include <bit>

#include "qpoly/coset.hpp"

namespace qpoly {

TriangularForm::TriangularForm(IntVector coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty() || coeffs_.size() > kMaxVariables)
    throw InputError("a triangular form needs 1 to 8 coefficients");
  for (Int a : coeffs_)
    if (a < 1) throw InputError("triangular coefficients must be positive");
  std::sort(coeffs_.begin(), coeffs_.end());
}

bool TriangularForm::is_primitive() const {
  Wide g = 0;
  for (Int a : coeffs_) g = gcd(g, a);
  return g == 1;
}

Wide TriangularForm::discriminant() const {
  Wide d = 1;
  for (Int a : coeffs_) d = checked::mul(d, a);
  return d;
}

Wide TriangularForm::coefficient_sum() const {
  Wide s = 0;
  for (Int a : coeffs_) s = checked::add(s, a);
  return s;
}

QuadPoly TriangularForm::to_quadpoly() const { return QuadPoly(IntMatrix::diagonal(coeffs_), coeffs_, 0); }

void Bitset::or_shifted(const Bitset& src, std::size_t shift) {
  if (shift >= size_) return;
  const std::size_t ws = shift >> 6;
  const unsigned bs = shift & 63;
  for (std::size_t i = words_.size(); i-- > ws;) {
    const std::size_t j = i - ws;
    std::uint64_t v = j < src.words_.size() ? src.words_[j] << bs : 0;
    if (bs != 0 && j > 0 && j - 1 < src.words_.size()) v |= src.words_[j - 1] >> (64 - bs);
    words_[i] |= v;
  }
  if (size_ & 63) words_.back() &= (std::uint64_t{1} << (size_ & 63)) - 1;
}

std::size_t Bitset::count() const {
  std::size_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::optional<std::size_t> Bitset::first_unset() const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] == ~std::uint64_t{0}) continue;
    std::size_t bit = i * 64 + static_cast<std::size_t>(std::countr_one(words_[i]));
    if (bit < size_) return bit;
    return std::nullopt;
  }
  return std::nullopt;
}

Bitset Bitset::prefix(std::size_t new_size) const {
  if (new_size > size_) throw InputError("prefix longer than the bitset");
  Bitset out(new_size);
  std::copy(words_.begin(), words_.begin() + static_cast<std::ptrdiff_t>(out.words_.size()), out.words_.begin());
  if (new_size & 63) out.words_.back() &= (std::uint64_t{1} << (new_size & 63)) - 1;
  return out;
}

namespace {

bool is_triangular_number(Wide r, Int* x) {
  if (r < 0) return false;
  Wide disc = checked::add(checked::mul(8, r), 1);
  Wide s = isqrt(disc);
  if (s * s != disc) return false;
  if (x) *x = static_cast<Int>((s - 1) / 2);
  return true;
}

bool represents_rec(const IntVector& a, std::size_t i, Wide rem, IntVector& x) {
  if (i + 1 == a.size()) {
    if (rem % a[i] != 0) return false;
    return is_triangular_number(rem / a[i], &x[i]);
  }
  for (Int xi = 0;; ++xi) {
    Wide used = checked::mul(a[i], Wide(xi) * (xi + 1) / 2);
    if (used > rem) return false;
    x[i] = xi;
    if (represents_rec(a, i + 1, rem - used, x)) return true;
  }
}

}  // namespace

std::optional<IntVector> represents(const TriangularForm& d, Int m) {
  if (m < 0) return std::nullopt;
  IntVector x(d.n(), 0);
  if (represents_rec(d.coeffs(), 0, m, x)) return x;
  return std::nullopt;
}

Bitset represented_set(const TriangularForm& d, Int N, Int limit) {
  if (N < 0) throw InputError("sieve bound must be nonnegative");
  if (N > limit) throw BudgetExceeded("sieve bound " + std::to_string(N) + " exceeds limit " + std::to_string(limit));
  const std::size_t size = static_cast<std::size_t>(N) + 1;
  Bitset cur(size);
  cur.set(0);
  for (Int a : d.coeffs()) {
    Bitset next(size);
    for (Int x = 0;; ++x) {
      Wide shift = Wide(a) * x * (x + 1) / 2;
      if (shift > N) break;
      next.or_shifted(cur, static_cast<std::size_t>(shift));
    }
    cur = std::move(next);
  }
  return cur;
}

std::optional<Int> truant(const TriangularForm& d, Int limit) {
  Int N = std::min<Int>(64, limit);
  while (true) {
    Bitset s = represented_set(d, N, limit);
    if (auto t = s.first_unset()) return static_cast<Int>(*t);
    if (N >= limit) return std::nullopt;
    N = std::min(N * 2, limit);
  }
}

bool theorem_of_eight(const TriangularForm& d) {
  if (!d.is_primitive()) return false;
  return std::all_of(kEightTargets.begin(), kEightTargets.end(), [&](Int m) { return represents(d, m).has_value(); });
}

bool is_universal_up_to(const TriangularForm& d, Int N, Int limit) {
  return !represented_set(d, N, limit).first_unset().has_value();
}

std::vector<Int> primes_to_check(const TriangularForm& d, Int m) {
  std::vector<Int> out = local_obstruction_primes(d);
  if (d.n() <= 2) {
    Wide target = checked::add(checked::mul(8, m), d.coefficient_sum());
    for (Int q : prime_divisors(target))
      if (q != 2) out.push_back(q);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

std::pair<bool, std::vector<LocalVerdict>> locally_represented_everywhere(const TriangularForm& d, Int m,
                                                                          const TriangularLocalOptions& opts) {
  if (m < 0) throw InputError("target must be nonnegative");
  std::vector<Int> primes = primes_to_check(d, m);
  if (d.n() == 1) {
    // a y^2 = t is soluble at almost every prime only when a t is a square;
    // otherwise the first prime with (a t | p) = -1 is an obstruction.
    const Int a = d.coeffs()[0];
    const Wide t = checked::add(checked::mul(8, m), a);
    const Wide at = checked::mul(a, t);
    if (!is_square(at)) {
      Int p = 3;
      while (at % p == 0 || legendre(at, p) != -1) p = next_prime(p);
      primes.push_back(p);
      std::sort(primes.begin(), primes.end());
    }
  }
  std::vector<LocalVerdict> verdicts;
  for (Int p : primes) {
    verdicts.push_back(triangular_locally_represents(d, m, p, opts));
    if (!verdicts.back().soluble) return {false, std::move(verdicts)};
  }
  return {true, std::move(verdicts)};
}

RegularityVerdict is_regular_up_to(const TriangularForm& d, Int N, Int limit, const TriangularLocalOptions& opts) {
  if (!d.is_primitive()) throw InputError("regularity sweeps need a primitive form");
  if (N < 1) throw InputError("sweep bound must be positive");
  const Bitset rep = represented_set(d, N, limit);
  RegularityVerdict out;
  out.N = N;
  for (Int m = 1; m <= N; ++m) {
    if (rep.test(static_cast<std::size_t>(m))) continue;
    auto [soluble, verdicts] = locally_represented_everywhere(d, m, opts);
    if (!soluble) continue;
    RegularityCounterexample cx;
    cx.m = m;
    cx.local = std::move(verdicts);
    cx.search.target = checked::add(checked::mul(8, m), d.coefficient_sum());
    for (Int a : d.coeffs()) {
      Wide y = isqrt(cx.search.target / a);
      if (y % 2 == 0) --y;
      cx.search.max_odd.push_back(static_cast<Int>(y));
    }
    out.status = RegularityStatus::counterexample;
    out.witness = std::move(cx);
    return out;
  }
  out.status = RegularityStatus::regular_up_to_N;
  return out;
}

namespace {

struct DescentShape {
  std::size_t unit = 0;  // index of the coefficient prime to q
  int r = 0;
  int s = 0;
};

std::optional<DescentShape> descent_shape(const TriangularForm& d, Int q) {
  if (d.n() != 3) return std::nullopt;
  std::vector<std::size_t> divisible;
  DescentShape sh;
  for (std::size_t i = 0; i < 3; ++i) {
    if (d.coeffs()[i] % q == 0)
      divisible.push_back(i);
    else
      sh.unit = i;
  }
  if (divisible.size() != 2) return std::nullopt;
  int v1 = valuation(d.coeffs()[divisible[0]], q);
  int v2 = valuation(d.coeffs()[divisible[1]], q);
  sh.r = std::min(v1, v2);
  sh.s = std::max(v1, v2);
  return sh;
}

}  // namespace

TriangularForm descend(const TriangularForm& d, Int q) {
  if (d.n() != 3) throw InputError("descent needs a ternary form");
  if (q == 2 || !is_prime(q)) throw InputError("descent needs an odd prime");
  std::size_t count = 0;
  for (Int a : d.coeffs()) count += a % q == 0 ? 1 : 0;
  if (count == 3) throw InputError(std::to_string(q) + " divides every coefficient");
  auto sh = descent_shape(d, q);
  if (!sh) throw InputError("form is not of shape (a, q^r b, q^s c) with r >= 1 at q = " + std::to_string(q));
  const int delta = std::min(2, sh->r);
  const Wide qd = ipow(q, static_cast<unsigned>(delta));
  IntVector next(3);
  for (std::size_t i = 0; i < 3; ++i) {
    Wide c = d.coeffs()[i];
    next[i] = checked::narrow(i == sh->unit ? checked::mul(c, ipow(q, static_cast<unsigned>(2 - delta))) : c / qd);
  }
  return TriangularForm(next);
}

std::vector<Int> descent_primes(const TriangularForm& d) {
  std::vector<Int> out;
  if (d.n() != 3) return out;
  for (Int q : prime_divisors(d.discriminant()))
    if (q != 2 && descent_shape(d, q)) out.push_back(q);
  return out;
}

bool behaves_well(const TriangularForm& d, Int p) {
  if (p == 2 || !is_prime(p)) throw InputError("behaves_well needs an odd prime");
  std::size_t count = 0;
  for (Int a : d.coeffs()) count += a % p == 0 ? 1 : 0;
  return count <= 1;
}

Coset to_coset(const TriangularForm& d) {
  IntVector diag;
  for (Int a : d.coeffs()) diag.push_back(checked::narrow(checked::mul(8, a)));
  return Coset(IntegralLattice(IntMatrix::diagonal(diag)), RatVector(d.n(), Rational(1, 2)));
}

}  // namespace qpoly
