#include "qpoly/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "qpoly/quadpoly.hpp"

namespace qpoly {

void SearchConfig::validate() const {
  if (coeff_bound < 1) throw InputError("coeff_bound must be positive");
  if (disc_bound < 1) throw InputError("disc_bound must be positive");
  if (verify_N < 8) throw InputError("verify_N must be at least 8 so the targets 1, 2, 4, 5, 8 are swept");
  if (budget < 1) throw InputError("budget must be positive");
  if (jobs < 1) throw InputError("jobs must be positive");
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void sort_candidates(std::vector<Candidate>& v) {
  std::sort(v.begin(), v.end(), [](const Candidate& a, const Candidate& b) {
    Wide da = a.form.discriminant(), db = b.form.discriminant();
    if (da != db) return da < db;
    return a.form.coeffs() < b.form.coeffs();
  });
}

struct Escalator {
  const SearchConfig& cfg;
  SearchReport& report;

  void expand(const IntVector& prefix) {
    if (prefix.size() == 3) {
      classify(prefix);
      return;
    }
    PruneStep step;
    step.prefix = prefix;
    if (prefix.empty()) {
      step.truant = 1;
    } else {
      auto t = truant(TriangularForm(prefix));
      if (!t) throw Error("internal: a form with fewer than three coefficients looked universal");
      step.truant = *t;
    }
    step.next_low = prefix.empty() ? 1 : prefix.back();
    step.next_high = std::min(step.truant, cfg.coeff_bound);
    step.truncated = step.truant > cfg.coeff_bound;
    if (step.truncated) report.exhaustive = false;
    report.pruning.push_back(step);
    for (Int a = step.next_low; a <= step.next_high; ++a) {
      IntVector next = prefix;
      next.push_back(a);
      expand(next);
    }
  }

  void classify(const IntVector& coeffs) {
    ++report.examined;
    Candidate c;
    c.form = TriangularForm(coeffs);
    c.universal_up_to = is_universal_up_to(c.form, cfg.verify_N);
    c.accepted = cfg.use_toe ? theorem_of_eight(c.form) : *c.universal_up_to;
    if (c.accepted) report.candidates.push_back(std::move(c));
  }
};

}  // namespace

SearchReport escalate_universal_ternary(const SearchConfig& cfg) {
  cfg.validate();
  const auto start = Clock::now();
  SearchReport report;
  report.kind = "universal";
  report.config = cfg;
  Escalator{cfg, report}.expand({});
  sort_candidates(report.candidates);
  report.coverage = report.exhaustive
                        ? "every primitive ternary triangular form (escalator tree complete)"
                        : "escalator tree clipped at coefficient " + std::to_string(cfg.coeff_bound);
  report.seconds = seconds_since(start);
  return report;
}

SearchReport enumerate_regular_ternary(const SearchConfig& cfg) {
  cfg.validate();
  const auto start = Clock::now();
  SearchReport report;
  report.kind = "regular";
  report.config = cfg;

  std::vector<TriangularForm> forms;
  const Int D = cfg.disc_bound;
  for (Int a = 1; a * a * a <= D; ++a)
    for (Int b = a; a * b * b <= D; ++b)
      for (Int c = b; a * b * c <= D; ++c)
        if (gcd(gcd(a, b), c) == 1) forms.emplace_back(IntVector{a, b, c});

  TriangularLocalOptions opts;
  opts.local.budget = cfg.budget;
  std::vector<std::optional<RegularityVerdict>> verdicts(forms.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= forms.size()) return;
      try {
        verdicts[i] = is_regular_up_to(forms[i], cfg.verify_N, kDefaultSieveLimit, opts);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = forms.size();
        return;
      }
    }
  };
  const unsigned jobs = std::min<unsigned>(cfg.jobs, static_cast<unsigned>(std::max<std::size_t>(1, forms.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  report.examined = static_cast<Int>(forms.size());
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (verdicts[i]->status != RegularityStatus::regular_up_to_N) continue;
    Candidate c;
    c.form = forms[i];
    c.accepted = true;
    c.regularity = verdicts[i];
    for (Int q : descent_primes(c.form)) {
      DescentCheck dc;
      dc.q = q;
      dc.descended = descend(c.form, q);
      dc.verdict = is_regular_up_to(dc.descended, cfg.verify_N, kDefaultSieveLimit, opts);
      c.descents.push_back(std::move(dc));
    }
    report.candidates.push_back(std::move(c));
  }
  sort_candidates(report.candidates);
  report.exhaustive = false;
  report.coverage = "primitive ternary forms with discriminant <= " + std::to_string(D) +
                    ", regular up to " + std::to_string(cfg.verify_N) + " only";
  report.seconds = seconds_since(start);
  return report;
}

namespace {

Wide rational_mod(const Rational& r, Wide m) {
  return mod(checked::mul(mod(r.num(), m), invmod(r.den(), checked::narrow(m))), m);
}

// Exact test of (x G x^T + L.x) / 2 + c = N for a binary form: for each x0
// in the projected range the quadratic in x1 is solved over the integers.
bool binary_represents(const IntMatrix& g, const IntVector& l2, Int c, Int N, const RatVector& w,
                       const Rational& qw, Budget& budget) {
  const Rational t = Rational(N) - Rational(c) + qw;  // Q(x + w) = t
  if (t < Rational(0)) return false;
  const Wide d2 = determinant(g);
  const Wide r = isqrt((t * Rational(2 * Wide(g(1, 1))) / Rational(d2)).floor()) + 1;
  const Wide lo = (Rational(-r) - w[0]).floor(), hi = (Rational(r) - w[0]).ceil();
  for (Wide x0 = lo; x0 <= hi; ++x0) {
    budget.spend();
    const Wide A = g(1, 1);
    const Wide B = checked::add(checked::mul(2 * Wide(g(0, 1)), x0), l2[1]);
    const Wide C = checked::sub(checked::add(checked::add(checked::mul(checked::mul(g(0, 0), x0), x0),
                                                          checked::mul(l2[0], x0)),
                                             checked::mul(2, c)),
                                checked::mul(2, N));
    const Wide disc = checked::sub(checked::mul(B, B), checked::mul(4 * A, C));
    if (disc < 0 || !is_square(disc)) continue;
    const Wide s = isqrt(disc);
    if ((-B + s) % (2 * A) == 0 || (-B - s) % (2 * A) == 0) return true;
  }
  return false;
}

}  // namespace

UnrepresentedResult find_unrepresented(const IntMatrix& gram2, const std::vector<BinaryOffset>& polys, Int k,
                                       std::uint64_t budget) {
  if (gram2.rows() != 2 || gram2.cols() != 2 || !is_symmetric(gram2) || !is_positive_definite(gram2))
    throw InputError("find_unrepresented needs a positive definite binary form");
  if (polys.size() > 8) throw InputError("at most 8 offset polynomials are supported");
  if (k < 0) throw InputError("k must be nonnegative");

  std::vector<Rational> qw;
  std::vector<IntVector> linears;
  for (const BinaryOffset& f : polys) {
    if (f.w.size() != 2) throw InputError("offset vectors must have length 2");
    IntVector linear2(2);
    for (std::size_t j = 0; j < 2; ++j) {
      Rational l = (f.w[0] * Rational(gram2(0, j)) + f.w[1] * Rational(gram2(1, j))) * Rational(2);
      if (!l.is_integer()) throw InputError("offset polynomial has non-integral linear part");
      linear2[j] = checked::narrow(l.num());
    }
    if (!is_integer_valued(QuadPoly(gram2, linear2, f.c))) throw InputError("offset polynomial is not integral");
    qw.push_back(quadratic_value(gram2, f.w) / Rational(2));
    linears.push_back(linear2);
  }

  const Wide D2 = determinant(gram2);
  UnrepresentedResult out;
  for (Int p = 3; out.primes.size() < polys.size(); p = next_prime(p))
    if (D2 % p != 0 && legendre(-D2, p) == -1) out.primes.push_back(p);

  Wide residue = 0;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const Int p = out.primes[i];
    for (const Rational& wi : polys[i].w)
      if (wi.den() % p == 0)
        throw InputError("offset vector is not integral at " + std::to_string(p) + ", contrary to the construction");
    const Wide p2 = Wide(p) * p;
    const Wide r = mod(checked::add(p, polys[i].c) - rational_mod(qw[i], p2), p2);
    // Combine residue mod modulus with r mod p2.
    const Wide step = mod(checked::mul(mod(r - residue, p2), invmod(mod(out.modulus, p2), checked::narrow(p2))), p2);
    residue = checked::add(residue, checked::mul(step, out.modulus));
    out.modulus = checked::mul(out.modulus, p2);
    residue = mod(residue, out.modulus);
  }
  const Int floor_n = std::max<Int>(k, 1);
  out.N = checked::narrow(checked::add(floor_n, mod(residue - floor_n, out.modulus)));

  Budget b(budget);
  for (std::size_t i = 0; i < polys.size(); ++i)
    if (binary_represents(gram2, linears[i], polys[i].c, out.N, polys[i].w, qw[i], b))
      throw Error("internal: constructed N is represented by an offset polynomial");
  return out;
}

CoprimeCount kko_lower_bound(const IntVector& T, Int a, Int d, Int n) {
  if (n < 0) throw InputError("n must be nonnegative");
  IntVector primes = T;
  std::sort(primes.begin(), primes.end());
  if (std::adjacent_find(primes.begin(), primes.end()) != primes.end()) throw InputError("T has repeated primes");
  for (Int p : primes) {
    if (!is_prime(p)) throw InputError(std::to_string(p) + " is not a prime");
    if (gcd(a, p) != 1) throw InputError("a is divisible by " + std::to_string(p));
  }
  CoprimeCount out;
  for (Int i = 0; i < n; ++i) {
    const Wide v = checked::add(checked::mul(i, a), d);
    if (std::all_of(primes.begin(), primes.end(), [&](Int p) { return v % p != 0; })) ++out.count;
  }
  if (primes.empty()) {
    out.bound = Rational(n);
  } else {
    const Int t = static_cast<Int>(primes.size());
    const Int p = primes.front();
    out.bound = Rational(checked::mul(n, p - 1), p + t - 1) - Rational(ipow(2, static_cast<unsigned>(t))) + Rational(1);
  }
  return out;
}

}  // namespace qpoly
