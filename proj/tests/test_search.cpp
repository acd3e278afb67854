#include <gtest/gtest.h>

#include <algorithm>

#include "qpoly/search.hpp"

using namespace qpoly;

namespace {

// Box scan of q(x + w) + c = N for a diagonal doubled Gram g2 with entries >= 2.
bool binary_hit(const IntMatrix& g2, const RatVector& w, Int c, Int N) {
  const Int r = static_cast<Int>(isqrt(std::max<Int>(N - c, 0))) + 2;
  for (Int x = -r; x <= r; ++x)
    for (Int y = -r; y <= r; ++y) {
      Rational a = Rational(x) + w[0], b = Rational(y) + w[1];
      Rational v = (a * a * Rational(g2(0, 0)) + Rational(2) * a * b * Rational(g2(0, 1)) + b * b * Rational(g2(1, 1))) /
                       Rational(2) +
                   Rational(c);
      if (v == Rational(N)) return true;
    }
  return false;
}

Int coprime_count(const IntVector& T, Int a, Int d, Int n) {
  Int k = 0;
  for (Int i = 0; i < n; ++i) {
    Int x = i * a + d;
    bool ok = true;
    for (Int p : T) ok = ok && x % p != 0;
    if (ok) ++k;
  }
  return k;
}

std::vector<IntVector> forms_of(const SearchReport& r) {
  std::vector<IntVector> out;
  for (const Candidate& c : r.candidates) out.push_back(c.form.coeffs());
  return out;
}

}  // namespace

TEST(Search, ConfigValidation) {
  SearchConfig c;
  EXPECT_NO_THROW(c.validate());
  c.verify_N = 5;
  EXPECT_THROW(c.validate(), InputError);
  c = SearchConfig{};
  c.disc_bound = 0;
  EXPECT_THROW(c.validate(), InputError);
}

TEST(Search, EscalatorFindsSeven) {
  SearchReport r = escalate_universal_ternary(SearchConfig{});
  std::vector<IntVector> want{{1, 1, 1}, {1, 1, 2}, {1, 1, 4}, {1, 2, 2}, {1, 1, 5}, {1, 2, 3}, {1, 2, 4}};
  EXPECT_EQ(forms_of(r), want);
  EXPECT_TRUE(r.exhaustive);
  for (const Candidate& c : r.candidates) {
    EXPECT_TRUE(c.accepted);
    ASSERT_TRUE(c.universal_up_to.has_value());
    EXPECT_TRUE(*c.universal_up_to);
    EXPECT_TRUE(is_universal_up_to(c.form, 10000));
  }
  auto step = [&](IntVector prefix) {
    auto it = std::find_if(r.pruning.begin(), r.pruning.end(), [&](const PruneStep& s) { return s.prefix == prefix; });
    EXPECT_NE(it, r.pruning.end());
    return *it;
  };
  EXPECT_EQ(step({}).truant, 1);
  EXPECT_EQ(step({1}).truant, 2);
  PruneStep s11 = step({1, 1});
  EXPECT_EQ(s11.truant, 5);
  EXPECT_EQ(s11.next_low, 1);
  EXPECT_EQ(s11.next_high, 5);
  EXPECT_EQ(step({1, 2}).truant, 4);
  EXPECT_EQ(escalate_universal_ternary(SearchConfig{}), r);
}

TEST(Search, EscalatorWithoutTheoremOfEightAgrees) {
  SearchConfig c;
  c.use_toe = false;
  c.verify_N = 2000;
  EXPECT_EQ(forms_of(escalate_universal_ternary(c)), forms_of(escalate_universal_ternary(SearchConfig{})));
}

TEST(Search, RegularSweepSmallBound) {
  SearchConfig c;
  c.disc_bound = 1;
  c.verify_N = 1000;
  SearchReport r = enumerate_regular_ternary(c);
  EXPECT_EQ(forms_of(r), (std::vector<IntVector>{{1, 1, 1}}));
}

TEST(Search, RegularSweepContainsUniversalFormsAndIsDeterministic) {
  SearchConfig c;
  c.disc_bound = 30;
  c.verify_N = 1000;
  SearchReport one = enumerate_regular_ternary(c);
  c.jobs = 3;
  SearchReport three = enumerate_regular_ternary(c);
  EXPECT_EQ(one.candidates, three.candidates);
  EXPECT_EQ(one.examined, three.examined);
  auto forms = forms_of(one);
  for (IntVector u : {IntVector{1, 1, 1}, IntVector{1, 1, 2}, IntVector{1, 1, 4}, IntVector{1, 2, 2},
                      IntVector{1, 1, 5}, IntVector{1, 2, 3}, IntVector{1, 2, 4}})
    EXPECT_NE(std::find(forms.begin(), forms.end(), u), forms.end());
  for (std::size_t i = 1; i < one.candidates.size(); ++i) {
    const auto& a = one.candidates[i - 1].form;
    const auto& b = one.candidates[i].form;
    EXPECT_TRUE(a.discriminant() < b.discriminant() || (a.discriminant() == b.discriminant() && a < b));
  }
  for (const Candidate& cand : one.candidates)
    for (const DescentCheck& dc : cand.descents) EXPECT_EQ(descend(cand.form, dc.q), dc.descended);
}

TEST(Search, CandidateCountsGrowWithBound) {
  std::size_t prev = 0;
  for (Int bound : {10, 50, 100}) {
    SearchConfig c;
    c.disc_bound = bound;
    c.verify_N = 1000;
    SearchReport r = enumerate_regular_ternary(c);
    EXPECT_GE(r.candidates.size(), prev);
    prev = r.candidates.size();
    RecordProperty("survivors_disc_" + std::to_string(bound), static_cast<int>(prev));
  }
}

TEST(Search, FindUnrepresentedExamples) {
  IntMatrix sq = IntMatrix::diagonal({2, 2});
  std::vector<BinaryOffset> origin{{RatVector{Rational(0), Rational(0)}, 0}};
  UnrepresentedResult a = find_unrepresented(sq, origin, 0);
  EXPECT_EQ(a.N, 3);
  EXPECT_EQ(a.primes, (IntVector{3}));
  EXPECT_FALSE(binary_hit(sq, origin[0].w, 0, 3));
  UnrepresentedResult b = find_unrepresented(sq, origin, 10);
  EXPECT_EQ(b.N, 12);
  EXPECT_FALSE(binary_hit(sq, origin[0].w, 0, 12));
  IntMatrix q2 = IntMatrix::diagonal({2, 4});
  UnrepresentedResult c = find_unrepresented(q2, origin, 0);
  EXPECT_EQ(c.N, 5);
  EXPECT_FALSE(binary_hit(q2, origin[0].w, 0, 5));
}

TEST(Search, FindUnrepresentedSeveralOffsets) {
  IntMatrix g = IntMatrix::diagonal({2, 2});
  std::vector<BinaryOffset> polys{{RatVector{Rational(0), Rational(0)}, 0},
                                  {RatVector{Rational(1, 2), Rational(0)}, 1},
                                  {RatVector{Rational(1, 2), Rational(1, 2)}, 3}};
  UnrepresentedResult r = find_unrepresented(g, polys, 50);
  EXPECT_GE(r.N, 50);
  EXPECT_EQ(r.primes.size(), 3u);
  for (const BinaryOffset& f : polys) EXPECT_FALSE(binary_hit(g, f.w, f.c, r.N));
}

TEST(Search, FindUnrepresentedRejectsNonIntegralOffset) {
  std::vector<BinaryOffset> bad{{RatVector{Rational(1, 3), Rational(0)}, 0}};
  EXPECT_THROW(find_unrepresented(IntMatrix::diagonal({2, 2}), bad, 0), InputError);
}

TEST(Search, KkoExamples) {
  CoprimeCount a = kko_lower_bound({3}, 1, 0, 9);
  EXPECT_EQ(a.count, 6);
  EXPECT_EQ(a.bound, Rational(5));
  CoprimeCount e = kko_lower_bound({}, 4, 7, 11);
  EXPECT_EQ(e.count, 11);
  EXPECT_EQ(e.bound, Rational(11));
  CoprimeCount b = kko_lower_bound({3, 5}, 2, 1, 15);
  EXPECT_EQ(b.bound, Rational(9, 2));
  EXPECT_EQ(b.count, coprime_count({3, 5}, 2, 1, 15));
  EXPECT_GE(Rational(b.count), b.bound);
  EXPECT_THROW(kko_lower_bound({3}, 3, 1, 10), InputError);
}

TEST(Search, KkoMatchesDirectCount) {
  for (IntVector T : {IntVector{3}, IntVector{5, 7}, IntVector{3, 5, 7}})
    for (Int a = 1; a <= 8; ++a)
      for (Int d = 0; d <= 6; ++d) {
        bool ok = true;
        for (Int p : T) ok = ok && a % p != 0;
        if (!ok) continue;
        CoprimeCount c = kko_lower_bound(T, a, d, 25);
        EXPECT_EQ(c.count, coprime_count(T, a, d, 25));
        EXPECT_GE(Rational(c.count), c.bound);
      }
}
