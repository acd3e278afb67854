#include <gtest/gtest.h>

#include "qpoly/io.hpp"

using namespace qpoly;

TEST(Io, ParsesTextForm) {
  QuadPoly f = parse_form("quadpoly n=3 G=[[2,0,0],[0,2,0],[0,0,2]] L=[1,1,1] c=0");
  EXPECT_EQ(f.gram2(), IntMatrix::diagonal({2, 2, 2}));
  EXPECT_EQ(f.linear2(), (IntVector{2, 2, 2}));
  EXPECT_EQ(f.constant(), 0);
  QuadPoly t = parse_form("tri 1,2,3");
  EXPECT_EQ(t, TriangularForm({1, 2, 3}).to_quadpoly());
  QuadPoly h = parse_form("quadpoly n=1 G=[[1]] L=[1/2] c=0");
  EXPECT_EQ(h.linear2(), (IntVector{1}));
  EXPECT_EQ(evaluate(h, {3}), Rational(6));
}

TEST(Io, ParsesJsonForm) {
  QuadPoly f = parse_form(R"({"n": 2, "G": [[2,1],[1,2]], "L": [1,0], "c": 4})");
  EXPECT_EQ(f.gram2(), (IntMatrix{{2, 1}, {1, 2}}));
  EXPECT_EQ(f.linear2(), (IntVector{2, 0}));
  EXPECT_EQ(f.constant(), 4);
  EXPECT_EQ(parse_form(R"({"tri": [1,1,1]})"), TriangularForm({1, 1, 1}).to_quadpoly());
}

TEST(Io, FormatRoundTrips) {
  for (const char* text : {"quadpoly n=3 G=[[2,1,0],[1,4,-1],[0,-1,6]] L=[1,-2,3] c=-5", "tri 1,1,5",
                           "quadpoly n=1 G=[[1]] L=[1/2] c=0"}) {
    QuadPoly f = parse_form(text);
    EXPECT_EQ(parse_form(format_form(f)), f) << text;
    EXPECT_EQ(quadpoly_from_json(to_json(f)), f);
  }
}

TEST(Io, ParseErrorsCarryPositions) {
  try {
    parse_form("quadpoly n=2 G=[[2,0],[0,2]] L=[1,x] c=0");
    FAIL() << "no ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 34u);
  }
  EXPECT_THROW(parse_form("quadpoly n=2 G=[[2,0],[0,2]] L=[1] c=0"), InputError);
  EXPECT_THROW(parse_form(""), ParseError);
  EXPECT_THROW(parse_form("{\"G\": [[2]]"), ParseError);
  EXPECT_THROW(parse_int_list("1,,2"), ParseError);
  EXPECT_THROW(parse_matrix("[[1,2],[3]]"), InputError);
}

TEST(Io, Lists) {
  EXPECT_EQ(parse_int_list("1,-2,3"), (IntVector{1, -2, 3}));
  EXPECT_EQ(parse_int_list("[4, 5]"), (IntVector{4, 5}));
  EXPECT_EQ(parse_rat_list("1/2,-3/4,2"), (RatVector{Rational(1, 2), Rational(-3, 4), Rational(2)}));
  EXPECT_EQ(parse_matrix("[[8,0],[0,8]]"), IntMatrix::diagonal({8, 8}));
  EXPECT_EQ(parse_triangular("tri 3,1,2"), TriangularForm({1, 2, 3}));
  EXPECT_EQ(parse_triangular("1,1,1"), TriangularForm({1, 1, 1}));
}

TEST(Io, RationalJson) {
  EXPECT_EQ(rational_to_json(Rational(3)), Json(3));
  Json half = rational_to_json(Rational(-1, 2));
  EXPECT_EQ(half["num"], -1);
  EXPECT_EQ(half["den"], 2);
  EXPECT_EQ(rational_from_json(half), Rational(-1, 2));
  Wide big = Wide(1) << 100;
  EXPECT_EQ(wide_from_json(wide_to_json(big)), big);
}

TEST(Io, VerdictRoundTrips) {
  LocalVerdict lv = represents_locally(parse_form("tri 1,1"), 7, 5);
  EXPECT_EQ(local_verdict_from_json(to_json(lv)), lv);
  RegularityVerdict rv = is_regular_up_to(TriangularForm({1, 1, 7}), 300);
  EXPECT_EQ(regularity_verdict_from_json(to_json(rv)), rv);
  AffineTransform t{IntMatrix{{1, 1}, {0, 1}}, {2, -3}};
  EXPECT_EQ(transform_from_json(to_json(t)), t);
}

TEST(Io, ReportRoundTrips) {
  SearchConfig c;
  c.disc_bound = 20;
  c.verify_N = 500;
  SearchReport r = enumerate_regular_ternary(c);
  EXPECT_EQ(search_report_from_json(to_json(r)), r);
  SearchReport u = escalate_universal_ternary(SearchConfig{});
  EXPECT_EQ(search_report_from_json(to_json(u)), u);
  Json s = summary_json(u);
  EXPECT_EQ(s["record"], "summary");
  EXPECT_FALSE(s.contains("candidates"));
}
