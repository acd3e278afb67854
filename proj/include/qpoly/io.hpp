#pragma once

/**
 * @file io.hpp
 * @brief Text and JSON formats for forms, and JSON (de)serialization of
 *        verdicts and reports.
 *
 * Text format:
 *
 *     quadpoly n=3 G=[[2,0,0],[0,2,0],[0,0,2]] L=[1,1,1] c=0
 *     tri 1,2,3
 *
 * G is twice the quadratic coefficient matrix and L holds the linear
 * coefficients themselves, which may be halves ("1/2"). The JSON form uses
 * the same field names, or {"tri": [1,2,3]}.
 */

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qpoly/arith.hpp"
#include "qpoly/coset.hpp"
#include "qpoly/local.hpp"
#include "qpoly/matrix.hpp"
#include "qpoly/quadpoly.hpp"
#include "qpoly/search.hpp"
#include "qpoly/triangular.hpp"

namespace qpoly {

using Json = nlohmann::ordered_json;

/// Text or JSON form; throws ParseError with a byte offset on malformed input.
QuadPoly parse_form(std::string_view text);
/// "tri a,b,c" or a bare list "a,b,c".
TriangularForm parse_triangular(std::string_view text);

std::string format_form(const QuadPoly& f);

/// "1,2,3" or "[1,2,3]".
IntVector parse_int_list(std::string_view text);
/// Entries are integers or fractions "p/q".
RatVector parse_rat_list(std::string_view text);
/// "[[a,b],[c,d]]".
IntMatrix parse_matrix(std::string_view text);

Json wide_to_json(Wide v);
Wide wide_from_json(const Json& j);
/// Integers stay plain numbers; other values become {"num": p, "den": q}.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const IntVector& v);
Json to_json(const RatVector& v);
Json to_json(const IntMatrix& m);
Json to_json(const QuadPoly& f);
Json to_json(const AffineTransform& t);
Json to_json(const Completion& c);
Json to_json(const LocalVerdict& v);
Json to_json(const RegularityVerdict& v);
Json to_json(const TriangularForm& d);
Json to_json(const Candidate& c);
Json to_json(const PruneStep& s);
Json to_json(const SearchConfig& c);
/// Summary record of a report (everything except candidates).
Json summary_json(const SearchReport& r);
Json to_json(const SearchReport& r);

IntVector int_vector_from_json(const Json& j);
RatVector rat_vector_from_json(const Json& j);
IntMatrix matrix_from_json(const Json& j);
QuadPoly quadpoly_from_json(const Json& j);
AffineTransform transform_from_json(const Json& j);
LocalVerdict local_verdict_from_json(const Json& j);
RegularityVerdict regularity_verdict_from_json(const Json& j);
Candidate candidate_from_json(const Json& j);
PruneStep prune_step_from_json(const Json& j);
SearchConfig search_config_from_json(const Json& j);
SearchReport search_report_from_json(const Json& j);

}  // namespace qpoly
