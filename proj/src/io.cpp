#include "qpoly/io.hpp"

#include <cctype>
#include <limits>

namespace qpoly {

namespace {

class TextParser {
 public:
  explicit TextParser(std::string_view s, std::size_t base = 0) : s_(s), base_(base) {}

  std::size_t pos() const { return base_ + pos_; }
  bool done() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, pos()); }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(s_.substr(start, pos_ - start));
  }

  /// Text input stays within 64 bits; `wide` admits the full 128-bit range used in JSON strings.
  Wide integer() { return integer_in(false); }
  Rational rational() { return rational_in(false); }
  Rational wide_rational() { return rational_in(true); }

  Wide integer_in(bool wide) {
    skip_ws();
    std::size_t start = pos_;
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      pos_ = start;
      fail("expected an integer");
    }
    Wide v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (wide) {
        try {
          v = checked::add(checked::mul(v, 10), s_[pos_] - '0');
        } catch (const OverflowError&) {
          pos_ = start;
          fail("integer out of 128-bit range");
        }
      } else if ((v = v * 10 + (s_[pos_] - '0')) > std::numeric_limits<Int>::max()) {
        pos_ = start;
        fail("integer out of 64-bit range");
      }
      ++pos_;
    }
    return neg ? -v : v;
  }

  Rational rational_in(bool wide) {
    Wide n = integer_in(wide);
    if (accept('/')) {
      std::size_t at = pos();
      Wide d = integer_in(wide);
      if (d <= 0) throw ParseError("denominator must be positive", at);
      return Rational(n, d);
    }
    return Rational(n);
  }

  template <class Item>
  std::vector<Item> list(Item (TextParser::*item)()) {
    std::vector<Item> out;
    expect('[');
    if (accept(']')) return out;
    do {
      out.push_back((this->*item)());
    } while (accept(','));
    expect(']');
    return out;
  }

  std::vector<Rational> rational_list() { return list(&TextParser::rational); }
  std::vector<Wide> integer_list() { return list(&TextParser::integer); }

  IntMatrix matrix() {
    std::size_t at = pos();
    auto rows = list(&TextParser::integer_list);
    if (rows.empty()) throw ParseError("matrix must not be empty", at);
    IntMatrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows[0].size()) throw ParseError("matrix rows differ in length", at);
      for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = static_cast<Int>(rows[i][j]);
    }
    return m;
  }

  /// Comma-separated integers, with or without brackets.
  IntVector bare_int_list() {
    std::vector<Wide> v;
    if (peek() == '[') {
      v = integer_list();
    } else {
      do {
        v.push_back(integer());
      } while (accept(','));
    }
    IntVector out;
    for (Wide x : v) out.push_back(static_cast<Int>(x));
    return out;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string_view s_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

IntVector doubled_linear(const RatVector& l, std::size_t at) {
  IntVector out;
  for (const Rational& r : l) {
    Rational d = r * Rational(2);
    if (!d.is_integer()) throw ParseError("linear coefficients must be integers or halves", at);
    out.push_back(checked::narrow(d.num()));
  }
  return out;
}

QuadPoly build_form(std::optional<Wide> n, const IntMatrix& g, const std::optional<RatVector>& l, Wide c,
                    std::size_t at) {
  if (n && *n != static_cast<Wide>(g.rows())) throw ParseError("n does not match the size of G", at);
  RatVector lin = l ? *l : RatVector(g.rows(), Rational(0));
  if (lin.size() != g.rows()) throw ParseError("L length does not match the size of G", at);
  try {
    return QuadPoly(g, doubled_linear(lin, at), checked::narrow(c));
  } catch (const ParseError&) {
    throw;
  } catch (const InputError& e) {
    throw ParseError(e.what(), at);
  }
}

Rational rational_from_text(const std::string& s) {
  TextParser p(s);
  Rational r = p.wide_rational();
  if (!p.done()) p.fail("trailing characters in number");
  return r;
}

}  // namespace

TriangularForm parse_triangular(std::string_view text) {
  TextParser p(text);
  if (p.peek() == 't') {
    if (p.identifier() != "tri") p.fail("expected 'tri'");
  }
  std::size_t at = p.pos();
  IntVector coeffs = p.bare_int_list();
  if (!p.done()) p.fail("trailing characters after coefficient list");
  try {
    return TriangularForm(coeffs);
  } catch (const InputError& e) {
    throw ParseError(e.what(), at);
  }
}

QuadPoly parse_form(std::string_view text) {
  TextParser p(text);
  if (p.done()) p.fail("empty form");
  if (p.peek() == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("invalid JSON form: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
    }
    try {
      return quadpoly_from_json(j);
    } catch (const ParseError&) {
      throw;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("malformed JSON form: ") + e.what(), 0);
    } catch (const InputError& e) {
      throw ParseError(e.what(), 0);
    }
  }
  std::size_t kw_at = p.pos();
  std::string kw = p.identifier();
  if (kw == "tri") return parse_triangular(text).to_quadpoly();
  if (kw != "quadpoly") throw ParseError("expected 'quadpoly', 'tri' or a JSON object", kw_at);

  std::optional<Wide> n;
  std::optional<IntMatrix> g;
  std::optional<RatVector> l;
  Wide c = 0;
  while (!p.done()) {
    std::size_t key_at = p.pos();
    std::string key = p.identifier();
    p.expect('=');
    if (key == "n") {
      n = p.integer();
    } else if (key == "G") {
      g = p.matrix();
    } else if (key == "L") {
      l = p.rational_list();
    } else if (key == "c") {
      c = p.integer();
    } else {
      throw ParseError("unknown field '" + key + "'", key_at);
    }
  }
  if (!g) throw ParseError("missing G", p.pos());
  return build_form(n, *g, l, c, kw_at);
}

std::string format_form(const QuadPoly& f) {
  std::string out = "quadpoly n=" + std::to_string(f.n()) + " G=[";
  for (std::size_t i = 0; i < f.n(); ++i) {
    out += i ? ",[" : "[";
    for (std::size_t j = 0; j < f.n(); ++j) out += (j ? "," : "") + std::to_string(f.gram2()(i, j));
    out += "]";
  }
  out += "] L=[";
  for (std::size_t i = 0; i < f.n(); ++i) out += (i ? "," : "") + Rational(f.linear2()[i], 2).str();
  out += "] c=" + std::to_string(f.constant());
  return out;
}

IntVector parse_int_list(std::string_view text) {
  TextParser p(text);
  IntVector v = p.bare_int_list();
  if (!p.done()) p.fail("trailing characters after list");
  return v;
}

RatVector parse_rat_list(std::string_view text) {
  TextParser p(text);
  RatVector v;
  if (p.peek() == '[') {
    v = p.rational_list();
  } else {
    do {
      v.push_back(p.rational());
    } while (p.accept(','));
  }
  if (!p.done()) p.fail("trailing characters after list");
  return v;
}

IntMatrix parse_matrix(std::string_view text) {
  TextParser p(text);
  IntMatrix m = p.matrix();
  if (!p.done()) p.fail("trailing characters after matrix");
  return m;
}

Json wide_to_json(Wide v) {
  if (v >= std::numeric_limits<Int>::min() && v <= std::numeric_limits<Int>::max()) return Json(static_cast<Int>(v));
  return Json(to_string(v));
}

Wide wide_from_json(const Json& j) {
  if (j.is_number_integer()) return j.get<Int>();
  if (j.is_string()) {
    Rational r = rational_from_text(j.get<std::string>());
    if (!r.is_integer()) throw InputError("expected an integer");
    return r.num();
  }
  throw InputError("expected an integer");
}

Json rational_to_json(const Rational& r) {
  if (r.is_integer()) return wide_to_json(r.num());
  return Json{{"num", wide_to_json(r.num())}, {"den", wide_to_json(r.den())}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_object()) return Rational(wide_from_json(j.at("num")), wide_from_json(j.at("den")));
  if (j.is_string()) return rational_from_text(j.get<std::string>());
  return Rational(wide_from_json(j));
}

Json to_json(const IntVector& v) {
  Json j = Json::array();
  for (Int x : v) j.push_back(x);
  return j;
}

Json to_json(const RatVector& v) {
  Json j = Json::array();
  for (const Rational& x : v) j.push_back(rational_to_json(x));
  return j;
}

Json to_json(const IntMatrix& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) j.push_back(to_json(m.row(i)));
  return j;
}

Json to_json(const QuadPoly& f) {
  RatVector l;
  for (Int x : f.linear2()) l.push_back(Rational(x, 2));
  return Json{{"n", f.n()}, {"G", to_json(f.gram2())}, {"L", to_json(l)}, {"c", f.constant()}};
}

Json to_json(const AffineTransform& t) { return Json{{"T", to_json(t.t)}, {"x0", to_json(t.x0)}}; }

Json to_json(const Completion& c) {
  return Json{{"v", to_json(c.v)}, {"m_f", rational_to_json(c.m_f)}, {"m_int", c.m_int}, {"argmin", to_json(c.argmin)}};
}

Json to_json(const LocalVerdict& v) {
  Json j{{"p", v.p}, {"soluble", v.soluble}, {"method", to_string(v.method)}, {"depth", v.depth}};
  if (v.witness)
    j["witness"] = Json{{"residue", to_json(v.witness->residue)}, {"exponent", v.witness->exponent}};
  else
    j["witness"] = nullptr;
  return j;
}

Json to_json(const RegularityVerdict& v) {
  Json j{{"status", v.status == RegularityStatus::regular_up_to_N ? "regular_up_to_N" : "counterexample"}, {"N", v.N}};
  if (v.witness) {
    Json local = Json::array();
    for (const LocalVerdict& lv : v.witness->local) local.push_back(to_json(lv));
    j["witness"] = Json{{"m", v.witness->m},
                        {"local", local},
                        {"search",
                         {{"target", wide_to_json(v.witness->search.target)},
                          {"max_odd", to_json(v.witness->search.max_odd)}}}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

Json to_json(const TriangularForm& d) { return to_json(d.coeffs()); }

Json to_json(const Candidate& c) {
  Json j{{"form", to_json(c.form)}, {"discriminant", wide_to_json(c.form.discriminant())}, {"accepted", c.accepted}};
  j["universal_up_to"] = c.universal_up_to ? Json(*c.universal_up_to) : Json(nullptr);
  j["regularity"] = c.regularity ? to_json(*c.regularity) : Json(nullptr);
  Json d = Json::array();
  for (const DescentCheck& dc : c.descents)
    d.push_back(Json{{"q", dc.q}, {"descended", to_json(dc.descended)}, {"survives", dc.survives()},
                     {"verdict", to_json(dc.verdict)}});
  j["descents"] = d;
  return j;
}

Json to_json(const PruneStep& s) {
  return Json{{"prefix", to_json(s.prefix)},
              {"truant", s.truant},
              {"next_low", s.next_low},
              {"next_high", s.next_high},
              {"truncated", s.truncated}};
}

Json to_json(const SearchConfig& c) {
  return Json{{"coeff_bound", c.coeff_bound}, {"disc_bound", c.disc_bound}, {"verify_N", c.verify_N},
              {"budget", c.budget},           {"jobs", c.jobs},             {"use_toe", c.use_toe}};
}

Json summary_json(const SearchReport& r) {
  Json pruning = Json::array();
  for (const PruneStep& s : r.pruning) pruning.push_back(to_json(s));
  return Json{{"record", "summary"},
              {"kind", r.kind},
              {"config", to_json(r.config)},
              {"examined", r.examined},
              {"accepted", r.candidates.size()},
              {"exhaustive", r.exhaustive},
              {"coverage", r.coverage},
              {"pruning", pruning},
              {"seconds", r.seconds}};
}

Json to_json(const SearchReport& r) {
  Json j = summary_json(r);
  Json c = Json::array();
  for (const Candidate& x : r.candidates) c.push_back(to_json(x));
  j["candidates"] = c;
  return j;
}

IntVector int_vector_from_json(const Json& j) {
  IntVector v;
  for (const Json& x : j) v.push_back(checked::narrow(wide_from_json(x)));
  return v;
}

RatVector rat_vector_from_json(const Json& j) {
  RatVector v;
  for (const Json& x : j) v.push_back(rational_from_json(x));
  return v;
}

IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("matrix must be a nonempty array of rows");
  IntMatrix m(j.size(), j[0].size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    IntVector row = int_vector_from_json(j[i]);
    if (row.size() != m.cols()) throw InputError("matrix rows differ in length");
    for (std::size_t k = 0; k < row.size(); ++k) m(i, k) = row[k];
  }
  return m;
}

QuadPoly quadpoly_from_json(const Json& j) {
  if (j.contains("tri")) return TriangularForm(int_vector_from_json(j.at("tri"))).to_quadpoly();
  std::optional<Wide> n;
  if (j.contains("n")) n = wide_from_json(j.at("n"));
  std::optional<RatVector> l;
  if (j.contains("L")) l = rat_vector_from_json(j.at("L"));
  Wide c = j.contains("c") ? wide_from_json(j.at("c")) : 0;
  return build_form(n, matrix_from_json(j.at("G")), l, c, 0);
}

AffineTransform transform_from_json(const Json& j) {
  return AffineTransform{matrix_from_json(j.at("T")), int_vector_from_json(j.at("x0"))};
}

LocalVerdict local_verdict_from_json(const Json& j) {
  LocalVerdict v;
  v.p = j.at("p").get<Int>();
  v.soluble = j.at("soluble").get<bool>();
  v.method = local_method_from_string(j.at("method").get<std::string>());
  v.depth = j.at("depth").get<int>();
  if (!j.at("witness").is_null())
    v.witness = LocalWitness{int_vector_from_json(j.at("witness").at("residue")),
                             j.at("witness").at("exponent").get<int>()};
  return v;
}

RegularityVerdict regularity_verdict_from_json(const Json& j) {
  RegularityVerdict v;
  const std::string status = j.at("status").get<std::string>();
  if (status == "regular_up_to_N")
    v.status = RegularityStatus::regular_up_to_N;
  else if (status == "counterexample")
    v.status = RegularityStatus::counterexample;
  else
    throw InputError("unknown regularity status '" + status + "'");
  v.N = j.at("N").get<Int>();
  if (!j.at("witness").is_null()) {
    const Json& w = j.at("witness");
    RegularityCounterexample cx;
    cx.m = w.at("m").get<Int>();
    for (const Json& lv : w.at("local")) cx.local.push_back(local_verdict_from_json(lv));
    cx.search.target = wide_from_json(w.at("search").at("target"));
    cx.search.max_odd = int_vector_from_json(w.at("search").at("max_odd"));
    v.witness = std::move(cx);
  }
  return v;
}

Candidate candidate_from_json(const Json& j) {
  Candidate c;
  c.form = TriangularForm(int_vector_from_json(j.at("form")));
  c.accepted = j.at("accepted").get<bool>();
  if (!j.at("universal_up_to").is_null()) c.universal_up_to = j.at("universal_up_to").get<bool>();
  if (!j.at("regularity").is_null()) c.regularity = regularity_verdict_from_json(j.at("regularity"));
  for (const Json& d : j.at("descents")) {
    DescentCheck dc;
    dc.q = d.at("q").get<Int>();
    dc.descended = TriangularForm(int_vector_from_json(d.at("descended")));
    dc.verdict = regularity_verdict_from_json(d.at("verdict"));
    c.descents.push_back(std::move(dc));
  }
  return c;
}

PruneStep prune_step_from_json(const Json& j) {
  PruneStep s;
  s.prefix = int_vector_from_json(j.at("prefix"));
  s.truant = j.at("truant").get<Int>();
  s.next_low = j.at("next_low").get<Int>();
  s.next_high = j.at("next_high").get<Int>();
  s.truncated = j.at("truncated").get<bool>();
  return s;
}

SearchConfig search_config_from_json(const Json& j) {
  SearchConfig c;
  c.coeff_bound = j.at("coeff_bound").get<Int>();
  c.disc_bound = j.at("disc_bound").get<Int>();
  c.verify_N = j.at("verify_N").get<Int>();
  c.budget = j.at("budget").get<std::uint64_t>();
  c.jobs = j.at("jobs").get<unsigned>();
  c.use_toe = j.at("use_toe").get<bool>();
  return c;
}

SearchReport search_report_from_json(const Json& j) {
  SearchReport r;
  r.kind = j.at("kind").get<std::string>();
  r.config = search_config_from_json(j.at("config"));
  r.examined = j.at("examined").get<Int>();
  r.exhaustive = j.at("exhaustive").get<bool>();
  r.coverage = j.at("coverage").get<std::string>();
  r.seconds = j.at("seconds").get<double>();
  for (const Json& s : j.at("pruning")) r.pruning.push_back(prune_step_from_json(s));
  if (j.contains("candidates"))
    for (const Json& c : j.at("candidates")) r.candidates.push_back(candidate_from_json(c));
  return r;
}

}  // namespace qpoly
