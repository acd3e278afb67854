#include "qpoly/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qpoly/coset.hpp"
#include "qpoly/io.hpp"
#include "qpoly/local.hpp"
#include "qpoly/quadpoly.hpp"
#include "qpoly/search.hpp"
#include "qpoly/triangular.hpp"

namespace qpoly {

namespace {

std::uint64_t budget_from_env() {
  const char* env = std::getenv("QPOLY_BUDGET");
  if (!env || !*env) return kDefaultBudget;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw InputError("QPOLY_BUDGET must be a positive integer");
  return v;
}

std::string csv_cell(const Json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

class Emitter {
 public:
  Emitter(std::ostream& out, std::string format) : out_(out), format_(std::move(format)) {}

  /// One record; CSV prints a header before the first record.
  void record(const Json& j) {
    if (format_ == "json") {
      out_ << j.dump() << "\n";
      return;
    }
    if (!header_done_) {
      std::string h;
      for (auto it = j.begin(); it != j.end(); ++it) h += (h.empty() ? "" : ",") + csv_cell(Json(it.key()));
      out_ << h << "\n";
      header_done_ = true;
    }
    std::string row;
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      row += (first ? "" : ",") + csv_cell(it.value());
      first = false;
    }
    out_ << row << "\n";
  }

  /// Search output: candidate rows, then the summary record.
  void search(const SearchReport& r) {
    if (format_ == "json") {
      for (const Candidate& c : r.candidates) record(Json{{"record", "candidate"}, {"candidate", to_json(c)}});
      record(summary_json(r));
      return;
    }
    out_ << "form,discriminant,accepted,universal_up_to,status,descents_survive\n";
    for (const Candidate& c : r.candidates) {
      std::string form;
      for (Int a : c.form.coeffs()) form += (form.empty() ? "" : " ") + std::to_string(a);
      std::string status = c.regularity ? (c.regularity->status == RegularityStatus::regular_up_to_N
                                               ? "regular_up_to_N"
                                               : "counterexample")
                                        : "";
      std::string univ = c.universal_up_to ? (*c.universal_up_to ? "true" : "false") : "";
      bool desc = std::all_of(c.descents.begin(), c.descents.end(), [](const DescentCheck& d) { return d.survives(); });
      out_ << form << "," << to_string(c.form.discriminant()) << "," << (c.accepted ? "true" : "false") << ","
           << univ << "," << status << "," << (desc ? "true" : "false") << "\n";
    }
  }

 private:
  std::ostream& out_;
  std::string format_;
  bool header_done_ = false;
};

std::vector<std::string> read_forms(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(line.substr(first));
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Representation, universality and regularity of integral quadratic polynomials", "qpoly"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  std::string output_path;
  std::optional<std::uint64_t> budget_flag;
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", output_path, "write the report to a file instead of stdout");
  app.add_option("--budget", budget_flag, "enumeration ceiling (default: QPOLY_BUDGET or 1e8)");

  std::string form_text, other_text, input_path, at_text;
  Int target = 0;
  Int prime = 0;
  int max_exp = 0;

  auto* eval = app.add_subcommand("eval", "evaluate a form at an integer vector");
  eval->add_option("--form", form_text, "form text");
  eval->add_option("--input", input_path, "file with one form per line");
  eval->add_option("--at", at_text, "comma-separated integer vector")->required();

  auto* reduce = app.add_subcommand("reduce", "Minkowski-reduce a ternary polynomial");
  reduce->add_option("--form", form_text, "form text");
  reduce->add_option("--input", input_path, "file with one form per line");

  auto* equiv = app.add_subcommand("equiv", "test equivalence of two ternary polynomials");
  equiv->add_option("--form", form_text, "first form")->required();
  equiv->add_option("--other", other_text, "second form")->required();

  auto* local = app.add_subcommand("local", "decide f(x) = a over the p-adic integers");
  local->add_option("--form", form_text, "form text");
  local->add_option("--input", input_path, "file with one form per line");
  local->add_option("--target", target, "target a")->required();
  local->add_option("--prime", prime, "prime p")->required();
  local->add_option("--max-exp", max_exp, "largest exponent for the lifting search");

  std::string coeffs_text, check = "eight";
  Int bound = 5000;
  bool no_toe = false;
  auto* tri = app.add_subcommand("tri", "triangular form checks");
  tri->add_option("--coeffs", coeffs_text, "coefficients, e.g. 1,2,3")->required();
  tri->add_option("--check", check, "universal|regular|eight|represent|local|descend")
      ->check(CLI::IsMember({"universal", "regular", "eight", "represent", "local", "descend"}));
  tri->add_option("--bound", bound, "sweep bound N");
  tri->add_option("--target", target, "target m (represent, local)");
  tri->add_option("--prime", prime, "prime (local, descend)");
  tri->add_flag("--no-toe", no_toe, "decide universality by sieve instead of the five targets");

  std::string gram_text, shift_text;
  std::optional<Int> represent;
  std::optional<std::string> short_bound;
  bool want_lattice = false;
  Int max_den = kDefaultShiftDenominator;
  auto* coset = app.add_subcommand("coset", "lattice cosets M + v");
  coset->add_option("--gram", gram_text, "doubled Gram matrix, e.g. [[8,0],[0,8]]")->required();
  coset->add_option("--shift", shift_text, "shift vector, e.g. 1/2,1/2");
  coset->add_option("--max-den", max_den, "shift denominator bound");
  auto* coset_mode = coset->add_option_group("mode");
  coset_mode->add_option("--represent", represent, "find a vector with Q(x + v) = a");
  coset_mode->add_flag("--lattice", want_lattice, "Gram matrix of M + Zv");
  coset_mode->add_option("--short", short_bound, "all lattice vectors with Q <= bound");
  coset_mode->require_option(1);

  SearchConfig cfg;
  auto* search = app.add_subcommand("search", "search harnesses");
  search->require_subcommand(1);
  auto* s_univ = search->add_subcommand("universal", "escalator over ternary triangular forms");
  s_univ->add_option("--coeff-bound", cfg.coeff_bound, "largest coefficient explored");
  s_univ->add_option("--verify-n", cfg.verify_N, "sieve cross-check bound");
  s_univ->add_flag("--no-toe", no_toe, "accept by sieve instead of the five targets");
  auto* s_reg = search->add_subcommand("regular", "regularity sweep over ternary triangular forms");
  s_reg->add_option("--disc-bound", cfg.disc_bound, "largest discriminant");
  s_reg->add_option("--verify-n", cfg.verify_N, "sweep bound N");
  s_reg->add_option("--jobs", cfg.jobs, "worker threads");

  std::vector<std::string> argv_store{"qpoly"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  std::ofstream file;
  if (!output_path.empty()) {
    file.open(output_path);
    if (!file) {
      err << "error: cannot open output file '" << output_path << "'\n";
      return 1;
    }
  }
  std::ostream& sink = output_path.empty() ? out : file;
  Emitter emit(sink, format);
  std::string command;

  try {
    const std::uint64_t budget = budget_flag ? *budget_flag : budget_from_env();
    cfg.budget = budget;

    auto forms = [&]() {
      if (!input_path.empty()) return read_forms(input_path);
      if (form_text.empty()) throw InputError("either --form or --input is required");
      return std::vector<std::string>{form_text};
    };

    if (eval->parsed()) {
      command = "eval";
      const IntVector x = parse_int_list(at_text);
      for (const std::string& text : forms()) {
        QuadPoly f = parse_form(text);
        if (x.size() != f.n()) throw InputError("--at has the wrong length");
        emit.record(Json{{"decided", true}, {"form", format_form(f)}, {"at", to_json(x)},
                         {"value", rational_to_json(evaluate(f, x))}});
      }
    } else if (reduce->parsed()) {
      command = "reduce";
      for (const std::string& text : forms()) {
        QuadPoly f = parse_form(text);
        ReducedPoly r = minkowski_reduce(f, budget);
        emit.record(Json{{"decided", true},
                         {"form", format_form(f)},
                         {"was_reduced", is_reduced(f, budget)},
                         {"reduced", format_form(r.g)},
                         {"transform", to_json(r.transform)},
                         {"minimum", r.g.constant()}});
      }
    } else if (equiv->parsed()) {
      command = "equiv";
      QuadPoly f = parse_form(form_text);
      QuadPoly g = parse_form(other_text);
      auto t = find_equivalence(f, g, budget);
      emit.record(Json{{"decided", true}, {"equivalent", t.has_value()},
                       {"transform", t ? to_json(*t) : Json(nullptr)}});
    } else if (local->parsed()) {
      command = "local";
      for (const std::string& text : forms()) {
        QuadPoly f = parse_form(text);
        LocalVerdict v = represents_locally(f, target, prime, LocalOptions{max_exp, budget});
        Json j = to_json(v);
        j["decided"] = true;
        j["form"] = format_form(f);
        j["target"] = target;
        emit.record(j);
      }
    } else if (tri->parsed()) {
      command = "tri";
      const TriangularForm d = parse_triangular(coeffs_text);
      Json j{{"decided", true}, {"form", to_json(d)}, {"check", check}};
      if (check == "eight") {
        if (!d.is_primitive()) throw InputError("the five-target criterion needs a primitive form");
        j["universal"] = no_toe ? is_universal_up_to(d, bound) : theorem_of_eight(d);
        j["method"] = no_toe ? "sieve" : "targets 1,2,4,5,8";
        if (no_toe) j["bound"] = bound;
        Json missed = Json::array();
        for (Int m : kEightTargets)
          if (!represents(d, m)) missed.push_back(m);
        j["missed_targets"] = missed;
      } else if (check == "universal") {
        Bitset s = represented_set(d, bound);
        auto gap = s.first_unset();
        j["universal"] = !gap.has_value();
        j["bound"] = bound;
        j["truant"] = gap ? Json(static_cast<Int>(*gap)) : Json(nullptr);
      } else if (check == "regular") {
        TriangularLocalOptions opts;
        opts.local.budget = budget;
        j["verdict"] = to_json(is_regular_up_to(d, bound, kDefaultSieveLimit, opts));
      } else if (check == "represent") {
        auto x = represents(d, target);
        j["target"] = target;
        j["represented"] = x.has_value();
        j["witness"] = x ? to_json(*x) : Json(nullptr);
        j["coset_value"] = wide_to_json(checked::add(checked::mul(8, target), d.coefficient_sum()));
      } else if (check == "local") {
        TriangularLocalOptions opts;
        opts.local.budget = budget;
        j["target"] = target;
        j["verdict"] = to_json(triangular_locally_represents(d, target, prime, opts));
      } else {
        j["prime"] = prime;
        j["descended"] = to_json(descend(d, prime));
      }
      emit.record(j);
    } else if (coset->parsed()) {
      command = "coset";
      IntegralLattice lat(parse_matrix(gram_text));
      RatVector shift = shift_text.empty() ? RatVector(lat.rank(), Rational(0)) : parse_rat_list(shift_text);
      Coset cs(lat, shift, max_den);
      Json j{{"decided", true}, {"gram", to_json(lat.gram2())}, {"shift", to_json(shift)},
             {"integral", cs.is_integral()}};
      if (represent) {
        auto x = coset_represents(cs, *represent, budget);
        j["target"] = *represent;
        j["represented"] = x.has_value();
        j["witness"] = x ? to_json(*x) : Json(nullptr);
      } else if (want_lattice) {
        IntegralLattice l = coset_lattice(cs);
        j["index"] = coset_index(cs);
        j["lattice"] = to_json(l.gram2());
        j["discriminant"] = rational_to_json(l.discriminant());
      } else {
        Json vs = Json::array();
        for (const LatticeVector& v : shortest_vectors(lat, parse_rat_list(*short_bound).at(0), budget))
          vs.push_back(Json{{"x", to_json(v.x)}, {"value", rational_to_json(v.value)}});
        j["bound"] = *short_bound;
        j["vectors"] = vs;
      }
      emit.record(j);
    } else if (search->parsed()) {
      command = "search";
      if (s_univ->parsed()) {
        cfg.use_toe = !no_toe;
        emit.search(escalate_universal_ternary(cfg));
      } else {
        emit.search(enumerate_regular_ternary(cfg));
      }
    }
  } catch (const BudgetExceeded& e) {
    emit.record(Json{{"decided", false}, {"command", command}, {"reason", e.what()}});
    err << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  } catch (const OverflowError& e) {
    err << "overflow: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace qpoly
