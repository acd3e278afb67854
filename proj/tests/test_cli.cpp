#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qpoly/cli.hpp"
#include "qpoly/io.hpp"

using namespace qpoly;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<Json> lines(const std::string& text) {
  std::vector<Json> v;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) v.push_back(Json::parse(line));
  return v;
}

Json strip_seconds(Json j) {
  if (j.is_object()) j.erase("seconds");
  return j;
}

}  // namespace

TEST(Cli, Eval) {
  Result r = call({"eval", "--form", "tri 1", "--at", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["value"], 6);
  EXPECT_EQ(j["decided"], true);
}

TEST(Cli, TriangularChecks) {
  Json e = Json::parse(call({"tri", "--coeffs", "1,1,1", "--check", "eight"}).out);
  EXPECT_EQ(e["universal"], true);
  Json n = Json::parse(call({"tri", "--coeffs", "1,1,3", "--check", "universal", "--bound", "100"}).out);
  EXPECT_EQ(n["universal"], false);
  EXPECT_EQ(n["truant"], 8);
  Json d = Json::parse(call({"tri", "--coeffs", "1,3,9", "--check", "descend", "--prime", "3"}).out);
  EXPECT_EQ(d["descended"], to_json(TriangularForm({1, 3, 3})));
}

TEST(Cli, LocalInsoluble) {
  Result r = call({"local", "--form", "quadpoly n=2 G=[[2,0],[0,2]] L=[0,0] c=0", "--target", "3", "--prime", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["soluble"], false);
}

TEST(Cli, CosetLattice) {
  Result r = call({"coset", "--gram", "[[8,0,0],[0,8,0],[0,0,8]]", "--shift", "1/2,1/2,1/2", "--lattice"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["discriminant"], 16);
  EXPECT_EQ(j["index"], 2);
}

TEST(Cli, SearchUniversalJsonLines) {
  Result r = call({"search", "universal"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto v = lines(r.out);
  ASSERT_EQ(v.size(), 8u);
  EXPECT_EQ(v.back()["record"], "summary");
}

TEST(Cli, SearchIsDeterministicModuloTiming) {
  std::vector<std::string> args{"search", "regular", "--disc-bound", "20", "--verify-n", "300", "--jobs", "2"};
  auto a = lines(call(args).out);
  auto b = lines(call(args).out);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(strip_seconds(a[i]), strip_seconds(b[i]));
}

TEST(Cli, CsvOutput) {
  Result r = call({"search", "universal", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("1 1 5,"), std::string::npos);
  EXPECT_THROW(Json::parse(r.out), Json::parse_error);
}

TEST(Cli, OutputAndInputFiles) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "qpoly_cli_test";
  fs::create_directories(dir);
  {
    std::ofstream in(dir / "forms.txt");
    in << "tri 1,1,1\n\ntri 1,2\n";
  }
  fs::path outp = dir / "out.jsonl";
  Result r = call({"--output", outp.string(), "eval", "--input", (dir / "forms.txt").string(), "--at", "1,1,1"});
  EXPECT_EQ(r.code, 1);
  r = call({"--output", outp.string(), "reduce", "--input", (dir / "forms.txt").string()});
  EXPECT_EQ(r.code, 1);
  {
    std::ofstream in(dir / "forms.txt");
    in << "tri 1,1,1\ntri 1,1,2\n";
  }
  r = call({"--output", outp.string(), "eval", "--input", (dir / "forms.txt").string(), "--at", "1,2,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(outp);
  std::stringstream buf;
  buf << f.rdbuf();
  auto v = lines(buf.str());
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v[0]["value"], 4);
  EXPECT_EQ(v[1]["value"], 4);
  fs::remove_all(dir);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(call({"eval", "--form", "quadpoly n=1 G=[[x]] L=[0] c=0", "--at", "1"}).code, 1);
  EXPECT_EQ(call({"nonsense"}).code, 1);
  EXPECT_EQ(call({"tri", "--coeffs", "0,1"}).code, 1);
  Result b = call({"--budget", "1", "local", "--form", "tri 1,3,9", "--target", "1000", "--prime", "3"});
  EXPECT_EQ(b.code, 2);
  EXPECT_EQ(Json::parse(b.out)["decided"], false);
}

TEST(Cli, BudgetFromEnvironment) {
  ::setenv("QPOLY_BUDGET", "1", 1);
  Result b = call({"local", "--form", "tri 1,3,9", "--target", "1000", "--prime", "3"});
  ::setenv("QPOLY_BUDGET", "junk", 1);
  Result bad = call({"eval", "--form", "tri 1", "--at", "1"});
  ::unsetenv("QPOLY_BUDGET");
  EXPECT_EQ(b.code, 2);
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(call({"eval", "--form", "tri 1", "--at", "1"}).code, 0);
}
