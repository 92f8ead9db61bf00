#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pglhyp/cli.hpp"

using namespace pglhyp;

namespace {

struct Outcome {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "pglhyp");
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::string kPoints = "[0,1,0];[1,0,1];[1,1,0]";

}  // namespace

TEST(Cli, ClassifyReportsCriteriaAndOracle) {
  const Outcome r = invoke({"classify", "--p", "5", "--points", kPoints});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["command"], "classify");
  EXPECT_EQ(j["field"]["p"], 5);
  EXPECT_TRUE(j.contains("oracle"));
  EXPECT_TRUE(j["triangle"].contains("criteria"));
}

TEST(Cli, DegenerateInputIsAResultNotAnError) {
  const Outcome r = invoke({"classify", "--p", "5", "--points", "[1,0,0];[1,0,1];[1,1,0]"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("DegenerateInput"), std::string::npos);
}

TEST(Cli, VerifyMainAtQ5) {
  const Outcome r = invoke({"verify-main", "--p", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["table"]["total_triples"], 2300);
  EXPECT_EQ(j["table"]["violations"], 0);
  EXPECT_EQ(j["holds"], true);
}

TEST(Cli, TangentOverGF9IsTheSubfieldGroup) {
  const Outcome r = invoke({"tangent", "--p", "3", "--n", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json g = r.json()["group"];
  EXPECT_EQ(g["tag"], "PGL");
  EXPECT_EQ(g["q0"], 3);
  EXPECT_EQ(g["order"], 24);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"enumerate", "--p", "5", "--mode", "sample", "--sample", "200", "--seed", "4"};
  const Outcome a = invoke(args);
  const Outcome b = invoke(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const Outcome full1 = invoke({"enumerate", "--p", "5", "--jobs", "1"});
  const Outcome full3 = invoke({"enumerate", "--p", "5", "--jobs", "3"});
  EXPECT_EQ(full1.out, full3.out);
}

TEST(Cli, TsvAndDotFormats) {
  const Outcome t = invoke({"classify", "--p", "5", "--points", kPoints, "--format", "tsv"});
  ASSERT_EQ(t.code, 0);
  EXPECT_EQ(t.out.substr(0, t.out.find('\n')),
            "p0\tp1\tp2\tclass\tproper\tsnsp\tpsl_count\tgroup\tthin\trc\tft\thypertope\tlabels");
  const Outcome e = invoke({"enumerate", "--p", "3", "--format", "tsv"});
  EXPECT_EQ(e.out.substr(0, e.out.find('\n')), "class\tgroup\tpsl_count\tcount\thypertope");
  const Outcome d = invoke({"geometry", "--p", "5", "--points", kPoints, "--format", "dot"});
  ASSERT_EQ(d.code, 0);
  EXPECT_EQ(d.out.rfind("graph coset_geometry {", 0), 0U);
  EXPECT_EQ(invoke({"enumerate", "--p", "3", "--format", "dot"}).code, kExitParse);
  EXPECT_EQ(invoke({"enumerate", "--p", "3", "--format", "xml"}).code, kExitParse);
}

TEST(Cli, AtomicWriteLeavesOnlyTheTarget) {
  const auto dir = std::filesystem::temp_directory_path() / "pglhyp_cli_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto target = dir / "tangent.json";
  const Outcome r = invoke({"tangent", "--p", "7", "--out", target.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(target);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), invoke({"tangent", "--p", "7"}).out);
  EXPECT_EQ(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator()), 1);
  std::filesystem::remove_all(dir);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
  EXPECT_EQ(invoke({}).code, kExitParse);
  EXPECT_EQ(invoke({"classify", "--p", "5", "--points", "[1,2];[0,1,0]"}).code, kExitParse);
  EXPECT_EQ(invoke({"classify", "--p", "4", "--points", kPoints}).code, kExitParse);
  EXPECT_EQ(invoke({"tangent", "--p", "3", "--n", "2", "--modulus", "[2,0,1]"}).code, kExitParse);
  EXPECT_EQ(invoke({"triality", "--p", "7"}).code, kExitParse);
  EXPECT_EQ(invoke({"nonlinear-pgl", "--p", "3"}).code, kExitVerification);
  EXPECT_EQ(invoke({"tangent", "--p", "7", "--budget", "10"}).code, kExitBudget);
  const Outcome tri = invoke({"triality", "--p", "3", "--n", "3"});
  EXPECT_EQ(tri.code, kExitOk);
  EXPECT_EQ(tri.json()["verified"], true);
}

TEST(Cli, ExperimentPsl) {
  const Outcome r = invoke({"experiment-psl", "--p", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json s = r.json()["summary"];
  EXPECT_EQ(s["triples_in_psl"], 455);
  EXPECT_EQ(s["generating_psl"], 380);
}
