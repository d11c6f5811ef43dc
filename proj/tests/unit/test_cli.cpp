#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "sesqui_cli.hpp"

namespace sesqui::cli {
namespace {

struct Invocation {
  int code;
  std::string out, err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "sesqui");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::string kData = SESQUI_TEST_DATA;

TEST(Cli, AnalyzeExample) {
  const Invocation r = invoke({"analyze", "--curve", kData + "/circle.curve"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["class"], "circle");
  EXPECT_EQ(j["case"], "II");
  EXPECT_DOUBLE_EQ(j["rho"].get<double>(), -4.0);
  EXPECT_LT(j["max_residual"].get<double>(), 1e-8);
  ASSERT_EQ(j["equations"].size(), 4u);
  for (const auto& e : j["equations"]) EXPECT_TRUE(e["pass"].get<bool>());
  EXPECT_EQ(j["frenet"]["order"], 2);
  EXPECT_NEAR(j["frenet"]["curvatures"][0]["max"].get<double>(), 2.0, 1e-9);
  EXPECT_TRUE(j["independence"]["independent"].get<bool>());
  EXPECT_TRUE(j["case4"].is_null());
}

TEST(Cli, AnalyzeIsByteIdentical) {
  const Invocation a = invoke({"analyze", "--curve", kData + "/circle.curve", "--grid", "64"});
  const Invocation b = invoke({"analyze", "--curve", kData + "/circle.curve", "--grid", "64"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, AnalyzeGeodesic) {
  const Invocation r = invoke({"analyze", "--curve", kData + "/geodesic.curve", "--open", "--t1", "1", "--grid", "32"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["class"], "geodesic");
  EXPECT_TRUE(j["case"].is_null());
  EXPECT_TRUE(j["solve_delta"]["any_delta"].get<bool>());
  EXPECT_NE(j["solve_delta"]["notes"][0].get<std::string>().find("any delta admissible"), std::string::npos);
}

TEST(Cli, RejectsBadInput) {
  Invocation r = invoke({"analyze", "--curve", kData + "/not_legendre.curve"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("max |eta(T)|"), std::string::npos) << r.err;
  EXPECT_TRUE(r.out.empty());

  r = invoke({"analyze", "--curve", kData + "/lifted.curve", "--open", "--t0", "0.1", "--t1", "1.5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("unit speed"), std::string::npos);

  EXPECT_EQ(invoke({"analyze", "--curve", kData + "/missing.curve"}).code, 2);
  EXPECT_EQ(invoke({"analyze", "--curve", kData + "/circle.curve", "--grid", "8"}).code, 2);
  EXPECT_EQ(invoke({"analyze", "--curve", kData + "/circle.curve", "--tol", "0"}).code, 2);
  EXPECT_EQ(invoke({"analyze", "--curve", kData + "/circle.curve", "--c", "1"}).code, 2);
  EXPECT_EQ(invoke({"analyze"}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);

  const auto path = std::filesystem::temp_directory_path() / "sesqui_bad.curve";
  std::ofstream(path) << "n=2\nsin(2*t\n0\n0\n0\n1\n";
  r = invoke({"analyze", "--curve", path.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
  std::filesystem::remove(path);
}

TEST(Cli, VerifyExample) {
  Invocation r = invoke({"verify-example"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["status"], "PASS");
  EXPECT_NEAR(j["requested_delta"]["biharmonic_norm"].get<double>(), 8.0, 1e-6);

  r = invoke({"verify-example", "--delta1", "0", "--delta2", "1"});
  ASSERT_EQ(r.code, 0);
  j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["requested_delta"]["max_residual"].get<double>(), 8.0, 1e-6);

  r = invoke({"verify-example", "--minus-sign"});
  ASSERT_EQ(r.code, 0);
  j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["status"], "PASS");
  ASSERT_EQ(j["notes"].size(), 1u);
  EXPECT_NE(j["notes"][0].get<std::string>().find("c = -3"), std::string::npos);
}

TEST(Cli, VerifyExampleReportsFailedChecks) {
  const Invocation r = invoke({"verify-example", "--grid", "16", "--tol", "10"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("failed checks"), std::string::npos);
}

std::vector<std::string> csv_rows(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) rows.push_back(line);
  return rows;
}

TEST(Cli, ScanCases) {
  Invocation r = invoke({"scan", "--case", "II", "--c", "-3", "--k1", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "requested_case,case,c,k1,k2,alpha0,rho,feasible,geodesic_only,rho_nonzero,failed_constraints,note");
  EXPECT_EQ(rows[1], "II,II,-3,2,0,,-4,true,false,true,\"\",\"\"");

  r = invoke({"scan", "--case", "I", "--c", "1", "--k1", "0.6", "--k2", "0.8"});
  rows = csv_rows(r.out);
  EXPECT_NE(rows[1].find("excluded: requires delta1/delta2 != 0"), std::string::npos);
  EXPECT_NE(rows[1].find(",false,"), std::string::npos);

  r = invoke({"scan", "--case", "IV", "--c", "-3", "--k1", "1", "--k2", "1", "--alpha", "0.7853981633974483"});
  rows = csv_rows(r.out);
  EXPECT_EQ(rows[1].substr(0, 6), "IV,IV,");
  EXPECT_NE(rows[1].find(",true,false,true,\"\""), std::string::npos) << rows[1];

  r = invoke({"scan", "--case", "III", "--c", "0", "--k1", "1", "--k2", "1"});
  rows = csv_rows(r.out);
  EXPECT_NE(rows[1].find("c > 1"), std::string::npos) << rows[1];
}

TEST(Cli, ScanGridIsOrderedAndThreadIndependent) {
  const Invocation a = invoke({"scan", "--case", "II", "--c", "-5:1:7", "--k1", "0.2:2:9", "--threads", "1"});
  const Invocation b = invoke({"scan", "--case", "II", "--c", "-5:1:7", "--k1", "0.2:2:9", "--threads", "4"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(csv_rows(a.out).size(), 1u + 63u);
  EXPECT_EQ(invoke({"scan", "--case", "V"}).code, 2);
  EXPECT_EQ(invoke({"scan", "--c", "1:2"}).code, 2);
  EXPECT_EQ(invoke({"scan", "--c", "1:2:0"}).code, 2);
}

TEST(Cli, Flow) {
  Invocation r = invoke({"flow", "--curve", kData + "/circle.curve", "--grid", "32", "--steps", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0], "step,energy,max_defect,analyzer_residual");
  double prev = 1e300;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double e = std::stod(rows[i].substr(rows[i].find(',') + 1));
    EXPECT_LE(e, prev);
    prev = e;
  }
  r = invoke({"flow", "--curve", kData + "/circle.curve", "--grid", "32", "--steps", "0"});
  EXPECT_EQ(csv_rows(r.out).size(), 2u);
  EXPECT_EQ(invoke({"flow", "--curve", kData + "/circle.curve", "--rate", "0"}).code, 2);
  EXPECT_EQ(invoke({"flow", "--curve", kData + "/circle.curve", "--rate", "-1"}).code, 2);
}

TEST(Cli, OutFileMatchesStdout) {
  const auto path = std::filesystem::temp_directory_path() / "sesqui_report.json";
  const Invocation a = invoke({"analyze", "--curve", kData + "/circle.curve", "--grid", "32", "--out", path.string()});
  ASSERT_EQ(a.code, 0);
  EXPECT_TRUE(a.out.empty());
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  EXPECT_EQ(s.str(), invoke({"analyze", "--curve", kData + "/circle.curve", "--grid", "32"}).out);
  std::filesystem::remove(path);
}

TEST(Cli, JsonFormatting) {
  nlohmann::ordered_json j;
  j["a"] = 0.1;
  j["b"] = std::numeric_limits<double>::quiet_NaN();
  j["c"] = nlohmann::ordered_json::array({1, 0.25});
  EXPECT_EQ(to_json_text(j), "{\n  \"a\": 0.10000000000000001,\n  \"b\": null,\n  \"c\": [\n    1,\n    0.25\n  ]\n}\n");
  EXPECT_EQ(format_number(1e300 * 1e300), "inf");
}

TEST(Cli, ExecutableExitCodes) {
  const std::string exe = SESQUI_CLI_PATH;
  EXPECT_EQ(std::system((exe + " verify-example > /dev/null").c_str()), 0);
  const int bad = std::system((exe + " analyze --curve " + kData + "/not_legendre.curve 2> /dev/null").c_str());
  EXPECT_EQ(WEXITSTATUS(bad), 2);
}

}  // namespace
}  // namespace sesqui::cli
