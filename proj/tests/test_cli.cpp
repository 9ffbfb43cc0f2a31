#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "gaussforge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = gaussforge::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const std::string kSextic = "Z1^6+Z2^6+Z3*Z4*Z0^4";

}  // namespace

TEST(Cli, MalformedPolynomial) {
  const auto r = run({"analyze", "-p", "3", "-N", "2", "-f", "Z0^2 + + Z1^2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("syntax error at position"), std::string::npos);
}

TEST(Cli, NonHomogeneousAndBadField) {
  EXPECT_EQ(run({"strange", "-p", "3", "-N", "1", "-f", "Z0^2+Z1"}).code, 2);
  EXPECT_EQ(run({"strange", "-p", "4", "-N", "1", "-f", "Z0^2+Z1^2"}).code, 2);
  EXPECT_EQ(run({"strange", "-p", "3"}).code, 2);
}

TEST(Cli, SingularPoint) {
  const auto r = run({"kappa", "-p", "3", "-N", "4", "-f", kSextic, "--point", "1,0,0,0,0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("singular point"), std::string::npos);
}

TEST(Cli, PointNotOnVariety) {
  EXPECT_EQ(run({"kappa", "-p", "3", "-N", "4", "-f", kSextic, "--point", "1,1,0,0,0"}).code, 2);
}

TEST(Cli, FiberSextic) {
  const auto r = run({"fiber", "-p", "3", "-N", "4", "-f", kSextic, "--point", "1,1,1,1,1", "-m", "2", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], "v1");
  EXPECT_EQ(j["closure_size"], 10);
  EXPECT_EQ(j["groups"].size(), 1u);
  EXPECT_EQ(j["groups"][0]["kappa_plane"]["dim"], 2);
}

TEST(Cli, KappaJson) {
  const auto r = run({"kappa", "-p", "3", "-N", "4", "-f", kSextic, "--point", "1,1,1,1,1", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rank"], 1);
  EXPECT_EQ(j["gamma"], nlohmann::json::parse(R"(["1","0","0","1","1"])"));
  EXPECT_EQ(j["kappa"]["dim"], 2);
  EXPECT_EQ(j["kappa_plucker"]["coords"].size(), 10u);
}

TEST(Cli, StrangeText) {
  const auto r = run({"strange", "-p", "3", "-N", "3", "-f", "Z0^5+Z1^5-Z2^3*Z3^2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("(0:0:1:0): not a cone vertex"), std::string::npos);
}

TEST(Cli, AnalyzeQuadricAndOutputFile) {
  const std::string path = ::testing::TempDir() + "gaussforge_cli_test.json";
  const auto r = run({"analyze", "-p", "7", "-N", "3", "-f", "Z0^2+Z1^2+Z2^2+Z3^2", "--format", "json", "-o", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["separability"], "separable");
  EXPECT_EQ(j["generic_rank"], 2);
  EXPECT_EQ(j["image_dim_estimate"], 2);
  EXPECT_EQ(j["strange_locus"]["dim"], -1);
  std::remove(path.c_str());
}

TEST(Cli, BudgetFlagAndEnvironment) {
  const auto r = run({"analyze", "-p", "3", "-N", "4", "-f", kSextic, "-m", "4", "--budget", "1000"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("budget"), std::string::npos);
  setenv("GAUSSFORGE_BUDGET", "1000", 1);
  EXPECT_EQ(run({"analyze", "-p", "3", "-N", "4", "-f", kSextic, "-m", "4"}).code, 2);
  EXPECT_EQ(run({"analyze", "-p", "3", "-N", "4", "-f", kSextic, "-m", "2", "--budget", "1e6"}).code, 0);
  unsetenv("GAUSSFORGE_BUDGET");
}

TEST(Cli, SameSeedSameBytes) {
  const std::vector<std::string> args{"analyze", "-p", "3", "-k", "2", "-N", "3", "-f", "Z0^5+Z1^5-Z2^3*Z3^2", "--format", "json", "--seed", "7"};
  EXPECT_EQ(run(args).out, run(args).out);
}
