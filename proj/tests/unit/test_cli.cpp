#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

std::string temp_path(const std::string& name) {
  return (std::string(::testing::TempDir()) + "/qtet_cli_" + name);
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome run(const std::string& args) {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  const std::string err_path = temp_path(std::string(info->name()) + "_" + std::to_string(::getpid()) + ".err");
  const std::string cmd = std::string("'") + QTET_CLI_PATH + "' " + args + " 2>'" + err_path + "'";
  FILE* p = ::popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  const int status = ::pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, slurp(err_path)};
}

const std::string kFixtures = QTET_FIXTURE_DIR;

}  // namespace

TEST(Cli, SixjPrintsValue) {
  const Outcome r = run("sixj --r 7 --colors 2,2,2,2,2,2");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_NEAR(j["value"]["re"].get<double>(), 5.850855075327142, 1e-12);
  EXPECT_NEAR(j["log_abs"].get<double>(), std::log(5.850855075327142), 1e-12);
  const Outcome q = run("sixj --r 7 --colors 2,2,2,2,2,2 --method qdilog");
  ASSERT_EQ(q.code, 0) << q.err;
  EXPECT_NEAR(nlohmann::json::parse(q.out)["value"]["re"].get<double>(), 5.850855075327142, 1e-7);
}

TEST(Cli, UsageErrorsExitTwo) {
  const Outcome even = run("sixj --r 6 --colors 2,2,2,2,2,2");
  EXPECT_EQ(even.code, 2);
  EXPECT_NE(even.err.find("r must be odd"), std::string::npos);
  const Outcome inadm = run("sixj --r 7 --colors 1,0,0,0,0,0");
  EXPECT_EQ(inadm.code, 2);
  EXPECT_NE(inadm.err.find("admissible"), std::string::npos);
  EXPECT_EQ(run("sixj --r 7 --colors 1,0,0").code, 2);
  EXPECT_EQ(run("sixj --r 7").code, 2);
  EXPECT_EQ(run("sixj --r 7 --colors 0,0,0,0,0,0 --method qdilog").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("sixj --r seven --colors 0,0,0,0,0,0").code, 2);
  EXPECT_EQ(run("dft --r 11 --partition 9 --colors 4,4,4,4,4,4").code, 2);
  EXPECT_EQ(run("tv --tri /nonexistent.tri --r 5").code, 2);
  EXPECT_EQ(run("tv --tri '" + kFixtures + "/single_tet.tri' --r 5 --b 0,0").code, 2);
  EXPECT_EQ(run("phi --r 11 --z 1.0 --eps 1.5").code, 2);
  EXPECT_EQ(run("geom --partition 1 --theta-j 0.3").code, 2);
  EXPECT_EQ(run("verify-cdft --partition 1 --theta-j 0.3 --rs 51:151:50").code, 2);
  EXPECT_EQ(run("verify-cdft --partition '' --theta-j 0.3 --rs 51,101").code, 2);
  EXPECT_EQ(run("verify-cdft --partition '' --theta-j 0.9 --rs 51:151:50").code, 2);
  EXPECT_EQ(run("verify-cdft --partition '' --theta-j 0.3 --rs 50:150:50").code, 2);
  EXPECT_EQ(run("verify-cdft --partition '' --theta-j 0.3 --rs 51:151:50 --format xml").code, 2);
}

TEST(Cli, NumericFailuresExitOne) {
  EXPECT_EQ(run("dft --r 21 --partition 1,2 --colors 10,10,10,10,10,10 --budget 5").code, 1);
  EXPECT_EQ(run("geom --partition 1,2 --theta 2.5").code, 1);
  const Outcome pole = run("phi --r 7 --z -0.448798950512828");
  EXPECT_EQ(pole.code, 1);
  EXPECT_NE(pole.err.find("pole"), std::string::npos);
}

TEST(Cli, GeomJson) {
  const Outcome r = run("geom --partition 1,2 --theta 0.1,0.1,0.1,0.1,0.1,0.1");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_GT(j["vol"].get<double>(), 0.0);
  EXPECT_LT(j["gram_det"].get<double>(), 0.0);
  EXPECT_EQ(j["jac"].size(), 2U);
  EXPECT_EQ(j["partition"], "1,2");
  const Outcome split = run("geom --partition 1,2 --theta-i 0.1,0.1 --theta-j 0.1");
  ASSERT_EQ(split.code, 0);
  EXPECT_EQ(split.out, r.out);
}

TEST(Cli, DftAndTv) {
  const Outcome d = run("dft --r 11 --partition 1 --colors 4,4,4,4,4,4 --threads 2");
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_TRUE(nlohmann::json::parse(d.out)["yhat"].contains("log_abs"));
  const Outcome t = run("tv --tri '" + kFixtures + "/single_tet.tri' --r 5 --b 0");
  ASSERT_EQ(t.code, 0) << t.err;
  const auto j = nlohmann::json::parse(t.out);
  EXPECT_EQ(j["edges"], 6);
  EXPECT_EQ(j["b"].size(), 6U);
  EXPECT_TRUE(j["value"]["re"].is_number());
}

TEST(Cli, PhiNearHalfPi) {
  const Outcome r = run("phi --r 101 --z 1.5707963");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  // Close to Li2(-1) = -pi^2/12 with an O(1/r^2) correction.
  EXPECT_NEAR(j["value"]["re"].get<double>(), -0.8224670334241132, 1e-3);
  EXPECT_NEAR(j["value"]["im"].get<double>(), 0.0, 1e-6);
}

TEST(Cli, VerifyCdftReport) {
  const std::string out = temp_path("rep.json");
  const Outcome r = run("verify-cdft --partition '' --theta-j 0.3,0.3,0.3,0.3,0.3,0.3 --rs 51:201:50 --out '" + out + "'");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto j = nlohmann::json::parse(slurp(out));
  EXPECT_EQ(j["schema"], 1);
  ASSERT_EQ(j["rows"].size(), 4U);
  for (std::size_t k = 1; k < 4; ++k) {
    EXPECT_LT(j["rows"][k]["growth_err"].get<double>(), j["rows"][k - 1]["growth_err"].get<double>());
  }
  EXPECT_TRUE(j["fit"]["ok"].get<bool>());

  const Outcome csv = run("verify-cdft --partition '' --theta 0.3 --rs 51:151:50 --format csv");
  ASSERT_EQ(csv.code, 0) << csv.err;
  EXPECT_EQ(csv.out.rfind("r,re_yhat,im_yhat,re_rhs,im_rhs,abs_ratio,arg_ratio,growth_err", 0), 0U);
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 4);
}

TEST(Cli, SkippedRowsWarnButSucceed) {
  const Outcome r = run("verify-cdft --partition 1,2 --theta 2.5 --max-angle 3 --rs 51:151:50");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("3 row(s) skipped"), std::string::npos);
  EXPECT_EQ(nlohmann::json::parse(r.out)["skipped"], 3);
}

TEST(Cli, DeterministicOutput) {
  for (const std::string& args : {std::string("geom --partition 2 --theta 0.2"),
                                  std::string("verify-cdft --partition 1 --theta 0.3 --rs 21:41:10 --threads 3"),
                                  std::string("sixj --r 51 --colors 30,32,34,28,30,32")}) {
    const Outcome a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << args << a.err;
    EXPECT_EQ(a.out, b.out) << args;
  }
}

TEST(Cli, HelpExitsZero) {
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("sixj --help").code, 0);
}
