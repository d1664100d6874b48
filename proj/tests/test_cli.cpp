#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(KDVVAR_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, p)) r.out += buf;
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::filesystem::path temp_dir(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("kdvvar_cli_" + name);
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST(Cli, Help) { EXPECT_EQ(run("--help").code, 0); }

TEST(Cli, ClassifyCase1) {
  auto r = run("regime classify --a 12 --b -7.2");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"regime\": \"Case1\""), std::string::npos);
  EXPECT_NE(r.out.find("\"C\": 1.0"), std::string::npos);
}

TEST(Cli, InfeasiblePowerSum) { EXPECT_EQ(run("powersum m --A 1 --B 1.2").code, 1); }

TEST(Cli, ParseErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("nosuch").code, 2);
  EXPECT_EQ(run("regime classify --a 12").code, 2);
  EXPECT_EQ(run("powersum solve --system three --A 1 --B 1").code, 2);
}

TEST(Cli, Hessian) {
  auto r = run("powersum hessian --gamma 1 --delta 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("-2721600"), std::string::npos);
}

TEST(Cli, SolitonThenMassdecomp) {
  auto d = temp_dir("soliton");
  EXPECT_EQ(run("soliton --speeds 1 --max-order 0 --out " + d.string()).code, 0);
  ASSERT_TRUE(std::filesystem::exists(d / "soliton.csv"));
  auto r = run("massdecomp --profile " + (d / "soliton.csv").string());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"sites\""), std::string::npos);
  auto e = run("energy --profile " + (d / "soliton.csv").string());
  EXPECT_EQ(e.code, 0);
}

TEST(Cli, MinimizeConfig) {
  auto d = temp_dir("minimize");
  {
    std::ofstream f(d / "ok.json");
    f << R"({"a": 12, "b": -7.2, "init": "scaled_sech"})";
    std::ofstream g(d / "unknown.json");
    g << R"({"a": 12, "b": -7.2, "bogus": 1})";
    std::ofstream h(d / "broken.json");
    h << "{\"a\": 12,";
    std::ofstream i(d / "infeasible.json");
    i << R"({"a": 12, "b": -9})";
  }
  EXPECT_EQ(run("minimize --config " + (d / "ok.json").string() + " --out " + d.string()).code, 0);
  EXPECT_TRUE(std::filesystem::exists(d / "iterations.csv"));
  EXPECT_TRUE(std::filesystem::exists(d / "profile.csv"));
  EXPECT_TRUE(std::filesystem::exists(d / "result.json"));
  EXPECT_EQ(run("minimize --config " + (d / "unknown.json").string() + " --out " + d.string()).code, 2);
  EXPECT_EQ(run("minimize --config " + (d / "broken.json").string() + " --out " + d.string()).code, 2);
  EXPECT_EQ(run("minimize --config " + (d / "infeasible.json").string() + " --out " + d.string()).code, 1);
}

TEST(Cli, VerifyFast) {
  auto r = run("verify fast --json");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"passed\": true"), std::string::npos);
}
