#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  std::string cmd = std::string(SEPSTAB_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::set<std::string> lines(const std::string& text) {
  std::set<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.insert(l);
  return out;
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::path(::testing::TempDir()) / ("sepstab_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST(Cli, SeparableExitCodes) {
  EXPECT_EQ(run("separable 'a b'").status, 0);
  CliRun ns = run("separable 'a b A B'");
  EXPECT_EQ(ns.status, 1);
  EXPECT_NE(ns.out.find("verdict NotSeparable"), std::string::npos);
  EXPECT_NE(ns.out.find("graph \"ball\""), std::string::npos);
  EXPECT_EQ(run("separable 'a1 t1' --group 'S2*Z'").status, 2);
  EXPECT_EQ(run("separable 'a x'").status, 65);
  EXPECT_EQ(run("separable 'a A'").status, 65);
  EXPECT_EQ(run("separable 'a' --group 'S2*S2'").status, 65);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").status, 64);
  EXPECT_EQ(run("frobnicate").status, 64);
  EXPECT_EQ(run("check-stability schottky2 --window 1").status, 64);
  EXPECT_EQ(run("whitehead 'a b' --sampled").status, 64);
  EXPECT_EQ(run("--help").status, 0);
}

TEST(Cli, StabilityVerdicts) {
  CliRun pass = run("check-stability schottky2 -L 4");
  EXPECT_EQ(pass.status, 0);
  EXPECT_NE(pass.out.find("Pass certified at depth (L,N,W) = (4,16,24)"), std::string::npos);
  CliRun fail = run("check-stability examples/pinched-a -L 3");
  EXPECT_EQ(fail.status, 1);
  EXPECT_NE(fail.out.find("witness a "), std::string::npos);
  EXPECT_EQ(run("check-stability no-such-thing").status, 65);
}

TEST(Cli, ExamplesRoundTripThroughFiles) {
  fs::path d = scratch("examples");
  ASSERT_EQ(run("examples --write " + d.string()).status, 0);
  ASSERT_TRUE(fs::exists(d / "schottky2.rep"));
  CliRun from_file = run("check-stability " + (d / "schottky2.rep").string() + " -L 3");
  CliRun built_in = run("check-stability schottky2 -L 3");
  EXPECT_EQ(from_file.status, 0);
  // Identical apart from the representation label line.
  EXPECT_EQ(from_file.out.substr(from_file.out.find('\n')), built_in.out.substr(built_in.out.find('\n')));
  EXPECT_EQ(run("examples --show schottky2").out, slurp(d / "schottky2.rep"));
}

TEST(Cli, WhiteheadDotFiles) {
  fs::path d = scratch("dot");
  fs::path out = d / "g.dot";
  ASSERT_EQ(run("whitehead 'a1 t1 b1 T1' --group 'S2*Z' --dot " + out.string()).status, 0);
  EXPECT_EQ(slurp(out).rfind("graph \"ball\" {", 0), 0u);
  EXPECT_TRUE(fs::exists(d / "g.surface1.dot"));
  fs::path sampled = d / "s.dot";
  ASSERT_EQ(run("whitehead 'a1 t1 b1 T1' --group 'S2*Z' --sampled --rep s2-times-z --depth 3 --dot " +
                sampled.string())
                .status,
            0);
  // Sampling may repeat an edge, so compare distinct lines.
  EXPECT_EQ(lines(slurp(out)), lines(slurp(sampled)));
}

TEST(Cli, CsvAndSweepOutputs) {
  fs::path d = scratch("csv");
  ASSERT_EQ(run("check-stability schottky2 -L 2 --csv " + (d / "e.csv").string()).status, 0);
  std::string csv = slurp(d / "e.csv");
  EXPECT_EQ(csv.substr(0, csv.find("\r\n")),
            "element,length,separable,trace_re,trace_im,trans_len,ratio,worst_qg,verdict_flags");
  CliRun sw = run("sweep --family schottky-lambda --grid 1,10 -L 2");
  EXPECT_EQ(sw.status, 0);
  EXPECT_NE(sw.out.find("\r\n1,,,,error,"), std::string::npos);
  EXPECT_NE(sw.out.find("\r\n10,"), std::string::npos);
  CliRun empty = run("sweep --family schottky-lambda --grid ''");
  EXPECT_EQ(empty.out, "lambda,margin,k_est,a_est,verdict,error\r\n");
}

TEST(Cli, ConjugatedRunKeepsVerdict) {
  CliRun r = run("check-stability schottky2 -L 3 --conjugate --seed 9");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("ping-pong verified"), std::string::npos);
}
