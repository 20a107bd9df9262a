#include "cvhg/cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace cvhg;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return fixtures::data_path(name); }

}  // namespace

TEST(cli, nullifiers_golden) {
  CliRun r = run({"nullifiers", "--graph", data("paper_example.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out,
            "H0 = p0\nH1 = p1 - q2*q3\nH2 = p2 - q1*q3\nH3 = p3 - q1*q2 - q4\nH4 = p4 - q3\n"
            "annihilation: ok\ncommutators: ok\n");
}

TEST(cli, teleport_golden) {
  CliRun r = run({"teleport", "--t", "1", "--m", "0.5"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("output: e^{ip3q1} F1 CZ(1,3) Z1(0.5) · exp(i[q1q2q3]) |q=1,0p,0p,0p,p=0.5⟩\n"),
            std::string::npos);
  EXPECT_EQ(run({"teleport", "--t", "0"}).code, kExitDomain);
}

TEST(cli, measure_script_matches_teleport) {
  CliRun a = run({"measure", "--graph", data("teleport_cell.json"), "--script", data("cell_script.json")});
  CliRun b = run({"teleport", "--t", "1", "--m", "0.5"});
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
}

TEST(cli, cubic_golden) {
  CliRun r = run({"cubic", "--gamma", "0.1", "--m", "1", "--n", "-0.5"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out,
            "ancilla: F2^† S2(10) CZ(1,2) F1^† CZ(0,1) · exp(i[0]) |psi,0p,0p⟩\n"
            "output:  Z0(-0.4) · exp(i[0.1q0^3]) |psi,p=-0.5,p=1⟩\n");
  EXPECT_EQ(run({"cubic", "--gamma", "0"}).code, kExitDomain);
}

TEST(cli, to_cluster_and_protocol) {
  CliRun r = run({"to-cluster", "--rows", "1", "--cols", "1", "--outcomes", "all=2"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("exp(i[2q0q1 + 2q0q2 + 2q1q3 + 2q2q3])"), std::string::npos);
  EXPECT_NE(r.out.find("anti_squeeze"), std::string::npos);
  CliRun p = run({"protocol", "--protocol", "to-cluster", "--rows", "1", "--cols", "1", "--outcomes", "all=2"});
  EXPECT_EQ(p.out, r.out);
  EXPECT_EQ(run({"to-cluster", "--rows", "1", "--cols", "1", "--outcomes", "0=1"}).code, kExitDomain);
}

TEST(cli, dot_output) {
  std::string path = ::testing::TempDir() + "cvhg_cli_dot.dot";
  CliRun r = run({"to-cluster", "--rows", "1", "--cols", "1", "--outcomes", "all=1", "--dot", path});
  EXPECT_EQ(r.code, kExitOk);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_NE(ss.str().find("q0 -- q1;"), std::string::npos);
  EXPECT_EQ(ss.str().find("q4;"), std::string::npos);
  std::remove(path.c_str());
}

TEST(cli, irreducible_is_reported) {
  CliRun r = run({"measure", "--graph", data("four_edge.json"), "--script", data("four_edge_script.json")});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("irreducible: coupling of degree 3"), std::string::npos);
}

TEST(cli, bad_input_exit_codes) {
  EXPECT_EQ(run({"nullifiers", "--graph", data("corrupted.json")}).code, kExitDomain);
  EXPECT_EQ(run({"nullifiers", "--graph", data("missing.json")}).code, kExitDomain);
  EXPECT_EQ(run({}).code, kExitDomain);
  EXPECT_EQ(run({"verify", "no-such-scenario"}).code, kExitDomain);
}

TEST(cli, verify_failure_exit_code) {
  CliRun r = run({"verify", "nullifier-variance", "--grid-n", "2"});
  EXPECT_EQ(r.code, kExitVerify);
  CliRun ok = run({"verify", "cubic-ancilla"});
  EXPECT_EQ(ok.code, kExitOk);
  EXPECT_NE(ok.out.find("cubic-ancilla: PASS"), std::string::npos);
}

TEST(cli, sample_is_deterministic) {
  std::vector<std::string> args{"sample", "--graph", data("empty_1.json"), "--seed", "3", "--r", "0"};
  CliRun a = run(args), b = run(args);
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
}
