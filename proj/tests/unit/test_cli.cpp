#include "commands.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace cstar::cli;

namespace {

struct Result {
  int code;
  Json out;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, Json::parse(out.str())};
}

std::string temp_file(const std::string& name, const std::string& body) {
  std::string path = testing::TempDir() + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST(Cli, NormExample) {
  auto r = run_cli({"norm", "--presentation", "matrix:2", "--point", "(gen 0)", "--prec", "10"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out["format"], format_tag);
  EXPECT_EQ(r.out["lo"], "1");
  EXPECT_EQ(r.out["hi"], "1");
  // the same point by code
  auto s = run_cli({"norm", "--presentation", "matrix:2", "--code", r.out["code"], "--prec", "10"});
  EXPECT_EQ(s.out.dump(), r.out.dump());
}

TEST(Cli, JiangSuParamsExample) {
  auto r = run_cli({"jiangsu", "params", "--stage", "0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out["k"], "13");
  EXPECT_EQ(r.out["l"], "17");
  EXPECT_EQ(r.out["p1"], "26");
  EXPECT_EQ(r.out["q1"], "51");
  EXPECT_EQ(r.out["r"], "17");
  EXPECT_EQ(r.out["s"], "13");
  EXPECT_EQ(r.out["alpha"], "1");
  EXPECT_EQ(r.out["beta"], "4");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  auto bad = run_cli({"norm", "--presentation", "cuntz:2", "--point", "(gen 0)"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_EQ(bad.out["error"], "parse");
  EXPECT_EQ(run_cli({"norm", "--presentation", "matrix:2", "--point", "(gen 9)"}).code, 2);
  // stage 1 of the Jiang-Su maps is beyond desk scale
  auto big = run_cli({"jiangsu", "verify", "--stage", "1"});
  EXPECT_EQ(big.code, 3);
  EXPECT_EQ(big.out["error"], "infeasible");
  // an almost unitary that is not within the stated bound is a parse-level error
  std::string f = temp_file("half.txt", "1\n1/2\n");
  EXPECT_EQ(run_cli({"polar", "--matrix", f, "--n", "5", "--eps", "1/4"}).code, 2);
}

TEST(Cli, EncodeDecodeRoundTrip) {
  auto e = run_cli({"encode", "--point", "(add (gen 0) (scal 1/2 -3 (adj (gen 1))))"});
  ASSERT_EQ(e.code, 0);
  auto d = run_cli({"decode", "--code", e.out["code"]});
  EXPECT_EQ(d.out["point"], e.out["point"]);
  EXPECT_TRUE(d.out["canonical"].get<bool>());
  EXPECT_FALSE(run_cli({"decode", "--code", "5"}).out["canonical"].get<bool>());
}

TEST(Cli, PolarSchurLogPath) {
  std::string u = temp_file("u.txt", "2\n3/5 -4/5\n4/5 3/5\n");
  std::string v = temp_file("v.txt", "2\n0 1\n1 0\n");
  auto p = run_cli({"polar", "--matrix", u, "--n", "10"});
  EXPECT_EQ(p.code, 0);
  EXPECT_EQ(p.out["taylor_order"], 11);
  auto s = run_cli({"schur-log", "--matrix", u, "--prec", "30"});
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(s.out["eigenvalues"].size(), 2u);
  auto w = run_cli({"path", "--u", u, "--v", v, "--t", "1/3", "--prec", "20"});
  EXPECT_EQ(w.code, 0);
  EXPECT_EQ(w.out["w"].size(), 2u);
}

TEST(Cli, IntertwineConfigs) {
  std::string demo = temp_file("demo.json", R"j({"a": "uhf:2^inf", "b": "tensor(uhf:2^inf,uhf:2^inf)",
    "phi": "id-tensor-unit", "supplier": "uhf-legs", "stages": 3})j");
  auto r = run_cli({"intertwine", "--config", demo});
  ASSERT_EQ(r.code, 0);
  ASSERT_EQ(r.out["stages"].size(), 3u);
  for (const auto& st : r.out["stages"])
    for (const auto& m : st["margins"]) EXPECT_EQ(m, "0");
  EXPECT_EQ(run_cli({"intertwine", "--config", demo}).out.dump(), r.out.dump());

  std::string sab = temp_file("sab.json", R"j({"a": "matrix:1", "b": "tensor(matrix:1,matrix:2)",
    "supplier": "identity", "stages": 1, "budget": 20, "b_prefix": ["(gen 0)"]})j");
  auto f = run_cli({"intertwine", "--config", sab});
  EXPECT_EQ(f.code, 3);
  EXPECT_EQ(f.out["failure"]["stage"], 1);
  EXPECT_EQ(f.out["failure"]["best_margins"][0], "1/2");

  std::string bad = temp_file("bad.json", R"j({"a": "matrix:1", "b": "tensor(matrix:1,matrix:2)", "phi": "swap"})j");
  EXPECT_EQ(run_cli({"intertwine", "--config", bad}).code, 2);
  std::string junk = temp_file("junk.json", "{ not json");
  EXPECT_EQ(run_cli({"intertwine", "--config", junk}).code, 2);
}

TEST(Cli, UhfDemo) {
  auto r = run_cli({"uhf", "demo", "--stages", "2", "--prec", "20"});
  ASSERT_EQ(r.code, 0);
  ASSERT_EQ(r.out["stages"].size(), 2u);
  for (const auto& st : r.out["stages"]) {
    EXPECT_EQ(st["half_flip"]["commutator"], "0");
    EXPECT_EQ(st["half_flip"]["absorption"], "0");
  }
}
