#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "genreach/game_format.hpp"
#include "genreach/generators.hpp"
#include "genreach/json_io.hpp"
#include "genreach_cli/cli.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace genreach;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("genreach_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    auto p = (dir_ / name).string();
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const std::string kFig1 = oracle::fixture("fig1.gr");
const std::string kQbf1 = oracle::fixture("qbf1.qdimacs");

}  // namespace

TEST_F(Cli, SolveFig1Text) {
  auto r = run({"solve", kFig1});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("method: fpt"), std::string::npos);
  EXPECT_NE(r.out.find("winner from c: eve"), std::string::npos);
  EXPECT_NE(r.out.find("adam region: d"), std::string::npos);
}

TEST_F(Cli, SolveFig1Json) {
  auto r = run({"solve", kFig1, "--json", "--strategies"});
  ASSERT_EQ(r.code, cli::kOk);
  auto doc = json::parse(r.out);
  EXPECT_EQ(doc["command"], "solve");
  EXPECT_EQ(doc["tool_version"], std::string(cli::kVersion));
  EXPECT_EQ(doc["input"]["digest"], "fnv1a64:" + cli::fnv1a_hex(oracle::read(kFig1)));
  const auto& res = doc["result"];
  EXPECT_EQ(res["method"], "fpt");
  EXPECT_EQ(res["winner_from_init"], "eve");
  EXPECT_EQ(res["winner"]["d"], "adam");
  EXPECT_EQ(res["eve_strategy"]["states"], 3);
}

TEST_F(Cli, SolveDot) {
  auto r = run({"solve", kFig1, "--dot"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out.rfind("digraph", 0), 0u);
  EXPECT_NE(r.out.find(kEveFill), std::string::npos);
  EXPECT_EQ(run({"solve", kFig1, "--dot", "--json"}).code, cli::kUsage);
}

TEST_F(Cli, AutoMethodSelection) {
  auto single = write("single.gr",
                      "genreach 1\ncolors 2\nvertex v0 eve\nvertex a eve 1\nvertex b adam 2\n"
                      "edge v0 a\nedge a b\nedge b b\nedge b a\ninit v0\n");
  auto r = run({"solve", single, "--json"});
  ASSERT_EQ(r.code, cli::kOk);
  auto doc = json::parse(r.out);
  EXPECT_EQ(doc["result"]["method"], "singleton");
  auto fpt = json::parse(run({"solve", single, "--json", "--method", "fpt"}).out);
  EXPECT_EQ(doc["result"]["winner"], fpt["result"]["winner"]);

  auto adam = write("adam.gr",
                    "genreach 1\ncolors 1\nvertex x adam 1\nvertex y adam 1\n"
                    "edge x y\nedge y x\ninit x\n");
  EXPECT_EQ(json::parse(run({"solve", adam, "--json"}).out)["result"]["method"], "opponent");
  auto one = write("one.gr",
                   "genreach 1\ncolors 1\nvertex x eve 1\nvertex y eve 1\n"
                   "edge x y\nedge y x\ninit x\n");
  EXPECT_EQ(json::parse(run({"solve", one, "--json"}).out)["result"]["method"], "oneplayer2");
}

TEST_F(Cli, SingletonOnWrongGameIsInvalid) {
  auto adam = write("adam.gr",
                    "genreach 1\ncolors 1\nvertex x adam 1\nvertex y adam 1\n"
                    "edge x y\nedge y x\ninit x\n");
  auto r = run({"solve", adam, "--method", "singleton"});
  EXPECT_EQ(r.code, cli::kInvalid);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST_F(Cli, ParseErrorsAndUsage) {
  auto bad = write("bad.gr", "genreach 1\ncolors 2\nvertex x eve 3\nedge x x\n");
  auto r = run({"solve", bad});
  EXPECT_EQ(r.code, cli::kParse);
  EXPECT_NE(r.err.find("line 3"), std::string::npos);
  EXPECT_EQ(run({"solve", path("missing.gr")}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"solve", kFig1, "--method", "magic"}).code, cli::kUsage);
  EXPECT_EQ(run({"--version"}).code, cli::kOk);
}

TEST_F(Cli, ColorCap) {
  auto g = gen_random({.n = 5, .k = 6, .seed = 2});
  auto file = write("wide.gr", serialize_game(g));
  EXPECT_EQ(run({"solve", file, "--method", "fpt", "--color-cap", "4"}).code, cli::kInvalid);
  EXPECT_EQ(run({"solve", file, "--method", "fpt"}).code, cli::kOk);
}

TEST_F(Cli, MinimaxMethodAndBudget) {
  auto r = run({"solve", kFig1, "--method", "minimax", "--json"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_EQ(json::parse(r.out)["result"]["winner_from_init"], "eve");
  EXPECT_EQ(run({"solve", kFig1, "--method", "minimax", "--budget", "1"}).code, cli::kBudget);
}

TEST_F(Cli, BatchDirectory) {
  write("b.gr", oracle::read(kFig1));
  write("a.gr", serialize_game(gen_flower(2)));
  write("ignored.txt", "nothing");
  auto r = run({"solve", dir_.string(), "--json"});
  ASSERT_EQ(r.code, cli::kOk);
  auto doc = json::parse(r.out);
  ASSERT_EQ(doc["files"].size(), 2u);
  EXPECT_NE(doc["files"][0]["input"]["file"].get<std::string>().find("a.gr"), std::string::npos);
  EXPECT_NE(doc["files"][1]["input"]["file"].get<std::string>().find("b.gr"), std::string::npos);
  write("c.gr", "junk\n");
  EXPECT_EQ(run({"solve", dir_.string()}).code, cli::kParse);
}

TEST_F(Cli, Qbf) {
  auto r = run({"qbf", kQbf1, "--via", "both", "--json"});
  ASSERT_EQ(r.code, cli::kOk);
  auto doc = json::parse(r.out);
  EXPECT_EQ(doc["result"]["value"], true);
  EXPECT_EQ(doc["result"]["agree"], true);
  auto contra = write("contra.qdimacs", "p cnf 1 2\ne 1 0\n1 0\n-1 0\n");
  auto c = run({"qbf", contra, "--via", "both"});
  EXPECT_EQ(c.code, cli::kOk);
  EXPECT_EQ(c.out, "false\n");
  auto bad = write("bad.qdimacs", "p cnf 3 1\ne 1 0\n1 5 0\n");
  EXPECT_EQ(run({"qbf", bad}).code, cli::kParse);
}

TEST_F(Cli, Gen) {
  auto r = run({"gen", "flower", "--k", "3"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_EQ(parse_game(r.out).n(), 10u);
  EXPECT_EQ(run({"gen", "fig5"}).out, run({"gen", "fig5"}).out);
  auto a = run({"gen", "random", "--n", "20", "--k", "3", "--seed", "7"});
  auto b = run({"gen", "random", "--n", "20", "--k", "3", "--seed", "7", "-o", path("r.gr")});
  ASSERT_EQ(a.code, cli::kOk);
  EXPECT_EQ(a.out, oracle::read(path("r.gr")));
  EXPECT_TRUE(b.out.empty());
  EXPECT_EQ(run({"gen", "random", "--n", "20"}).code, cli::kUsage);
  EXPECT_EQ(run({"gen", "picker", "--k", "4"}).code, cli::kInvalid);
}

TEST_F(Cli, VerifyFlower) {
  auto game = write("flower.gr", serialize_game(gen_flower(2)));
  auto g = gen_flower(2);
  auto good = write("good.json", strategy_to_json(g.arena(), canonical_flower_eve(2)).dump());
  auto r = run({"verify", game, good, "--json"});
  ASSERT_EQ(r.code, cli::kOk);
  EXPECT_EQ(json::parse(r.out)["result"]["winning"], true);

  // Two states that never change: stop at petal 1 in state 0 only.
  json small = {{"player", "eve"}, {"states", 2}, {"initial", 0}, {"update", json::array()},
                {"moves", json::array({
                              {{"vertex", "v1"}, {"state", 0}, {"successor", "nc1"}},
                              {{"vertex", "v1"}, {"state", 1}, {"successor", "c1"}},
                              {{"vertex", "v2"}, {"state", 0}, {"successor", "c2"}},
                              {{"vertex", "v2"}, {"state", 1}, {"successor", "c2"}},
                          })}};
  auto bad = write("small.json", small.dump());
  auto refuted = run({"verify", game, bad, "--region", "init", "--json"});
  EXPECT_EQ(refuted.code, cli::kRefuted);
  auto doc = json::parse(refuted.out);
  EXPECT_EQ(doc["result"]["winning"], false);
  EXPECT_FALSE(doc["result"]["counterexample"]["cycle"].empty());

  auto adv = run({"flower-adversary", "--k", "2", bad, "--json"});
  ASSERT_EQ(adv.code, cli::kOk);
  EXPECT_EQ(json::parse(adv.out)["result"]["winner"], "adam");
  EXPECT_EQ(run({"flower-adversary", "--k", "2", good}).code, cli::kInvalid);
}

TEST_F(Cli, VerifyFig5Adam) {
  auto g = gen_fig5();
  auto game = write("fig5.gr", serialize_game(g));
  auto strat = write("adam.json", strategy_to_json(g.arena(), canonical_fig5_adam()).dump());
  EXPECT_EQ(run({"verify", game, strat, "--region", "init"}).code, cli::kOk);
  auto junk = write("junk.json", "{ not json");
  EXPECT_EQ(run({"verify", game, junk}).code, cli::kParse);
}

TEST_F(Cli, Minmem) {
  auto flower = write("flower.gr", serialize_game(gen_flower(2)));
  auto r = run({"minmem", flower, "--player", "eve", "--bound", "3", "--json"});
  ASSERT_EQ(r.code, cli::kOk);
  auto doc = json::parse(r.out);
  EXPECT_EQ(doc["result"]["minimum"], 3);
  EXPECT_EQ(doc["result"]["class"], "color-obs");
  EXPECT_EQ(doc["result"]["class_restricted"], true);

  auto picker = write("picker.gr", serialize_game(gen_picker(3)));
  auto p = run({"minmem", picker, "--player", "adam", "--bound", "3", "--class", "color-obs"});
  EXPECT_EQ(p.out, "minimum 3\n");
  EXPECT_NE(p.err.find("class-restricted"), std::string::npos);

  auto fig5 = write("fig5.gr", serialize_game(gen_fig5()));
  auto f = run({"minmem", fig5, "--player", "adam", "--bound", "4", "--class", "color-obs"});
  EXPECT_EQ(f.out, "minimum 4\n");

  auto big = write("flower3.gr", serialize_game(gen_flower(3)));
  EXPECT_EQ(run({"minmem", big, "--player", "eve", "--bound", "7", "--class", "full",
                 "--budget", "1000"})
                .code,
            cli::kBudget);
}

TEST_F(Cli, TwoSat) {
  auto sat = write("sat.cnf", "p cnf 2 2\n1 2 0\n-1 2 0\n");
  auto r = run({"twosat", sat, "--json"});
  ASSERT_EQ(r.code, cli::kOk);
  auto doc = json::parse(r.out);
  EXPECT_EQ(doc["result"]["satisfiable"], true);
  EXPECT_EQ(doc["result"]["assignment"][1], 2);
  auto unsat = write("unsat.cnf", "p cnf 1 2\n1 0\n-1 0\n");
  EXPECT_EQ(run({"twosat", unsat}).out, "UNSAT\n");
  auto wide = write("wide.cnf", "p cnf 3 1\n1 2 3 0\n");
  EXPECT_EQ(run({"twosat", wide}).code, cli::kParse);
}

TEST_F(Cli, JsonModeKeepsStdoutClean) {
  for (auto args : std::vector<std::vector<std::string>>{
           {"solve", kFig1, "--json"}, {"qbf", kQbf1, "--json"}}) {
    auto r = run(args);
    EXPECT_TRUE(json::accept(r.out));
    EXPECT_FALSE(r.err.empty());
  }
}
