#include <gtest/gtest.h>

#include "genreach/errors.hpp"
#include "genreach/fpt.hpp"
#include "genreach/qbf.hpp"
#include "genreach/strategy_lab.hpp"
#include "support/oracles.hpp"

using namespace genreach;

namespace {

QbfFormula qbf1() {
  return parse_qdimacs(oracle::read(oracle::fixture("qbf1.qdimacs")));
}

Vertex at(const Game& g, const char* name) { return *g.arena().find(name); }

}  // namespace

TEST(Qdimacs, SingleExistential) {
  auto f = parse_qdimacs("p cnf 1 1\ne 1 0\n1 0\n");
  EXPECT_EQ(f.variables, 1u);
  ASSERT_EQ(f.prefix.size(), 1u);
  EXPECT_EQ(f.prefix[0].q, Quantifier::Exists);
  EXPECT_EQ(f.clauses, (std::vector<std::vector<int>>{{1}}));
}

TEST(Qdimacs, Qbf1Document) {
  auto f = qbf1();
  ASSERT_EQ(f.prefix.size(), 3u);
  EXPECT_EQ(f.prefix[0].q, Quantifier::Forall);
  EXPECT_EQ(f.prefix[1].q, Quantifier::Exists);
  EXPECT_EQ(f.prefix[2].q, Quantifier::Forall);
  EXPECT_EQ(f.clauses, (std::vector<std::vector<int>>{{1, -2}, {-2, 3}}));
}

TEST(Qdimacs, Errors) {
  EXPECT_THROW(parse_qdimacs("p cnf 3 1\ne 1 2 3 0\n1 5 0\n"), ParseError);
  EXPECT_THROW(parse_qdimacs("e 1 0\n1 0\n"), ParseError);
  EXPECT_THROW(parse_qdimacs("p cnf 1 1\ne 1 0\ne 1 0\n1 0\n"), ParseError);
}

TEST(Qdimacs, FreeVariablesBecomeInnerExistentials) {
  std::vector<std::string> warnings;
  auto f = parse_qdimacs("p cnf 2 1\na 1 0\n1 2 0\n", &warnings);
  ASSERT_EQ(f.prefix.size(), 2u);
  EXPECT_EQ(f.prefix[1].var, 2u);
  EXPECT_EQ(f.prefix[1].q, Quantifier::Exists);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(Qdimacs, RoundTrip) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto f = gen_random_qbf({.seed = seed});
    auto back = parse_qdimacs(serialize_qdimacs(f));
    EXPECT_EQ(back.variables, f.variables);
    EXPECT_EQ(back.clauses, f.clauses);
    ASSERT_EQ(back.prefix.size(), f.prefix.size());
    for (std::size_t i = 0; i < f.prefix.size(); ++i) {
      EXPECT_EQ(back.prefix[i].var, f.prefix[i].var);
      EXPECT_EQ(back.prefix[i].q, f.prefix[i].q);
    }
  }
}

TEST(QbfToGame, Qbf1Shape) {
  auto g = qbf_to_game(qbf1());
  EXPECT_EQ(g.n(), 10u);
  EXPECT_EQ(g.k(), 2);
  EXPECT_EQ(g.arena().owner(at(g, "v1")), Player::Adam);
  EXPECT_EQ(g.arena().owner(at(g, "v2")), Player::Eve);
  EXPECT_EQ(g.arena().owner(at(g, "v3")), Player::Adam);
  EXPECT_EQ(g.objective().color_set(0), (std::vector<Vertex>{at(g, "x1"), at(g, "nx2")}));
  EXPECT_EQ(g.objective().color_set(1), (std::vector<Vertex>{at(g, "nx2"), at(g, "x3")}));
  EXPECT_EQ(g.init(), at(g, "v1"));
  EXPECT_TRUE(g.arena().has_edge(at(g, "nx3"), at(g, "s")));
  EXPECT_TRUE(g.arena().has_edge(at(g, "s"), at(g, "s")));
}

TEST(QbfToGame, ExistentialIsOnePlayer) {
  auto f = parse_qdimacs("p cnf 3 2\ne 1 2 3 0\n1 -2 0\n2 3 0\n");
  auto g = qbf_to_game(f);
  EXPECT_TRUE(g.arena().all_owned_by(Player::Eve));
}

TEST(QbfToGame, NoClauses) {
  auto f = parse_qdimacs("p cnf 1 0\na 1 0\n");
  auto g = qbf_to_game(f);
  EXPECT_EQ(g.k(), 0);
  EXPECT_EQ(solve_fpt(g).winner[*g.init()], Player::Eve);
  EXPECT_TRUE(eval_qbf_bruteforce(f));
}

TEST(QbfToGame, EmptyPrefix) {
  QbfFormula f;
  EXPECT_THROW(qbf_to_game(f), PreconditionFailed);
}

TEST(EvalQbf, Examples) {
  EXPECT_TRUE(eval_qbf_bruteforce(qbf1()));
  EXPECT_FALSE(eval_qbf_bruteforce(parse_qdimacs("p cnf 1 2\ne 1 0\n1 0\n-1 0\n")));
  EXPECT_TRUE(eval_qbf_bruteforce(parse_qdimacs("p cnf 1 1\na 1 0\n1 -1 0\n")));
  EXPECT_FALSE(eval_qbf_bruteforce(parse_qdimacs("p cnf 1 1\na 1 0\n1 0\n")));
  EXPECT_FALSE(eval_qbf_bruteforce(parse_qdimacs("p cnf 1 1\ne 1 0\n0\n")));
}

TEST(EvalQbf, Cap) {
  auto f = gen_random_qbf({.min_vars = 12, .max_vars = 12, .seed = 1});
  EXPECT_THROW(eval_qbf_bruteforce(f, 5), CapExceeded);
}

TEST(QbfToGame, GameRouteMatchesTruthTable) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    auto f = gen_random_qbf({.max_vars = 8, .max_clauses = 10, .seed = seed});
    bool truth = oracle::qbf(f);
    EXPECT_EQ(eval_qbf_bruteforce(f), truth) << seed;
    auto g = qbf_to_game(f);
    EXPECT_EQ(solve_fpt(g).winner[*g.init()] == Player::Eve, truth) << seed;
  }
}

TEST(QbfToGame, MinimaxAgrees) {
  EXPECT_EQ(minimax_oracle(qbf_to_game(qbf1())), Player::Eve);
}
