#include <gtest/gtest.h>

#include "genreach/errors.hpp"
#include "genreach/fpt.hpp"
#include "genreach/game_format.hpp"
#include "genreach/generators.hpp"
#include "genreach/strategy_lab.hpp"
#include "genreach/subclasses.hpp"
#include "support/oracles.hpp"

using namespace genreach;

namespace {

bool init_wins(const Game& g, const FiniteMemoryStrategy& s) {
  return verify_strategy(g, s, std::vector<Vertex>{*g.init()}).winning;
}

}  // namespace

TEST(Flower, Sizes) {
  auto g5 = gen_flower(5);
  EXPECT_EQ(g5.n(), 16u);
  EXPECT_EQ(g5.k(), 5);
  EXPECT_EQ(g5.arena().successors(*g5.init()).size(), 5u);
  auto g1 = gen_flower(1);
  EXPECT_EQ(g1.n(), 4u);
  EXPECT_EQ(g1.colors(*g1.arena().find("nc1")), 0u);
  EXPECT_THROW(gen_flower(0), PreconditionFailed);
}

TEST(Flower, CanonicalStrategy) {
  EXPECT_EQ(canonical_flower_eve(1).state_count(), 1u);
  EXPECT_EQ(canonical_flower_eve(2).state_count(), 3u);
  EXPECT_EQ(canonical_flower_eve(3).state_count(), 7u);
  for (int k = 1; k <= 4; ++k) {
    auto g = gen_flower(k);
    EXPECT_TRUE(init_wins(g, canonical_flower_eve(k))) << k;
    EXPECT_EQ(solve_fpt(g).winner[*g.init()], Player::Eve);
  }
}

TEST(Picker, Shape) {
  auto g = gen_picker(3);
  EXPECT_EQ(g.n(), 13u);
  EXPECT_EQ(g.k(), 3);
  std::size_t adam = 0;
  for (Vertex v = 0; v < g.n(); ++v) adam += g.arena().owner(v) == Player::Adam;
  EXPECT_EQ(adam, 1u);
  EXPECT_THROW(gen_picker(4), PreconditionFailed);
  EXPECT_THROW(gen_picker(1), PreconditionFailed);
}

TEST(Picker, AdamWinsUnlessEveOwnsEverything) {
  for (int k : {3, 5}) {
    auto g = gen_picker(k);
    EXPECT_EQ(solve_fpt(g).winner[*g.init()], Player::Adam) << k;
    std::vector<Player> eve(g.n(), Player::Eve);
    auto names = g.arena().names();
    Game all_eve(Arena(names, eve, g.arena().edges()), g.objective(), g.init());
    EXPECT_EQ(solve_fpt(all_eve).winner[*g.init()], Player::Eve) << k;
  }
}

TEST(Picker, AdamMustCopyEve) {
  // After Eve took color i and Adam color j, Eve completes the set iff i != j.
  auto g = gen_picker(3);
  ProductSolution sol(g);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Vertex w = *g.arena().find("a_1_c" + std::to_string(j + 1));
      ColorMask seen = (ColorMask{1} << i) | (ColorMask{1} << j);
      auto p = sol.product().find(w, static_cast<StateId>(seen));
      ASSERT_TRUE(p) << i << j;
      EXPECT_EQ(sol.eve_wins(*p), i != j) << i << j;
    }
  }
}

TEST(Fig4, ShapeAndStrategy) {
  auto g = gen_fig4(4);
  EXPECT_EQ(g.n(), 13u);
  EXPECT_EQ(g.arena().owner(*g.init()), Player::Eve);
  for (int i = 0; i < g.k(); ++i) EXPECT_LE(g.objective().color_set(i).size(), 2u);
  EXPECT_EQ(solve_fpt(g).winner[*g.init()], Player::Eve);
  auto s = canonical_fig4_eve(4);
  EXPECT_EQ(s.state_count(), 7u);
  EXPECT_TRUE(init_wins(g, s));
  auto g2 = gen_fig4(2);
  EXPECT_EQ(canonical_fig4_eve(2).state_count(), 3u);
  EXPECT_TRUE(init_wins(g2, canonical_fig4_eve(2)));
  EXPECT_THROW(gen_fig4(3), PreconditionFailed);
}

TEST(Fig5, AdamWinsWithFourStates) {
  auto g = gen_fig5();
  EXPECT_EQ(g.n(), 14u);
  EXPECT_EQ(g.k(), 4);
  for (int i = 0; i < 4; ++i) EXPECT_LE(g.objective().color_set(i).size(), 2u);
  auto r = solve_fpt(g);
  EXPECT_EQ(r.winner[*g.init()], Player::Adam);
  EXPECT_LE(r.adam_strategy->state_count(), 6u);
  EXPECT_TRUE(verify_strategy(g, *r.adam_strategy, r.region(Player::Adam)).winning);
  auto s = canonical_fig5_adam();
  EXPECT_EQ(s.state_count(), 4u);
  EXPECT_TRUE(init_wins(g, s));
}

TEST(Families, AgreeWithMinimax) {
  std::vector<Game> games;
  for (int k = 1; k <= 3; ++k) games.push_back(gen_flower(k));
  games.push_back(gen_picker(3));
  games.push_back(gen_fig4(2));
  games.push_back(gen_fig5());
  for (const auto& g : games) {
    EXPECT_TRUE(validate_arena(g.arena()).ok());
    EXPECT_EQ(solve_fpt(g).winner[*g.init()], minimax_oracle(g));
  }
}

TEST(Families, ByteStable) {
  EXPECT_EQ(serialize_game(gen_fig5()), serialize_game(gen_fig5()));
  EXPECT_EQ(serialize_game(gen_picker(5)), serialize_game(gen_picker(5)));
}

TEST(Random, Deterministic) {
  RandomParams p{.n = 20, .k = 3, .seed = 7};
  EXPECT_EQ(serialize_game(gen_random(p)), serialize_game(gen_random(p)));
  p.seed = 8;
  EXPECT_NE(serialize_game(gen_random(p)), serialize_game(gen_random({.n = 20, .k = 3, .seed = 7})));
}

TEST(Random, ConstraintsHold) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomParams p;
    p.n = 1 + seed % 40;
    p.k = static_cast<int>(seed % 6);
    p.seed = seed;
    p.out_degree = seed % 3;
    p.singleton = seed % 4 == 1;
    p.one_player = seed % 4 == 2;
    p.opponent_player = seed % 4 == 3;
    auto g = gen_random(p);
    EXPECT_TRUE(validate_arena(g.arena()).ok()) << seed;
    EXPECT_EQ(g.n(), p.n);
    EXPECT_EQ(g.k(), p.k);
    ASSERT_TRUE(g.init());
    if (p.singleton) {
      for (int i = 0; i < g.k(); ++i) EXPECT_EQ(g.objective().color_set(i).size(), 1u);
      EXPECT_NO_THROW(solve_singleton(g));
    }
    if (p.one_player) EXPECT_TRUE(g.arena().all_owned_by(Player::Eve));
    if (p.opponent_player) EXPECT_TRUE(g.arena().all_owned_by(Player::Adam));
    if (p.out_degree > 0) {
      for (Vertex v = 0; v < g.n(); ++v) {
        EXPECT_EQ(g.arena().out_degree(v), std::min<std::size_t>(p.out_degree, g.n()));
      }
    }
  }
}
