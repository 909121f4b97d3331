#include <gtest/gtest.h>

#include <numeric>

#include "genreach/errors.hpp"
#include "genreach/fpt.hpp"
#include "genreach/generators.hpp"
#include "genreach/product.hpp"
#include "genreach/qbf.hpp"
#include "genreach/strategy_lab.hpp"
#include "support/oracles.hpp"

using namespace genreach;

namespace {

Vertex at(const Game& g, const char* name) { return *g.arena().find(name); }

std::size_t binom(int n, int r) {
  std::size_t out = 1;
  for (int i = 1; i <= r; ++i) out = out * static_cast<std::size_t>(n - r + i) / static_cast<std::size_t>(i);
  return out;
}

}  // namespace

TEST(SubsetMemory, InitialIsColorsOfStart) {
  // Vertex 0 in color 2 only, vertex 1 in color 3.
  Objective obj(3, {{2}, {0}, {1}});
  auto mem = subset_memory(obj, Vertex{0});
  EXPECT_EQ(mem.state_count(), 8u);
  EXPECT_EQ(mem.start_state(0), 0b010u);
  EXPECT_EQ(mem.state_mask(mem.start_state(0)), ColorMask{0b010});
  // {1} read into a color-3 vertex gives {1,3}.
  EXPECT_EQ(mem.update(0b001, 0, 1), 0b101u);
  EXPECT_EQ(mem.update(0b111, 0, 2), 0b111u);
}

TEST(SubsetMemory, NoColors) {
  Objective obj(2, {});
  auto mem = subset_memory(obj, Vertex{1});
  EXPECT_EQ(mem.state_count(), 1u);
  EXPECT_EQ(mem.initial(), 0u);
  EXPECT_EQ(mem.update(0, 0, 1), 0u);
}

TEST(SubsetMemory, CapRefused) {
  Objective obj(1, std::vector<std::vector<Vertex>>(21, std::vector<Vertex>{0}));
  EXPECT_THROW(subset_memory(obj), CapExceeded);
}

TEST(Product, Fig1FullProductHas16Vertices) {
  auto g = oracle::fig1();
  auto mem = subset_memory(g.objective());
  auto prod = build_product(g.arena(), mem);
  EXPECT_EQ(prod.vertex_count(), 16u);
  EXPECT_EQ(prod.edge_count(), 8u * 4u);
  for (Vertex p = 0; p < prod.vertex_count(); ++p) {
    EXPECT_EQ(prod.owner(p), g.arena().owner(prod.base_vertex(p)));
    for (Vertex q : prod.successors(p)) {
      Vertex v = prod.base_vertex(p), w = prod.base_vertex(q);
      EXPECT_TRUE(g.arena().has_edge(v, w));
      EXPECT_EQ(prod.state(q), prod.state(p) | g.colors(w));
    }
  }
}

TEST(Product, TrivialMemoryIsIsomorphic) {
  auto g = oracle::fig1();
  auto mem = MemoryStructure::trivial();
  auto prod = build_product(g.arena(), mem);
  ASSERT_EQ(prod.vertex_count(), g.n());
  EXPECT_EQ(prod.edge_count(), g.m());
  for (Vertex p = 0; p < prod.vertex_count(); ++p) {
    std::vector<Vertex> succ;
    for (Vertex q : prod.successors(p)) succ.push_back(prod.base_vertex(q));
    std::sort(succ.begin(), succ.end());
    auto base = g.arena().successors(prod.base_vertex(p));
    EXPECT_TRUE(std::equal(succ.begin(), succ.end(), base.begin(), base.end()));
  }
}

TEST(Product, ReachablePartIsSmaller) {
  auto g = oracle::fig1();
  auto mem = subset_memory(g.objective());
  std::vector<Vertex> starts{at(g, "c")};
  ProductArena prod(g.arena(), mem, starts);
  EXPECT_LT(prod.vertex_count(), 16u);
  EXPECT_TRUE(prod.find(at(g, "c"), 0));
  EXPECT_FALSE(prod.find(at(g, "c"), 0b11));
}

TEST(Fpt, Fig1EveFromC) {
  auto g = oracle::fig1();
  auto r = solve_fpt(g);
  EXPECT_EQ(r.winner[at(g, "c")], Player::Eve);
  EXPECT_EQ(r.winner, oracle::winners(g));
  ASSERT_TRUE(r.eve_strategy);
  EXPECT_EQ(r.eve_strategy->state_count(), 3u);
  EXPECT_TRUE(verify_strategy(g, *r.eve_strategy, r.region(Player::Eve)).winning);
  ASSERT_TRUE(r.adam_strategy);
  EXPECT_TRUE(verify_strategy(g, *r.adam_strategy, r.region(Player::Adam)).winning);
}

TEST(Fpt, QbfGameAndFlower) {
  auto f = parse_qdimacs(oracle::read(oracle::fixture("qbf1.qdimacs")));
  auto qg = qbf_to_game(f);
  EXPECT_EQ(solve_fpt(qg).winner[*qg.init()], Player::Eve);
  auto fl = gen_flower(2);
  EXPECT_EQ(solve_fpt(fl).winner[*fl.init()], Player::Eve);
}

TEST(Fpt, NoColorsEveEverywhere) {
  Arena a({Player::Adam, Player::Eve}, {{0, 1}, {1, 0}});
  Game g(std::move(a), Objective(2, {}));
  auto r = solve_fpt(g);
  for (auto w : r.winner) EXPECT_EQ(w, Player::Eve);
  EXPECT_EQ(r.eve_strategy->state_count(), 1u);
  EXPECT_FALSE(r.adam_strategy);
}

TEST(Fpt, MatchesOracleWithBoundedMemory) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    RandomParams p;
    p.n = 2 + seed % 18;
    p.k = static_cast<int>(seed % 5);
    p.seed = seed;
    p.edge_probability = 0.15;
    auto g = gen_random(p);
    auto r = solve_fpt(g);
    ASSERT_EQ(r.winner, oracle::winners(g)) << seed;
    const std::size_t eve_cap = g.k() == 0 ? 1 : (std::size_t{1} << g.k()) - 1;
    EXPECT_LE(r.eve_strategy->state_count(), eve_cap);
    EXPECT_TRUE(verify_strategy(g, *r.eve_strategy, r.region(Player::Eve)).winning) << seed;
    if (r.adam_strategy) {
      EXPECT_LE(r.adam_strategy->state_count(), std::max<std::size_t>(1, binom(g.k(), g.k() / 2)));
      EXPECT_TRUE(verify_strategy(g, *r.adam_strategy, r.region(Player::Adam)).winning) << seed;
    }
    EXPECT_LE(r.stats.product_vertices, g.n() << g.k());
  }
}

TEST(Fpt, RawAdamStrategyAlsoWins) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RandomParams p;
    p.n = 10;
    p.k = 3;
    p.seed = seed;
    auto g = gen_random(p);
    auto r = solve_fpt(g, {.compress_adam = false});
    if (!r.adam_strategy) continue;
    EXPECT_TRUE(verify_strategy(g, *r.adam_strategy, r.region(Player::Adam)).winning) << seed;
  }
}

TEST(LiftStrategy, TrivialMemoryKeepsPositional) {
  auto g = oracle::fig1();
  auto mem = MemoryStructure::trivial();
  auto prod = build_product(g.arena(), mem);
  std::vector<Vertex> choice(prod.vertex_count(), kNoVertex);
  for (Vertex p = 0; p < prod.vertex_count(); ++p) {
    if (prod.owner(p) == Player::Eve) choice[p] = prod.successors(p).back();
  }
  auto s = lift_strategy(prod, choice, Player::Eve);
  EXPECT_EQ(s.state_count(), 1u);
  for (Vertex v = 0; v < g.n(); ++v) {
    if (g.arena().owner(v) == Player::Eve) {
      EXPECT_EQ(s.move(v, 0), g.arena().successors(v).back());
    } else {
      EXPECT_FALSE(s.move(v, 0));
    }
  }
}

TEST(Antichain, DominatedSetsDropped) {
  std::vector<std::pair<Vertex, ColorMask>> pairs{{0, 0b01}, {0, 0b10}, {0, 0b11}};
  auto t = antichain_table(1, pairs);
  EXPECT_EQ(t.maximal[0], std::vector<ColorMask>{0b11});
  EXPECT_EQ(t.width(), 1u);
}

TEST(Antichain, IncomparablePairKept) {
  std::vector<std::pair<Vertex, ColorMask>> pairs{{0, 0b01}, {0, 0b10}};
  auto t = antichain_table(1, pairs);
  EXPECT_EQ(t.maximal[0], (std::vector<ColorMask>{0b01, 0b10}));
  EXPECT_EQ(t.width(), 2u);
}

TEST(Antichain, NonDownwardClosedRegionIsAnError) {
  std::vector<std::pair<Vertex, ColorMask>> adam{{0, 0b11}};
  std::vector<std::pair<Vertex, ColorMask>> known{{0, 0b11}, {0, 0b01}};
  EXPECT_THROW(antichain_table(1, adam, std::span<const std::pair<Vertex, ColorMask>>(known)),
               InternalError);
}

TEST(CompressAdam, IncomparableSingletonsTwoStates) {
  Arena a({"v0", "a", "b"}, {Player::Eve, Player::Eve, Player::Eve},
          {{0, 1}, {0, 2}, {1, 1}, {2, 2}});
  Game g(std::move(a), Objective(3, {{1}, {2}}), 0);
  ProductSolution sol(g);
  auto s = compress_adam(sol);
  EXPECT_LE(s.state_count(), 2u);
  auto r = solve_fpt(g);
  for (auto w : r.winner) EXPECT_EQ(w, Player::Adam);
  EXPECT_TRUE(verify_strategy(g, s, r.region(Player::Adam)).winning);
}

TEST(CompressAdam, PickerThreeStates) {
  auto g = gen_picker(3);
  auto r = solve_fpt(g);
  EXPECT_EQ(r.winner[*g.init()], Player::Adam);
  ASSERT_TRUE(r.adam_strategy);
  EXPECT_LE(r.adam_strategy->state_count(), 3u);
  EXPECT_TRUE(verify_strategy(g, *r.adam_strategy, r.region(Player::Adam)).winning);
}

TEST(CompressAdam, SingleColorPositional) {
  Arena a({Player::Adam, Player::Eve}, {{0, 0}, {0, 1}, {1, 1}});
  Game g(std::move(a), Objective(2, {{1}}), 0);
  auto r = solve_fpt(g);
  EXPECT_EQ(r.winner[0], Player::Adam);
  ASSERT_TRUE(r.adam_strategy);
  EXPECT_EQ(r.adam_strategy->state_count(), 1u);
  EXPECT_TRUE(verify_strategy(g, *r.adam_strategy, r.region(Player::Adam)).winning);
}
