#pragma once

#include <cstdint>
#include <optional>

#include "genreach/game.hpp"
#include "genreach/memory.hpp"

namespace genreach {

// Flower with k petals. Vertices: heart "h" (Adam, init); per petal i,
// "v<i>" (Eve) choosing between "c<i>" (color i, back to h) and "nc<i>"
// (every color but i, self-loop). 3k + 1 vertices. Requires k >= 1.
Game gen_flower(int k);

// Eve's winning strategy on gen_flower(k) over the visited-petal subsets with
// the full set pruned (2^k - 1 states): go back to the heart the first time a
// petal is chosen, stop the second time.
FiniteMemoryStrategy canonical_flower_eve(int k);

// Three-stage picker for k = 2p + 1 >= 3: Eve picks p colors, then Adam picks
// p colors, then Eve picks p colors. Each choice vertex fans out to k
// one-color pass-through vertices that all lead to the next choice vertex;
// the last stage ends in an uncolored absorbing sink.
// Throws PreconditionFailed on even or small k.
Game gen_picker(int k);

// Size-2 arena where Eve needs 2^(k/2+1) - 1 states: an Eve heart with k/2
// Adam petals (petal i offers colors 2i-1 and 2i, both returning to the
// heart) and an Eve chain picking one color of each pair, ending in
// self-loops. k even >= 2; 3k + 1 vertices.
Game gen_fig4(int k);

// Eve's strategy on gen_fig4(k): ask every petal in order, remembering the
// answers, then take the other color of each pair on the chain.
FiniteMemoryStrategy canonical_fig4_eve(int k);

// The fixed 14-vertex size-2 arena where Adam needs 4 memory states (k = 4).
Game gen_fig5();

// Adam's 4-state strategy on gen_fig5(): the state names the color he
// believes missing and changes only when that color shows up.
FiniteMemoryStrategy canonical_fig5_adam();

struct RandomParams {
  std::size_t n = 10;
  int k = 2;
  // Exactly one of the two edge models is used: fixed out-degree when
  // out_degree > 0, else independent edges with this probability.
  double edge_probability = 0.2;
  std::size_t out_degree = 0;
  double eve_ratio = 0.5;
  std::size_t min_color_size = 1;
  std::size_t max_color_size = 3;
  bool one_player = false;       // every vertex Eve's
  bool opponent_player = false;  // every vertex Adam's
  bool singleton = false;        // every color a single vertex
  bool with_init = true;
  std::uint64_t seed = 0;
};

// Seeded, reproducible random game. Vertices left without successors get a
// self-loop.
Game gen_random(const RandomParams& params);

}  // namespace genreach
