#pragma once

#include <vector>

#include "genreach/attractor.hpp"
#include "genreach/game.hpp"
#include "genreach/solve_result.hpp"

namespace genreach {

// Plain reachability game Reach(target): Eve wins exactly on the attractor.
// Both strategies are positional. Eve follows rank-decreasing moves inside
// the attractor; Adam keeps the play outside it, picking the first
// successor outside (one exists by maximality of the fixpoint).
SolveResult solve_reachability(const Arena& arena, const VertexSet& target);

// All vertices Adam's: Eve wins exactly on the intersection of the
// attractors of the color sets. Throws PreconditionFailed otherwise.
SolveResult solve_opponent_player(const Game& game);

// Adam strategy that, on entering the play at v, commits to the first color
// i whose attractor misses v and then keeps the play outside that
// attractor forever. Winning from every vertex outside the intersection of
// `attractors`. One memory state per color.
FiniteMemoryStrategy commit_avoid_strategy(
    const Arena& arena, const std::vector<AttractorResult>& attractors);

}  // namespace genreach
