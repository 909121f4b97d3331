#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "genreach/arena.hpp"
#include "genreach/game.hpp"
#include "genreach/solve_result.hpp"
#include "genreach/two_sat.hpp"

namespace genreach {

// The preorder v <= v' iff v is in Attr({v'}) over a set of relevant
// vertices. In a one-player arena this is plain reachability.
struct ReachMatrix {
  std::vector<Vertex> vertices;
  std::vector<bool> below;  // below[i * size + j]: vertices[i] <= vertices[j]

  std::size_t size() const noexcept { return vertices.size(); }
  bool leq(std::size_t i, std::size_t j) const { return below[i * size() + j]; }
  std::optional<std::size_t> index_of(Vertex v) const;
  bool comparable(std::size_t i, std::size_t j) const {
    return leq(i, j) || leq(j, i);
  }
  bool total() const;
  bool transitive() const;
};

// One attractor computation per relevant vertex (duplicates dropped).
ReachMatrix reach_matrix(const Arena& arena, std::span<const Vertex> relevant);

// Every color a single vertex v_i. If the preorder is total on the v_i, Eve
// wins exactly on the intersection of their attractors by visiting them in
// preorder order (one memory state per target) and Adam plays the
// commit-and-avoid strategy elsewhere. Otherwise Adam wins everywhere with
// two states: after reaching one of an incomparable pair, avoid the other.
// Throws PreconditionFailed when some color is not a singleton.
SolveResult solve_singleton(const Game& game);

// Every vertex Eve's and every color of size at most two. Winner from each
// vertex v0 by 2-SAT: one variable per colored vertex, (not x or not y) for
// incomparable x and y, (x or y) per color, and (not z) for colored z not
// reachable from v0. The witness, for init, walks shortest paths through one
// chosen vertex per color in preorder order.
// Throws PreconditionFailed outside the class.
SolveResult solve_oneplayer_size2(const Game& game);

// The formula used by solve_oneplayer_size2 from v0; labels are vertex
// names. `vars` receives the vertex of each variable.
TwoSatFormula oneplayer_size2_formula(const Game& game, Vertex v0,
                                      std::vector<Vertex>* vars = nullptr);

}  // namespace genreach
