#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "genreach/arena.hpp"
#include "genreach/types.hpp"

namespace genreach {

// A memory structure (M, m0, mu) attached to one arena.
//
// Besides mu(state, edge) the structure has an entry update
// entry(state, v), applied once to m0 when a play starts at v; a strategy
// that starts at v therefore begins in start_state(v). For the color-subset
// memory this gives m0 = {i | v in F_i}; for a fixed start vertex any
// structure can be normalized to an identity entry.
class MemoryStructure {
 public:
  // Single-state memory: strategies over it are positional.
  static MemoryStructure trivial();

  // Explicit tables: edge_updates[s * edge_count + e] and
  // entry_updates[s * vertex_count + v]. An empty entry table means identity.
  static MemoryStructure table(std::size_t states, StateId initial,
                               std::size_t vertex_count,
                               std::size_t edge_count,
                               std::vector<StateId> edge_updates,
                               std::vector<StateId> entry_updates = {});

  // State s stands for the color set state_masks[s]; reading vertex v moves
  // from mask S to the state of S | vertex_colors[v], and a play starting
  // at v starts in the state of vertex_colors[v]. A mask without a state
  // (the pruned full set, say) maps to `overflow`.
  static MemoryStructure color_subset(std::vector<ColorMask> vertex_colors,
                                      std::vector<ColorMask> state_masks,
                                      StateId initial, StateId overflow);

  std::size_t state_count() const noexcept { return states_; }
  StateId initial() const noexcept { return initial_; }

  StateId update(StateId s, EdgeId e, Vertex to) const;
  StateId entry(StateId s, Vertex v) const;
  StateId start_state(Vertex v) const { return entry(initial_, v); }

  // Color set represented by a state of a color-subset memory.
  std::optional<ColorMask> state_mask(StateId s) const;
  bool is_color_subset() const noexcept {
    return std::holds_alternative<SubsetRule>(rule_);
  }

  // Same structure with every update written out as a table.
  MemoryStructure materialize(const Arena& arena) const;

 private:
  struct Trivial {};
  struct Table {
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;
    std::vector<StateId> edges;
    std::vector<StateId> entries;
  };
  struct SubsetRule {
    std::vector<ColorMask> vertex_colors;
    std::vector<ColorMask> state_masks;
    std::vector<StateId> mask_to_state;  // indexed by mask, 2^k entries
    StateId overflow = 0;
    StateId lookup(ColorMask mask) const;
  };

  std::size_t states_ = 1;
  StateId initial_ = 0;
  std::variant<Trivial, Table, SubsetRule> rule_;
};

// A strategy given by a memory structure and a next-move table
// nu(v, s), defined on the vertices owned by `player`.
class FiniteMemoryStrategy {
 public:
  // moves[v * state_count + s], kNoVertex where undefined.
  FiniteMemoryStrategy(Player player, MemoryStructure memory,
                       std::size_t vertex_count, std::vector<Vertex> moves);

  // Positional strategy over the trivial memory; moves[v] or kNoVertex.
  static FiniteMemoryStrategy positional(Player player,
                                         std::vector<Vertex> moves);

  Player player() const noexcept { return player_; }
  const MemoryStructure& memory() const noexcept { return memory_; }
  std::size_t state_count() const noexcept { return memory_.state_count(); }
  std::size_t vertex_count() const noexcept { return vertex_count_; }

  std::optional<Vertex> move(Vertex v, StateId s) const {
    auto w = moves_[static_cast<std::size_t>(v) * state_count() + s];
    if (w == kNoVertex) return std::nullopt;
    return w;
  }
  const std::vector<Vertex>& moves() const noexcept { return moves_; }

 private:
  Player player_;
  MemoryStructure memory_;
  std::size_t vertex_count_;
  std::vector<Vertex> moves_;
};

// Throws InvalidGame if a prescribed move is not an arena edge, is given at a
// vertex of the other player, or the strategy was built for another arena.
void check_strategy(const Arena& arena, const FiniteMemoryStrategy& strategy);

// The prescribed move, or the only successor of a vertex of out-degree one.
std::optional<Vertex> resolve_move(const Arena& arena,
                                   const FiniteMemoryStrategy& strategy,
                                   Vertex v, StateId s);

// Count of memory states reachable from the start states of `starts`
// while following the strategy against every opponent move.
std::size_t reachable_state_count(const Arena& arena,
                                  const FiniteMemoryStrategy& strategy,
                                  const std::vector<Vertex>& starts);

}  // namespace genreach
