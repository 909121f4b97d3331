#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "genreach/attractor.hpp"
#include "genreach/memory.hpp"
#include "genreach/types.hpp"

namespace genreach {

enum class Method {
  Reachability,
  Fpt,
  Singleton,
  OnePlayerSize2,
  OpponentPlayer,
  Minimax,
};

std::string_view to_string(Method m) noexcept;

struct SolveStats {
  std::size_t product_vertices = 0;
  std::size_t product_edges = 0;
  std::size_t memory_states = 0;
  std::size_t attractor_calls = 0;
  std::size_t edge_visits = 0;
  double wall_ms = 0.0;
};

// Winning regions of both players plus optional witnesses. The regions
// always partition V: each vertex has exactly one recorded winner.
struct SolveResult {
  Method method = Method::Fpt;
  std::vector<Player> winner;
  std::optional<FiniteMemoryStrategy> eve_strategy;
  std::optional<FiniteMemoryStrategy> adam_strategy;
  // One-player size-2 solver: a play prefix from init visiting every color.
  std::vector<Vertex> witness;
  SolveStats stats;

  VertexSet region(Player p) const;
  std::vector<Vertex> region_list(Player p) const;
};

}  // namespace genreach
