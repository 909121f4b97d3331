#pragma once

#include <algorithm>
#include <cassert>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "genreach/arena.hpp"
#include "genreach/types.hpp"

namespace genreach {

// Membership vector over the vertices of an arena (or product arena).
using VertexSet = std::vector<bool>;

VertexSet to_set(std::size_t n, std::span<const Vertex> vertices);
std::vector<Vertex> to_list(const VertexSet& set);

// Anything that looks like an arena: Arena and ProductArena.
template <class G>
concept GameGraph = requires(const G& g, Vertex v) {
  { g.vertex_count() } -> std::convertible_to<std::size_t>;
  { g.owner(v) } -> std::same_as<Player>;
  { g.successors(v) } -> std::convertible_to<std::span<const Vertex>>;
  { g.predecessors(v) } -> std::convertible_to<std::span<const Vertex>>;
};

inline constexpr std::uint32_t kInfiniteRank =
    std::numeric_limits<std::uint32_t>::max();

struct AttractorResult {
  // rank[v] = least i with v in Attr_i(F), or kInfiniteRank.
  std::vector<std::uint32_t> rank;
  // For Eve vertices of finite rank r > 0: the first successor (in
  // successor order) of rank r - 1. kNoVertex elsewhere.
  std::vector<Vertex> eve_move;
  // Number of predecessor edges inspected; never exceeds the edge count.
  std::size_t edge_visits = 0;

  bool contains(Vertex v) const { return rank[v] != kInfiniteRank; }
  VertexSet members() const;
  std::size_t size() const;
};

namespace detail {

// Count is the type of the per-vertex successor counters; a narrow one keeps
// the randomly accessed array small on large product arenas.
template <class Count, GameGraph G>
void attract(const G& g, const VertexSet& target, AttractorResult& out) {
  const auto n = g.vertex_count();
  // Successors still outside the attractor that v must wait for: one for Eve
  // (any will do), all for Adam, zero once admitted.
  std::vector<Count> pending(n, 0);
  std::vector<Vertex> queue;
  queue.reserve(n);
  for (Vertex v = 0; v < n; ++v) {
    if (target[v]) {
      out.rank[v] = 0;
      queue.push_back(v);
    } else if (g.owner(v) == Player::Adam) {
      pending[v] = static_cast<Count>(g.successors(v).size());
    } else {
      pending[v] = 1;
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Vertex v = queue[head];
    const auto next_rank = out.rank[v] + 1;
    for (Vertex u : g.predecessors(v)) {
      ++out.edge_visits;
      if (pending[u] != 0 && --pending[u] == 0) {
        out.rank[u] = next_rank;
        queue.push_back(u);
      }
    }
  }
  for (Vertex v : queue) {
    if (g.owner(v) != Player::Eve || out.rank[v] == 0) continue;
    for (Vertex w : g.successors(v)) {
      if (out.rank[w] + 1 == out.rank[v]) {
        out.eve_move[v] = w;
        break;
      }
    }
  }
}

}  // namespace detail

// Eve's attractor to `target`, computed backwards with per-vertex successor
// counters in O(n + m). Vertices are admitted in nondecreasing rank, so an
// Adam vertex gets 1 + the largest rank among its successors and an Eve
// vertex 1 + the smallest.
template <GameGraph G>
AttractorResult compute_attractor(const G& g, const VertexSet& target) {
  const auto n = g.vertex_count();
  AttractorResult out;
  out.rank.assign(n, kInfiniteRank);
  out.eve_move.assign(n, kNoVertex);
  std::size_t max_degree = 0;
  for (Vertex v = 0; v < n; ++v) {
    max_degree = std::max(max_degree, g.successors(v).size());
  }
  if (max_degree <= std::numeric_limits<std::uint8_t>::max()) {
    detail::attract<std::uint8_t>(g, target, out);
  } else {
    detail::attract<std::uint32_t>(g, target, out);
  }
  return out;
}

AttractorResult attractor(const Arena& arena, const VertexSet& target);
AttractorResult attractor(const Arena& arena, std::span<const Vertex> target);

// First successor of v outside `avoid`, or the first successor at all when
// every successor is inside.
template <GameGraph G>
Vertex first_successor_outside(const G& g, Vertex v,
                               const AttractorResult& avoid) {
  auto succ = g.successors(v);
  for (Vertex w : succ) {
    if (!avoid.contains(w)) return w;
  }
  return succ.front();
}

}  // namespace genreach
