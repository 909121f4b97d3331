#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "genreach/arena.hpp"
#include "genreach/game.hpp"
#include "genreach/memory.hpp"

namespace genreach {

// Color-subset memory of a game: one state per mask (state id == mask),
// m0 = colors(v0) and mu(S, (v, v')) = S | colors(v'). Without v0 the
// initial state is the empty set and the entry update supplies colors(v).
// Throws CapExceeded when k > cap.
MemoryStructure subset_memory(const Objective& objective,
                              std::optional<Vertex> v0 = std::nullopt,
                              int cap = kDefaultColorCap);

// Synchronized product A x M. A product vertex (v, s) is owned by the owner
// of v and ((v, s), (v', s')) is an edge iff (v, v') is and s' = mu(s, (v,
// v')). Only configurations reachable from the requested start
// configurations are materialized. Ids are dense, in (v, s) order when the
// pair space is small enough for a bitmap, in discovery order otherwise.
class ProductArena {
 public:
  // Every pair (v, s).
  ProductArena(const Arena& arena, const MemoryStructure& memory);
  // Pairs reachable from (v, memory.start_state(v)) for v in starts.
  ProductArena(const Arena& arena, const MemoryStructure& memory,
               std::span<const Vertex> starts);

  const Arena& base() const noexcept { return *arena_; }
  const MemoryStructure& memory() const noexcept { return *memory_; }

  std::size_t vertex_count() const noexcept { return vertex_.size(); }
  std::size_t edge_count() const noexcept { return targets_.size(); }
  Player owner(Vertex p) const { return arena_->owner(vertex_[p]); }
  std::span<const Vertex> successors(Vertex p) const {
    return {targets_.data() + offsets_[p], targets_.data() + offsets_[p + 1]};
  }
  std::span<const Vertex> predecessors(Vertex p) const {
    return {sources_.data() + in_offsets_[p],
            sources_.data() + in_offsets_[p + 1]};
  }

  Vertex base_vertex(Vertex p) const { return vertex_[p]; }
  StateId state(Vertex p) const { return state_[p]; }
  std::optional<Vertex> find(Vertex v, StateId s) const;
  // Id of (v, start_state(v)); must have been materialized.
  Vertex start(Vertex v) const;

 private:
  void build(std::span<const Vertex> seeds, bool all_pairs);
  void build_bitmap(std::span<const Vertex> seeds, bool all_pairs);
  void build_hashed(std::span<const Vertex> seeds, bool all_pairs);
  void build_predecessors();
  Vertex intern(Vertex v, StateId s);
  std::uint64_t rank(std::uint64_t key) const;

  const Arena* arena_;
  const MemoryStructure* memory_;
  std::vector<Vertex> vertex_;
  std::vector<StateId> state_;
  std::vector<EdgeId> offsets_{0};
  std::vector<Vertex> targets_;
  std::vector<EdgeId> in_offsets_{0};
  std::vector<Vertex> sources_;
  // Materialized keys v * |M| + s: a bitmap with per-word prefix counts (the
  // id is the rank of the key), or a hash map for huge pair spaces.
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint32_t> word_rank_;
  std::unordered_map<std::uint64_t, Vertex> sparse_index_;
};

ProductArena build_product(const Arena& arena, const MemoryStructure& memory);

}  // namespace genreach
