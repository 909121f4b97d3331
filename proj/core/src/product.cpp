#include "genreach/product.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "genreach/errors.hpp"

namespace genreach {
namespace {

// Largest pair space indexed by a bitmap (32 MiB of bits).
constexpr std::uint64_t kBitmapLimit = std::uint64_t{1} << 28;

}  // namespace

MemoryStructure subset_memory(const Objective& objective,
                              std::optional<Vertex> v0, int cap) {
  if (objective.k() > cap) {
    throw CapExceeded("subset memory needs 2^" + std::to_string(objective.k()) +
                      " states; color cap is " + std::to_string(cap));
  }
  const std::size_t states = std::size_t{1} << objective.k();
  std::vector<ColorMask> masks(states);
  std::iota(masks.begin(), masks.end(), ColorMask{0});
  const StateId initial =
      v0 ? static_cast<StateId>(objective.colors(*v0)) : StateId{0};
  return MemoryStructure::color_subset(
      {objective.masks().begin(), objective.masks().end()}, std::move(masks),
      initial, 0);
}

ProductArena::ProductArena(const Arena& arena, const MemoryStructure& memory)
    : arena_(&arena), memory_(&memory) {
  build({}, true);
}

ProductArena::ProductArena(const Arena& arena, const MemoryStructure& memory,
                           std::span<const Vertex> starts)
    : arena_(&arena), memory_(&memory) {
  build(starts, false);
}

ProductArena build_product(const Arena& arena, const MemoryStructure& memory) {
  return ProductArena(arena, memory);
}

std::uint64_t ProductArena::rank(std::uint64_t key) const {
  const std::uint64_t below = (std::uint64_t{1} << (key & 63)) - 1;
  return word_rank_[key >> 6] + std::popcount(bits_[key >> 6] & below);
}

std::optional<Vertex> ProductArena::find(Vertex v, StateId s) const {
  const std::uint64_t key =
      static_cast<std::uint64_t>(v) * memory_->state_count() + s;
  if (!bits_.empty()) {
    if (!(bits_[key >> 6] >> (key & 63) & 1)) return std::nullopt;
    return static_cast<Vertex>(rank(key));
  }
  auto it = sparse_index_.find(key);
  if (it == sparse_index_.end()) return std::nullopt;
  return it->second;
}

Vertex ProductArena::start(Vertex v) const {
  auto id = find(v, memory_->start_state(v));
  if (!id) throw InternalError("start configuration was not materialized");
  return *id;
}

Vertex ProductArena::intern(Vertex v, StateId s) {
  const std::uint64_t key =
      static_cast<std::uint64_t>(v) * memory_->state_count() + s;
  Vertex& slot = sparse_index_.try_emplace(key, kNoVertex).first->second;
  if (slot == kNoVertex) {
    if (vertex_.size() >= kNoVertex - 1) {
      throw CapExceeded("product arena exceeds 2^32 vertices");
    }
    slot = static_cast<Vertex>(vertex_.size());
    vertex_.push_back(v);
    state_.push_back(s);
  }
  return slot;
}

void ProductArena::build(std::span<const Vertex> seeds, bool all_pairs) {
  const std::uint64_t pairs =
      static_cast<std::uint64_t>(arena_->vertex_count()) *
      memory_->state_count();
  if (pairs <= kBitmapLimit) {
    build_bitmap(seeds, all_pairs);
  } else {
    build_hashed(seeds, all_pairs);
  }
  build_predecessors();
}

void ProductArena::build_bitmap(std::span<const Vertex> seeds,
                                bool all_pairs) {
  const auto n = arena_->vertex_count();
  const auto states = memory_->state_count();
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * states;
  const std::size_t words = (pairs + 63) / 64;
  bits_.assign(std::max<std::size_t>(words, 1), 0);

  // Pass 1: mark the reachable keys and count their edges.
  std::size_t edges = 0;
  if (all_pairs) {
    edges = static_cast<std::size_t>(states) * arena_->edge_count();
    std::fill(bits_.begin(), bits_.end(), ~std::uint64_t{0});
    if (pairs % 64 != 0) bits_.back() = (std::uint64_t{1} << (pairs % 64)) - 1;
    if (pairs == 0) bits_.back() = 0;
  } else {
    std::vector<std::uint32_t> queue;
    auto mark = [&](std::uint64_t key) {
      auto& word = bits_[key >> 6];
      const std::uint64_t bit = std::uint64_t{1} << (key & 63);
      if (word & bit) return;
      word |= bit;
      queue.push_back(static_cast<std::uint32_t>(key));
    };
    for (Vertex v : seeds) {
      mark(static_cast<std::uint64_t>(v) * states + memory_->start_state(v));
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex v = static_cast<Vertex>(queue[head] / states);
      const StateId s = static_cast<StateId>(queue[head] % states);
      auto succ = arena_->successors(v);
      const EdgeId base = arena_->first_edge(v);
      edges += succ.size();
      for (std::size_t j = 0; j < succ.size(); ++j) {
        const StateId next =
            memory_->update(s, base + static_cast<EdgeId>(j), succ[j]);
        mark(static_cast<std::uint64_t>(succ[j]) * states + next);
      }
    }
  }
  word_rank_.assign(bits_.size() + 1, 0);
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    word_rank_[w + 1] = word_rank_[w] + std::popcount(bits_[w]);
  }

  // Pass 2: ids in key order, edges through the rank.
  const std::size_t count = word_rank_.back();
  vertex_.reserve(count);
  state_.reserve(count);
  offsets_.reserve(count + 1);
  targets_.reserve(edges);
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    for (std::uint64_t word = bits_[w]; word != 0; word &= word - 1) {
      const std::uint64_t key = w * 64 + std::countr_zero(word);
      const Vertex v = static_cast<Vertex>(key / states);
      const StateId s = static_cast<StateId>(key % states);
      vertex_.push_back(v);
      state_.push_back(s);
      auto succ = arena_->successors(v);
      const EdgeId base = arena_->first_edge(v);
      for (std::size_t j = 0; j < succ.size(); ++j) {
        const StateId next =
            memory_->update(s, base + static_cast<EdgeId>(j), succ[j]);
        targets_.push_back(static_cast<Vertex>(
            rank(static_cast<std::uint64_t>(succ[j]) * states + next)));
      }
      offsets_.push_back(static_cast<EdgeId>(targets_.size()));
    }
  }
}

void ProductArena::build_hashed(std::span<const Vertex> seeds,
                                bool all_pairs) {
  const auto n = arena_->vertex_count();
  const auto states = memory_->state_count();
  // Ids double as the BFS queue: vertex_[i] is expanded in order of i.
  if (all_pairs) {
    for (Vertex v = 0; v < n; ++v) {
      for (StateId s = 0; s < states; ++s) intern(v, s);
    }
  } else {
    for (Vertex v : seeds) intern(v, memory_->start_state(v));
  }
  for (std::size_t p = 0; p < vertex_.size(); ++p) {
    const Vertex v = vertex_[p];
    const StateId s = state_[p];
    auto succ = arena_->successors(v);
    const EdgeId base = arena_->first_edge(v);
    for (std::size_t j = 0; j < succ.size(); ++j) {
      const StateId next =
          memory_->update(s, base + static_cast<EdgeId>(j), succ[j]);
      targets_.push_back(intern(succ[j], next));
    }
    offsets_.push_back(static_cast<EdgeId>(targets_.size()));
  }
}

void ProductArena::build_predecessors() {
  const auto count = vertex_.size();
  in_offsets_.assign(count + 1, 0);
  for (Vertex t : targets_) ++in_offsets_[t + 1];
  for (std::size_t p = 0; p < count; ++p) in_offsets_[p + 1] += in_offsets_[p];
  sources_.resize(targets_.size());
  std::vector<EdgeId> fill(in_offsets_.begin(), in_offsets_.end() - 1);
  for (Vertex p = 0; p < count; ++p) {
    for (EdgeId e = offsets_[p]; e < offsets_[p + 1]; ++e) {
      sources_[fill[targets_[e]]++] = p;
    }
  }
}

}  // namespace genreach
