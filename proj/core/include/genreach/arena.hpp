#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "genreach/types.hpp"

namespace genreach {

struct Edge {
  Vertex from = 0;
  Vertex to = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline constexpr EdgeId kNoEdge = std::numeric_limits<EdgeId>::max();

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
};

// Finite directed graph whose vertices are split between Eve and Adam.
//
// Edges are kept sorted by (from, to) and stored in CSR form; the edge id of
// (u, v) is its position in that order, so successors(u)[j] has edge id
// first_edge(u) + j. Construction never throws on semantic problems (dead
// ends, duplicates, bad endpoints); those are reported by validate_arena.
class Arena {
 public:
  Arena() = default;
  Arena(std::vector<std::string> names, std::vector<Player> owners,
        std::vector<Edge> edges);
  // Vertices are named by their decimal index.
  Arena(std::vector<Player> owners, std::vector<Edge> edges);

  std::size_t vertex_count() const noexcept { return owners_.size(); }
  std::size_t edge_count() const noexcept { return targets_.size(); }

  Player owner(Vertex v) const { return owners_[v]; }
  const std::vector<Player>& owners() const noexcept { return owners_; }
  const std::string& name(Vertex v) const { return names_[v]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<Vertex> find(std::string_view name) const;

  std::span<const Vertex> successors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::span<const Vertex> predecessors(Vertex v) const {
    return {sources_.data() + in_offsets_[v],
            sources_.data() + in_offsets_[v + 1]};
  }
  std::size_t out_degree(Vertex v) const {
    return offsets_[v + 1] - offsets_[v];
  }

  EdgeId first_edge(Vertex v) const { return offsets_[v]; }
  EdgeId edge_id(Vertex from, Vertex to) const;
  bool has_edge(Vertex from, Vertex to) const {
    return edge_id(from, to) != kNoEdge;
  }
  Edge edge(EdgeId e) const;
  std::vector<Edge> edges() const;

  bool all_owned_by(Player p) const;

 private:
  friend ValidationReport validate_arena(const Arena& arena);

  std::vector<std::string> names_;
  std::vector<Player> owners_;
  std::vector<EdgeId> offsets_{0};
  std::vector<Vertex> targets_;
  std::vector<EdgeId> in_offsets_{0};
  std::vector<Vertex> sources_;
  std::unordered_map<std::string, Vertex> index_;

  // Problems seen while building, surfaced by validate_arena.
  std::vector<Edge> out_of_range_;
  std::vector<Edge> duplicates_;
  std::vector<std::string> duplicate_names_;
};

ValidationReport validate_arena(const Arena& arena);

}  // namespace genreach
