#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "genreach/arena.hpp"
#include "genreach/types.hpp"

namespace genreach {

// The color sets F_1..F_k of a generalized reachability objective, with the
// derived per-vertex mask {i | v in F_i}.
class Objective {
 public:
  Objective() = default;
  // color_sets[i] is F_{i+1}; duplicates are dropped, order is normalized.
  // Throws InvalidGame on out-of-range vertices or more than kMaxColors sets.
  Objective(std::size_t vertex_count,
            std::vector<std::vector<Vertex>> color_sets);

  int k() const noexcept { return static_cast<int>(sets_.size()); }
  const std::vector<Vertex>& color_set(int i) const { return sets_[i]; }
  const std::vector<std::vector<Vertex>>& color_sets() const noexcept {
    return sets_;
  }
  ColorMask colors(Vertex v) const { return masks_[v]; }
  std::span<const ColorMask> masks() const noexcept { return masks_; }
  ColorMask full() const noexcept { return full_mask(k()); }

  friend bool operator==(const Objective&, const Objective&) = default;

 private:
  std::vector<std::vector<Vertex>> sets_;
  std::vector<ColorMask> masks_;
};

// An arena, a generalized reachability objective and an optional start.
// Construction validates: a Game never has dead ends or bad indices.
class Game {
 public:
  Game(Arena arena, Objective objective,
       std::optional<Vertex> init = std::nullopt);

  const Arena& arena() const noexcept { return arena_; }
  const Objective& objective() const noexcept { return objective_; }
  std::optional<Vertex> init() const noexcept { return init_; }

  std::size_t n() const noexcept { return arena_.vertex_count(); }
  std::size_t m() const noexcept { return arena_.edge_count(); }
  int k() const noexcept { return objective_.k(); }
  ColorMask colors(Vertex v) const { return objective_.colors(v); }
  ColorMask full() const noexcept { return objective_.full(); }

  Game with_init(std::optional<Vertex> v) const;

 private:
  Arena arena_;
  Objective objective_;
  std::optional<Vertex> init_;
};

// Structural equality: same names, owners, edges, colors and init.
bool same_structure(const Game& a, const Game& b);

// Throws CapExceeded when the game has more colors than `cap`.
void require_color_cap(const Game& game, int cap);

// Finite prefix of a play with the visited-colors mask after each step.
struct Play {
  std::vector<Vertex> vertices;
  std::vector<ColorMask> visited;
};

// Throws InvalidGame when consecutive vertices are not edges.
Play make_play(const Game& game, std::vector<Vertex> vertices);

}  // namespace genreach
