#include "genreach/game.hpp"

#include <algorithm>
#include <string>

#include "genreach/errors.hpp"

namespace genreach {

Objective::Objective(std::size_t vertex_count,
                     std::vector<std::vector<Vertex>> color_sets)
    : sets_(std::move(color_sets)), masks_(vertex_count, 0) {
  if (sets_.size() > static_cast<std::size_t>(kMaxColors)) {
    throw InvalidGame("at most " + std::to_string(kMaxColors) +
                      " colors are representable, got " +
                      std::to_string(sets_.size()));
  }
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    auto& set = sets_[i];
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    for (Vertex v : set) {
      if (v >= vertex_count) {
        throw InvalidGame("color " + std::to_string(i + 1) +
                          " names vertex " + std::to_string(v) +
                          " out of range");
      }
      masks_[v] |= ColorMask{1} << i;
    }
  }
}

Game::Game(Arena arena, Objective objective, std::optional<Vertex> init)
    : arena_(std::move(arena)),
      objective_(std::move(objective)),
      init_(init) {
  auto report = validate_arena(arena_);
  if (!report.ok()) throw InvalidGame(report.violations.front());
  if (objective_.masks().size() != arena_.vertex_count()) {
    throw InvalidGame("objective and arena disagree on the vertex count");
  }
  if (init_ && *init_ >= arena_.vertex_count()) {
    throw InvalidGame("init vertex out of range");
  }
}

Game Game::with_init(std::optional<Vertex> v) const {
  return Game(arena_, objective_, v);
}

bool same_structure(const Game& a, const Game& b) {
  return a.arena().names() == b.arena().names() &&
         a.arena().owners() == b.arena().owners() &&
         a.arena().edges() == b.arena().edges() &&
         a.objective() == b.objective() && a.init() == b.init();
}

void require_color_cap(const Game& game, int cap) {
  if (game.k() > cap) {
    throw CapExceeded("game has " + std::to_string(game.k()) +
                      " colors, cap is " + std::to_string(cap));
  }
}

Play make_play(const Game& game, std::vector<Vertex> vertices) {
  Play play;
  ColorMask seen = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] >= game.n()) throw InvalidGame("play leaves the arena");
    if (i > 0 && !game.arena().has_edge(vertices[i - 1], vertices[i])) {
      throw InvalidGame("play uses a missing edge at step " +
                        std::to_string(i));
    }
    seen |= game.colors(vertices[i]);
    play.visited.push_back(seen);
  }
  play.vertices = std::move(vertices);
  return play;
}

}  // namespace genreach
