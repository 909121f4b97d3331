#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "genreach/arena.hpp"
#include "genreach/game.hpp"

namespace genreach {

// genreach format, version 1. Line oriented, '#' starts a comment:
//
//   genreach 1
//   colors <k>
//   vertex <name> <eve|adam> [<color> ...]     colors are 1..k
//   edge <from> <to>
//   init <name>                                 optional
//
// Throws ParseError (with the offending line) on bad tokens, unknown names,
// out-of-range colors, duplicates and dead-end vertices.
Game parse_game(std::string_view text);

// Canonical document: vertices in index order, edges in (from, to) order.
std::string serialize_game(const Game& game);

struct DotAnnotations {
  // Winner per vertex; vertices get the player's fill color.
  std::optional<std::vector<Player>> winner;
  // Edges drawn bold, e.g. moves prescribed by a strategy.
  std::vector<Edge> highlighted;
};

inline constexpr std::string_view kEveFill = "#cfe3ff";
inline constexpr std::string_view kAdamFill = "#ffd9d2";

// Eve vertices are circles, Adam vertices boxes, color memberships go into
// the labels and the start vertex gets a double border.
std::string export_dot(const Game& game, const DotAnnotations& notes = {});

}  // namespace genreach
