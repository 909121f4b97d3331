#pragma once

#include <span>
#include <string_view>

#include <nlohmann/json.hpp>

#include "genreach/game.hpp"
#include "genreach/memory.hpp"
#include "genreach/solve_result.hpp"
#include "genreach/strategy_lab.hpp"

namespace genreach {

// Strategy document:
//   { "player": "eve"|"adam", "states": S, "initial": m0,
//     "update": [{"state", "from", "to", "next_state"}],
//     "moves":  [{"vertex", "state", "successor"}] }
// Vertices are referenced by name. Updates not listed keep the state. An
// update with "from": null is an entry update: it applies once, to the
// initial state, when a play starts at "to". Moves may be omitted at
// vertices with a single successor.
nlohmann::json strategy_to_json(const Arena& arena,
                                const FiniteMemoryStrategy& strategy);

// Throws ParseError (line 0) on schema problems and InvalidGame on unknown
// vertices, non-edges and out-of-range states.
FiniteMemoryStrategy strategy_from_json(const Arena& arena,
                                        const nlohmann::json& doc);

nlohmann::json names_json(const Arena& arena, std::span<const Vertex> vertices);

nlohmann::json result_to_json(const Game& game, const SolveResult& result,
                              bool with_strategies);

nlohmann::json verdict_to_json(const Arena& arena, const Verdict& verdict);

}  // namespace genreach
