#include "genreach/json_io.hpp"

#include <string>

#include "genreach/errors.hpp"

namespace genreach {

using nlohmann::json;

nlohmann::json strategy_to_json(const Arena& arena,
                                const FiniteMemoryStrategy& strategy) {
  const auto& mem = strategy.memory();
  const auto states = mem.state_count();
  json updates = json::array();
  json moves = json::array();
  for (StateId s = 0; s < states; ++s) {
    for (Vertex v = 0; v < arena.vertex_count(); ++v) {
      if (StateId t = mem.entry(s, v); t != s) {
        updates.push_back(
            {{"state", s}, {"from", nullptr}, {"to", arena.name(v)}, {"next_state", t}});
      }
    }
  }
  for (StateId s = 0; s < states; ++s) {
    for (EdgeId e = 0; e < arena.edge_count(); ++e) {
      auto edge = arena.edge(e);
      if (StateId t = mem.update(s, e, edge.to); t != s) {
        updates.push_back({{"state", s},
                           {"from", arena.name(edge.from)},
                           {"to", arena.name(edge.to)},
                           {"next_state", t}});
      }
    }
  }
  for (Vertex v = 0; v < arena.vertex_count(); ++v) {
    for (StateId s = 0; s < states; ++s) {
      if (auto w = strategy.move(v, s)) {
        moves.push_back(
            {{"vertex", arena.name(v)}, {"state", s}, {"successor", arena.name(*w)}});
      }
    }
  }
  return {{"player", to_string(strategy.player())},
          {"states", states},
          {"initial", mem.initial()},
          {"update", std::move(updates)},
          {"moves", std::move(moves)}};
}

namespace {

Vertex lookup(const Arena& arena, const json& name) {
  if (!name.is_string()) throw ParseError(0, "vertex names must be strings");
  auto v = arena.find(name.get<std::string>());
  if (!v) throw InvalidGame("unknown vertex '" + name.get<std::string>() + "'");
  return *v;
}

StateId state_field(const json& obj, const char* key, std::size_t states) {
  if (!obj.contains(key) || !obj[key].is_number_unsigned()) {
    throw ParseError(0, std::string("missing or bad '") + key + "'");
  }
  auto s = obj[key].get<std::uint64_t>();
  if (s >= states) {
    throw InvalidGame(std::string("'") + key + "' " + std::to_string(s) +
                      " outside the " + std::to_string(states) + " states");
  }
  return static_cast<StateId>(s);
}

}  // namespace

FiniteMemoryStrategy strategy_from_json(const Arena& arena, const json& doc) {
  if (!doc.is_object()) throw ParseError(0, "strategy must be a JSON object");
  for (const char* key : {"player", "states", "initial", "update", "moves"}) {
    if (!doc.contains(key)) {
      throw ParseError(0, std::string("strategy lacks '") + key + "'");
    }
  }
  Player player;
  if (doc["player"] == "eve") {
    player = Player::Eve;
  } else if (doc["player"] == "adam") {
    player = Player::Adam;
  } else {
    throw ParseError(0, "player must be \"eve\" or \"adam\"");
  }
  if (!doc["states"].is_number_unsigned() || doc["states"].get<std::uint64_t>() == 0) {
    throw ParseError(0, "'states' must be a positive integer");
  }
  const auto states = doc["states"].get<std::size_t>();
  if (states > (std::size_t{1} << 24)) throw CapExceeded("too many memory states");
  const StateId initial = state_field(doc, "initial", states);
  if (!doc["update"].is_array() || !doc["moves"].is_array()) {
    throw ParseError(0, "'update' and 'moves' must be arrays");
  }

  const auto n = arena.vertex_count();
  const auto m = arena.edge_count();
  std::vector<StateId> edges(states * m), entries(states * n);
  for (StateId s = 0; s < states; ++s) {
    for (EdgeId e = 0; e < m; ++e) edges[s * m + e] = s;
    for (Vertex v = 0; v < n; ++v) entries[s * n + v] = s;
  }
  for (const auto& u : doc["update"]) {
    if (!u.is_object() || !u.contains("from") || !u.contains("to")) {
      throw ParseError(0, "update entries need 'from' and 'to'");
    }
    StateId s = state_field(u, "state", states);
    StateId t = state_field(u, "next_state", states);
    Vertex to = lookup(arena, u["to"]);
    if (u["from"].is_null()) {
      entries[s * n + to] = t;
      continue;
    }
    Vertex from = lookup(arena, u["from"]);
    EdgeId e = arena.edge_id(from, to);
    if (e == kNoEdge) {
      throw InvalidGame("update on non-edge " + arena.name(from) + " -> " +
                        arena.name(to));
    }
    edges[s * m + e] = t;
  }
  std::vector<Vertex> moves(n * states, kNoVertex);
  for (const auto& mv : doc["moves"]) {
    if (!mv.is_object() || !mv.contains("vertex") || !mv.contains("successor")) {
      throw ParseError(0, "moves need 'vertex', 'state' and 'successor'");
    }
    Vertex v = lookup(arena, mv["vertex"]);
    StateId s = state_field(mv, "state", states);
    moves[v * states + s] = lookup(arena, mv["successor"]);
  }
  FiniteMemoryStrategy strategy(
      player,
      MemoryStructure::table(states, initial, n, m, std::move(edges),
                             std::move(entries)),
      n, std::move(moves));
  check_strategy(arena, strategy);
  return strategy;
}

nlohmann::json names_json(const Arena& arena, std::span<const Vertex> vertices) {
  json out = json::array();
  for (Vertex v : vertices) out.push_back(arena.name(v));
  return out;
}

nlohmann::json result_to_json(const Game& game, const SolveResult& result,
                              bool with_strategies) {
  const auto& arena = game.arena();
  json winners = json::object();
  for (Vertex v = 0; v < game.n(); ++v) {
    winners[arena.name(v)] = to_string(result.winner[v]);
  }
  json out = {
      {"method", to_string(result.method)},
      {"winner", std::move(winners)},
      {"eve_region", names_json(arena, result.region_list(Player::Eve))},
      {"adam_region", names_json(arena, result.region_list(Player::Adam))},
      {"stats",
       {{"product_vertices", result.stats.product_vertices},
        {"product_edges", result.stats.product_edges},
        {"memory_states", result.stats.memory_states},
        {"attractor_calls", result.stats.attractor_calls},
        {"edge_visits", result.stats.edge_visits},
        {"wall_ms", result.stats.wall_ms}}},
  };
  if (game.init()) {
    out["init"] = arena.name(*game.init());
    out["winner_from_init"] = to_string(result.winner[*game.init()]);
  }
  if (!result.witness.empty()) out["witness"] = names_json(arena, result.witness);
  if (with_strategies) {
    if (result.eve_strategy) {
      out["eve_strategy"] = strategy_to_json(arena, *result.eve_strategy);
    }
    if (result.adam_strategy) {
      out["adam_strategy"] = strategy_to_json(arena, *result.adam_strategy);
    }
  }
  return out;
}

nlohmann::json verdict_to_json(const Arena& arena, const Verdict& verdict) {
  json out = {{"winning", verdict.winning}, {"explored", verdict.explored}};
  if (verdict.counterexample) {
    const auto& cx = *verdict.counterexample;
    out["counterexample"] = {{"start", arena.name(cx.start)},
                             {"prefix", names_json(arena, cx.prefix)},
                             {"cycle", names_json(arena, cx.cycle)}};
  }
  return out;
}

}  // namespace genreach
