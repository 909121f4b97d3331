#include "genreach/reach.hpp"

#include <chrono>

#include "genreach/errors.hpp"

namespace genreach {

VertexSet to_set(std::size_t n, std::span<const Vertex> vertices) {
  VertexSet set(n, false);
  for (Vertex v : vertices) set[v] = true;
  return set;
}

std::vector<Vertex> to_list(const VertexSet& set) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < set.size(); ++v) {
    if (set[v]) out.push_back(v);
  }
  return out;
}

VertexSet AttractorResult::members() const {
  VertexSet set(rank.size(), false);
  for (Vertex v = 0; v < rank.size(); ++v) set[v] = contains(v);
  return set;
}

std::size_t AttractorResult::size() const {
  std::size_t count = 0;
  for (auto r : rank) count += r != kInfiniteRank;
  return count;
}

AttractorResult attractor(const Arena& arena, const VertexSet& target) {
  auto result = compute_attractor(arena, target);
  assert(result.edge_visits <= arena.edge_count());
  return result;
}

AttractorResult attractor(const Arena& arena, std::span<const Vertex> target) {
  return attractor(arena, to_set(arena.vertex_count(), target));
}

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Reachability: return "reachability";
    case Method::Fpt: return "fpt";
    case Method::Singleton: return "singleton";
    case Method::OnePlayerSize2: return "oneplayer2";
    case Method::OpponentPlayer: return "opponent";
    case Method::Minimax: return "minimax";
  }
  return "unknown";
}

VertexSet SolveResult::region(Player p) const {
  VertexSet set(winner.size(), false);
  for (Vertex v = 0; v < winner.size(); ++v) set[v] = winner[v] == p;
  return set;
}

std::vector<Vertex> SolveResult::region_list(Player p) const {
  return to_list(region(p));
}

SolveResult solve_reachability(const Arena& arena, const VertexSet& target) {
  auto start = std::chrono::steady_clock::now();
  const auto n = arena.vertex_count();
  auto attr = attractor(arena, target);

  SolveResult result;
  result.method = Method::Reachability;
  result.winner.resize(n);
  std::vector<Vertex> eve(n, kNoVertex);
  std::vector<Vertex> adam(n, kNoVertex);
  for (Vertex v = 0; v < n; ++v) {
    result.winner[v] = attr.contains(v) ? Player::Eve : Player::Adam;
    if (arena.owner(v) == Player::Eve) {
      eve[v] = attr.eve_move[v] != kNoVertex ? attr.eve_move[v]
                                             : arena.successors(v).front();
    } else {
      adam[v] = first_successor_outside(arena, v, attr);
    }
  }
  result.eve_strategy = FiniteMemoryStrategy::positional(Player::Eve, eve);
  result.adam_strategy = FiniteMemoryStrategy::positional(Player::Adam, adam);
  result.stats.memory_states = 1;
  result.stats.attractor_calls = 1;
  result.stats.edge_visits = attr.edge_visits;
  result.stats.wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  return result;
}

FiniteMemoryStrategy commit_avoid_strategy(
    const Arena& arena, const std::vector<AttractorResult>& attractors) {
  const auto n = arena.vertex_count();
  const auto m = arena.edge_count();
  const std::size_t states = std::max<std::size_t>(attractors.size(), 1);

  std::vector<StateId> edges(states * m);
  std::vector<StateId> entries(states * n);
  for (StateId s = 0; s < states; ++s) {
    for (EdgeId e = 0; e < m; ++e) edges[s * m + e] = s;
    for (Vertex v = 0; v < n; ++v) {
      StateId pick = 0;
      for (StateId i = 0; i < attractors.size(); ++i) {
        if (!attractors[i].contains(v)) {
          pick = i;
          break;
        }
      }
      entries[s * n + v] = pick;
    }
  }
  std::vector<Vertex> moves(n * states, kNoVertex);
  for (Vertex v = 0; v < n; ++v) {
    if (arena.owner(v) != Player::Adam) continue;
    for (StateId s = 0; s < states; ++s) {
      moves[v * states + s] =
          s < attractors.size()
              ? first_successor_outside(arena, v, attractors[s])
              : arena.successors(v).front();
    }
  }
  return FiniteMemoryStrategy(
      Player::Adam,
      MemoryStructure::table(states, 0, n, m, std::move(edges),
                             std::move(entries)),
      n, std::move(moves));
}

SolveResult solve_opponent_player(const Game& game) {
  if (!game.arena().all_owned_by(Player::Adam)) {
    throw PreconditionFailed(
        "opponent-player solver needs every vertex owned by Adam");
  }
  auto start = std::chrono::steady_clock::now();
  const auto& arena = game.arena();
  const auto n = game.n();

  SolveResult result;
  result.method = Method::OpponentPlayer;
  std::vector<AttractorResult> attrs;
  attrs.reserve(game.k());
  for (int i = 0; i < game.k(); ++i) {
    attrs.push_back(attractor(arena, game.objective().color_set(i)));
    result.stats.edge_visits += attrs.back().edge_visits;
  }
  result.stats.attractor_calls = attrs.size();

  result.winner.assign(n, Player::Eve);
  bool adam_somewhere = false;
  for (Vertex v = 0; v < n; ++v) {
    for (const auto& a : attrs) {
      if (!a.contains(v)) {
        result.winner[v] = Player::Adam;
        adam_somewhere = true;
        break;
      }
    }
  }
  // Eve owns nothing: her strategy is the empty one.
  result.eve_strategy = FiniteMemoryStrategy::positional(
      Player::Eve, std::vector<Vertex>(n, kNoVertex));
  if (adam_somewhere) {
    result.adam_strategy = commit_avoid_strategy(arena, attrs);
    result.stats.memory_states = result.adam_strategy->state_count();
  }
  result.stats.wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  return result;
}

}  // namespace genreach
