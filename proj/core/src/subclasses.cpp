#include "genreach/subclasses.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <numeric>
#include <string>

#include "genreach/errors.hpp"
#include "genreach/reach.hpp"

namespace genreach {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

std::vector<Vertex> distinct(std::span<const Vertex> vs) {
  std::vector<Vertex> out(vs.begin(), vs.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Order a totally preordered set so that each element is below the next:
// the element below the most others goes first, ties by vertex index.
// Throws InternalError if the result is not a chain.
std::vector<std::size_t> chain_order(const ReachMatrix& rm,
                                     std::span<const std::size_t> members) {
  std::vector<std::pair<std::size_t, std::size_t>> keyed;
  for (auto i : members) {
    std::size_t above = 0;
    for (auto j : members) above += rm.leq(i, j);
    keyed.emplace_back(above, i);
  }
  std::sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return rm.vertices[a.second] < rm.vertices[b.second];
  });
  std::vector<std::size_t> order;
  for (auto [above, i] : keyed) order.push_back(i);
  for (std::size_t x = 0; x + 1 < order.size(); ++x) {
    if (!rm.leq(order[x], order[x + 1])) {
      throw InternalError("preorder sort did not produce a chain");
    }
  }
  return order;
}

std::vector<Vertex> shortest_path(const Arena& arena, Vertex from, Vertex to) {
  std::vector<Vertex> parent(arena.vertex_count(), kNoVertex);
  std::deque<Vertex> queue{from};
  parent[from] = from;
  while (!queue.empty() && parent[to] == kNoVertex) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : arena.successors(v)) {
      if (parent[w] == kNoVertex) {
        parent[w] = v;
        queue.push_back(w);
      }
    }
  }
  if (parent[to] == kNoVertex) throw InternalError("witness hop unreachable");
  std::vector<Vertex> path;
  for (Vertex v = to; v != from; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<bool> reachable_from(const Arena& arena, Vertex v0) {
  std::vector<bool> seen(arena.vertex_count(), false);
  std::vector<Vertex> stack{v0};
  seen[v0] = true;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : arena.successors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

void require_oneplayer_size2(const Game& game) {
  if (!game.arena().all_owned_by(Player::Eve)) {
    throw PreconditionFailed("NotOnePlayer: some vertex is owned by Adam");
  }
  for (int i = 0; i < game.k(); ++i) {
    if (game.objective().color_set(i).size() > 2) {
      throw PreconditionFailed("ColorTooLarge: color " + std::to_string(i + 1) +
                               " has more than two vertices");
    }
  }
}

}  // namespace

std::optional<std::size_t> ReachMatrix::index_of(Vertex v) const {
  auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
  if (it == vertices.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - vertices.begin());
}

bool ReachMatrix::total() const {
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i + 1; j < size(); ++j) {
      if (!comparable(i, j)) return false;
    }
  }
  return true;
}

bool ReachMatrix::transitive() const {
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (!leq(i, j)) continue;
      for (std::size_t l = 0; l < size(); ++l) {
        if (leq(j, l) && !leq(i, l)) return false;
      }
    }
  }
  return true;
}

ReachMatrix reach_matrix(const Arena& arena, std::span<const Vertex> relevant) {
  ReachMatrix rm;
  rm.vertices = distinct(relevant);
  const auto r = rm.size();
  rm.below.assign(r * r, false);
  for (std::size_t j = 0; j < r; ++j) {
    auto attr = attractor(arena, std::span<const Vertex>(&rm.vertices[j], 1));
    for (std::size_t i = 0; i < r; ++i) {
      rm.below[i * r + j] = attr.contains(rm.vertices[i]);
    }
  }
  return rm;
}

SolveResult solve_singleton(const Game& game) {
  const auto& arena = game.arena();
  const auto& objective = game.objective();
  std::vector<Vertex> targets;
  for (int i = 0; i < game.k(); ++i) {
    if (objective.color_set(i).size() != 1) {
      throw PreconditionFailed("NotSingleton: color " + std::to_string(i + 1) +
                               " has " +
                               std::to_string(objective.color_set(i).size()) +
                               " vertices");
    }
    targets.push_back(objective.color_set(i).front());
  }
  auto start = std::chrono::steady_clock::now();
  const auto n = game.n();
  const auto m = game.m();

  SolveResult result;
  result.method = Method::Singleton;
  auto rm = reach_matrix(arena, targets);
  result.stats.attractor_calls = rm.size();

  // First incomparable pair, if any.
  std::optional<std::pair<std::size_t, std::size_t>> split;
  for (std::size_t i = 0; i < rm.size() && !split; ++i) {
    for (std::size_t j = i + 1; j < rm.size(); ++j) {
      if (!rm.comparable(i, j)) {
        split = {i, j};
        break;
      }
    }
  }

  if (split) {
    // Adam wins everywhere. State 0 avoids b (a has been seen or is the
    // default), state 1 avoids a; with the primary attractor already
    // entered he dodges the other one while he still can.
    const Vertex a = rm.vertices[split->first];
    const Vertex b = rm.vertices[split->second];
    auto attr_a = attractor(arena, std::span<const Vertex>(&a, 1));
    auto attr_b = attractor(arena, std::span<const Vertex>(&b, 1));
    result.stats.attractor_calls += 2;
    auto next = [&](StateId s, Vertex w) -> StateId {
      return w == a ? 0 : w == b ? 1 : s;
    };
    std::vector<StateId> edges(2 * m), entries(2 * n);
    for (StateId s = 0; s < 2; ++s) {
      for (EdgeId e = 0; e < m; ++e) edges[s * m + e] = next(s, arena.edge(e).to);
      for (Vertex v = 0; v < n; ++v) entries[s * n + v] = next(s, v);
    }
    std::vector<Vertex> moves(2 * n, kNoVertex);
    for (Vertex v = 0; v < n; ++v) {
      if (arena.owner(v) != Player::Adam) continue;
      for (StateId s = 0; s < 2; ++s) {
        const auto& primary = s == 0 ? attr_b : attr_a;
        const auto& secondary = s == 0 ? attr_a : attr_b;
        moves[v * 2 + s] = !primary.contains(v)
                               ? first_successor_outside(arena, v, primary)
                               : first_successor_outside(arena, v, secondary);
      }
    }
    result.winner.assign(n, Player::Adam);
    result.adam_strategy = FiniteMemoryStrategy(
        Player::Adam,
        MemoryStructure::table(2, 0, n, m, std::move(edges), std::move(entries)),
        n, std::move(moves));
    result.stats.memory_states = 2;
    result.stats.wall_ms = elapsed_ms(start);
    return result;
  }

  std::vector<std::size_t> members(rm.size());
  std::iota(members.begin(), members.end(), std::size_t{0});
  auto order = chain_order(rm, members);
  std::vector<Vertex> chain;
  std::vector<AttractorResult> attrs;
  for (auto i : order) {
    chain.push_back(rm.vertices[i]);
    attrs.push_back(attractor(arena, std::span<const Vertex>(&chain.back(), 1)));
  }
  result.stats.attractor_calls += attrs.size();

  result.winner.assign(n, Player::Eve);
  bool adam_somewhere = false;
  for (Vertex v = 0; v < n; ++v) {
    for (const auto& attr : attrs) {
      if (!attr.contains(v)) {
        result.winner[v] = Player::Adam;
        adam_somewhere = true;
        break;
      }
    }
  }

  // State j heads for chain[j]; entering it moves on to j + 1.
  const std::size_t states = std::max<std::size_t>(chain.size(), 1);
  auto advance = [&](StateId s, Vertex w) -> StateId {
    while (s + 1 < chain.size() && chain[s] == w) ++s;
    return s;
  };
  std::vector<StateId> edges(states * m), entries(states * n);
  for (StateId s = 0; s < states; ++s) {
    for (EdgeId e = 0; e < m; ++e) edges[s * m + e] = advance(s, arena.edge(e).to);
    for (Vertex v = 0; v < n; ++v) entries[s * n + v] = advance(s, v);
  }
  std::vector<Vertex> moves(n * states, kNoVertex);
  for (Vertex v = 0; v < n; ++v) {
    if (arena.owner(v) != Player::Eve) continue;
    for (StateId s = 0; s < states; ++s) {
      Vertex w = arena.successors(v).front();
      if (s < attrs.size() && attrs[s].eve_move[v] != kNoVertex) {
        w = attrs[s].eve_move[v];
      }
      moves[v * states + s] = w;
    }
  }
  result.eve_strategy = FiniteMemoryStrategy(
      Player::Eve,
      MemoryStructure::table(states, 0, n, m, std::move(edges),
                             std::move(entries)),
      n, std::move(moves));
  result.stats.memory_states = states;
  if (adam_somewhere) {
    // Attractors in color order.
    std::vector<AttractorResult> per_color;
    for (Vertex t : targets) {
      auto pos = std::find(chain.begin(), chain.end(), t) - chain.begin();
      per_color.push_back(attrs[pos]);
    }
    result.adam_strategy = commit_avoid_strategy(arena, per_color);
  }
  result.stats.wall_ms = elapsed_ms(start);
  return result;
}

TwoSatFormula oneplayer_size2_formula(const Game& game, Vertex v0,
                                      std::vector<Vertex>* vars) {
  require_oneplayer_size2(game);
  const auto& arena = game.arena();
  std::vector<Vertex> colored;
  for (const auto& set : game.objective().color_sets()) {
    colored.insert(colored.end(), set.begin(), set.end());
  }
  auto rm = reach_matrix(arena, colored);
  auto from_v0 = reachable_from(arena, v0);

  TwoSatFormula f;
  f.variables = rm.size();
  for (Vertex v : rm.vertices) f.labels.push_back(arena.name(v));
  for (std::uint32_t i = 0; i < rm.size(); ++i) {
    for (std::uint32_t j = i + 1; j < rm.size(); ++j) {
      if (!rm.comparable(i, j)) f.add({i, false}, {j, false});
    }
  }
  for (const auto& set : game.objective().color_sets()) {
    if (set.empty()) continue;
    auto x = static_cast<std::uint32_t>(*rm.index_of(set.front()));
    auto y = static_cast<std::uint32_t>(*rm.index_of(set.back()));
    f.add({x, true}, {y, true});
  }
  for (std::uint32_t i = 0; i < rm.size(); ++i) {
    if (!from_v0[rm.vertices[i]]) f.add({i, false});
  }
  if (vars) *vars = rm.vertices;
  return f;
}

SolveResult solve_oneplayer_size2(const Game& game) {
  require_oneplayer_size2(game);
  auto start = std::chrono::steady_clock::now();
  const auto& arena = game.arena();
  const auto n = game.n();

  SolveResult result;
  result.method = Method::OnePlayerSize2;
  result.winner.assign(n, Player::Adam);

  bool some_empty = false;
  for (const auto& set : game.objective().color_sets()) {
    some_empty |= set.empty();
  }

  std::vector<Vertex> colored;
  for (const auto& set : game.objective().color_sets()) {
    colored.insert(colored.end(), set.begin(), set.end());
  }
  auto rm = reach_matrix(arena, colored);
  result.stats.attractor_calls = rm.size();

  for (Vertex v0 = 0; v0 < n && !some_empty; ++v0) {
    auto from_v0 = reachable_from(arena, v0);
    // Some color entirely out of reach: no need for the formula.
    bool all_reachable = true;
    for (const auto& set : game.objective().color_sets()) {
      all_reachable &= std::any_of(set.begin(), set.end(),
                                   [&](Vertex z) { return from_v0[z]; });
    }
    if (!all_reachable) continue;

    std::vector<Vertex> vars;
    auto formula = oneplayer_size2_formula(game, v0, &vars);
    auto sat = two_sat_solve(formula);
    if (!sat.satisfiable) continue;
    result.winner[v0] = Player::Eve;
    if (game.init() != v0) continue;

    // One true vertex per color, visited in preorder order.
    std::vector<std::size_t> chosen;
    for (const auto& set : game.objective().color_sets()) {
      for (Vertex z : set) {
        auto i = *rm.index_of(z);
        if (sat.assignment[i]) {
          chosen.push_back(i);
          break;
        }
      }
    }
    std::sort(chosen.begin(), chosen.end());
    chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
    auto order = chain_order(rm, chosen);
    result.witness = {v0};
    for (auto i : order) {
      auto hop = shortest_path(arena, result.witness.back(), rm.vertices[i]);
      result.witness.insert(result.witness.end(), hop.begin(), hop.end());
    }
  }
  result.stats.wall_ms = elapsed_ms(start);
  return result;
}

}  // namespace genreach
