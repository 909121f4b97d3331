#include "genreach/memory.hpp"

#include <bit>
#include <string>

#include "genreach/errors.hpp"

namespace genreach {

MemoryStructure MemoryStructure::trivial() { return MemoryStructure{}; }

MemoryStructure MemoryStructure::table(std::size_t states, StateId initial,
                                       std::size_t vertex_count,
                                       std::size_t edge_count,
                                       std::vector<StateId> edge_updates,
                                       std::vector<StateId> entry_updates) {
  if (states == 0) throw InvalidGame("memory needs at least one state");
  if (initial >= states) throw InvalidGame("initial memory state out of range");
  if (edge_updates.size() != states * edge_count) {
    throw InvalidGame("memory update table has the wrong size");
  }
  if (!entry_updates.empty() && entry_updates.size() != states * vertex_count) {
    throw InvalidGame("memory entry table has the wrong size");
  }
  for (auto s : edge_updates) {
    if (s >= states) throw InvalidGame("memory update leaves the state set");
  }
  for (auto s : entry_updates) {
    if (s >= states) throw InvalidGame("memory entry leaves the state set");
  }
  MemoryStructure mem;
  mem.states_ = states;
  mem.initial_ = initial;
  mem.rule_ = Table{vertex_count, edge_count, std::move(edge_updates),
                    std::move(entry_updates)};
  return mem;
}

MemoryStructure MemoryStructure::color_subset(
    std::vector<ColorMask> vertex_colors, std::vector<ColorMask> state_masks,
    StateId initial, StateId overflow) {
  if (state_masks.empty()) throw InvalidGame("memory needs at least one state");
  if (initial >= state_masks.size() || overflow >= state_masks.size()) {
    throw InvalidGame("memory state out of range");
  }
  ColorMask all = 0;
  for (auto c : vertex_colors) all |= c;
  for (auto c : state_masks) all |= c;
  int bits = all == 0 ? 0 : 64 - std::countl_zero(all);
  if (bits > 26) throw CapExceeded("color-subset memory limited to 26 colors");

  SubsetRule rule;
  rule.mask_to_state.assign(std::size_t{1} << bits, kNoState);
  for (StateId s = 0; s < state_masks.size(); ++s) {
    rule.mask_to_state[state_masks[s]] = s;
  }
  rule.vertex_colors = std::move(vertex_colors);
  rule.state_masks = std::move(state_masks);
  rule.overflow = overflow;

  MemoryStructure mem;
  mem.states_ = rule.state_masks.size();
  mem.initial_ = initial;
  mem.rule_ = std::move(rule);
  return mem;
}

StateId MemoryStructure::SubsetRule::lookup(ColorMask mask) const {
  if (mask >= mask_to_state.size()) return overflow;
  auto s = mask_to_state[mask];
  return s == kNoState ? overflow : s;
}

StateId MemoryStructure::update(StateId s, EdgeId e, Vertex to) const {
  if (const auto* t = std::get_if<Table>(&rule_)) {
    return t->edges[static_cast<std::size_t>(s) * t->edge_count + e];
  }
  if (const auto* r = std::get_if<SubsetRule>(&rule_)) {
    return r->lookup(r->state_masks[s] | r->vertex_colors[to]);
  }
  return 0;
}

StateId MemoryStructure::entry(StateId s, Vertex v) const {
  if (const auto* t = std::get_if<Table>(&rule_)) {
    if (t->entries.empty()) return s;
    return t->entries[static_cast<std::size_t>(s) * t->vertex_count + v];
  }
  if (const auto* r = std::get_if<SubsetRule>(&rule_)) {
    return r->lookup(r->vertex_colors[v]);
  }
  return 0;
}

std::optional<ColorMask> MemoryStructure::state_mask(StateId s) const {
  if (const auto* r = std::get_if<SubsetRule>(&rule_)) {
    return r->state_masks[s];
  }
  return std::nullopt;
}

MemoryStructure MemoryStructure::materialize(const Arena& arena) const {
  const auto n = arena.vertex_count();
  const auto m = arena.edge_count();
  std::vector<StateId> edges(states_ * m);
  std::vector<StateId> entries(states_ * n);
  for (StateId s = 0; s < states_; ++s) {
    for (Vertex v = 0; v < n; ++v) {
      entries[s * n + v] = entry(s, v);
      auto succ = arena.successors(v);
      for (std::size_t j = 0; j < succ.size(); ++j) {
        EdgeId e = arena.first_edge(v) + static_cast<EdgeId>(j);
        edges[s * m + e] = update(s, e, succ[j]);
      }
    }
  }
  return table(states_, initial_, n, m, std::move(edges), std::move(entries));
}

FiniteMemoryStrategy::FiniteMemoryStrategy(Player player,
                                           MemoryStructure memory,
                                           std::size_t vertex_count,
                                           std::vector<Vertex> moves)
    : player_(player),
      memory_(std::move(memory)),
      vertex_count_(vertex_count),
      moves_(std::move(moves)) {
  if (moves_.size() != vertex_count_ * memory_.state_count()) {
    throw InvalidGame("next-move table has the wrong size");
  }
}

FiniteMemoryStrategy FiniteMemoryStrategy::positional(
    Player player, std::vector<Vertex> moves) {
  auto n = moves.size();
  return FiniteMemoryStrategy(player, MemoryStructure::trivial(), n,
                              std::move(moves));
}

void check_strategy(const Arena& arena, const FiniteMemoryStrategy& strategy) {
  if (strategy.vertex_count() != arena.vertex_count()) {
    throw InvalidGame("strategy was built for an arena with " +
                      std::to_string(strategy.vertex_count()) + " vertices");
  }
  for (Vertex v = 0; v < arena.vertex_count(); ++v) {
    for (StateId s = 0; s < strategy.state_count(); ++s) {
      auto w = strategy.move(v, s);
      if (!w) continue;
      if (arena.owner(v) != strategy.player()) {
        throw InvalidGame("strategy prescribes a move at " + arena.name(v) +
                          ", which belongs to the other player");
      }
      if (!arena.has_edge(v, *w)) {
        throw InvalidGame("strategy move " + arena.name(v) + " -> " +
                          (*w < arena.vertex_count() ? arena.name(*w)
                                                     : std::to_string(*w)) +
                          " is not an edge");
      }
    }
  }
}

std::optional<Vertex> resolve_move(const Arena& arena,
                                   const FiniteMemoryStrategy& strategy,
                                   Vertex v, StateId s) {
  if (auto w = strategy.move(v, s)) return w;
  if (arena.out_degree(v) == 1) return arena.successors(v)[0];
  return std::nullopt;
}

std::size_t reachable_state_count(const Arena& arena,
                                  const FiniteMemoryStrategy& strategy,
                                  const std::vector<Vertex>& starts) {
  const auto& mem = strategy.memory();
  const auto states = mem.state_count();
  std::vector<char> seen(arena.vertex_count() * states, 0);
  std::vector<char> used(states, 0);
  std::vector<std::pair<Vertex, StateId>> stack;
  auto push = [&](Vertex v, StateId s) {
    auto& flag = seen[static_cast<std::size_t>(v) * states + s];
    if (!flag) {
      flag = 1;
      used[s] = 1;
      stack.emplace_back(v, s);
    }
  };
  for (Vertex v : starts) push(v, mem.start_state(v));
  while (!stack.empty()) {
    auto [v, s] = stack.back();
    stack.pop_back();
    auto succ = arena.successors(v);
    for (std::size_t j = 0; j < succ.size(); ++j) {
      if (arena.owner(v) == strategy.player()) {
        auto w = resolve_move(arena, strategy, v, s);
        if (!w || *w != succ[j]) continue;
      }
      push(succ[j], mem.update(s, arena.first_edge(v) + static_cast<EdgeId>(j),
                               succ[j]));
    }
  }
  std::size_t count = 0;
  for (char u : used) count += u;
  return count;
}

}  // namespace genreach
