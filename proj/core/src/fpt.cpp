#include "genreach/fpt.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <string>

#include "genreach/errors.hpp"

namespace genreach {

ProductSolution::ProductSolution(const Game& game, int color_cap)
    : game_(&game) {
  memory_ = std::make_unique<MemoryStructure>(
      subset_memory(game.objective(), std::nullopt, color_cap));
  std::vector<Vertex> starts(game.n());
  std::iota(starts.begin(), starts.end(), Vertex{0});
  product_ =
      std::make_unique<ProductArena>(game.arena(), *memory_, starts);

  const ColorMask full = game.full();
  VertexSet target(product_->vertex_count(), false);
  for (Vertex p = 0; p < product_->vertex_count(); ++p) {
    target[p] = product_->state(p) == full;
  }
  attractor_ = compute_attractor(*product_, target);
  assert(attractor_.edge_visits <= product_->edge_count());
}

Player ProductSolution::winner(Vertex v) const {
  return eve_wins(product_->start(v)) ? Player::Eve : Player::Adam;
}

std::vector<Vertex> ProductSolution::adam_product_moves() const {
  std::vector<Vertex> choice(product_->vertex_count(), kNoVertex);
  for (Vertex p = 0; p < product_->vertex_count(); ++p) {
    if (product_->owner(p) == Player::Adam && !attractor_.contains(p)) {
      choice[p] = first_successor_outside(*product_, p, attractor_);
    }
  }
  return choice;
}

FiniteMemoryStrategy lift_strategy(const ProductArena& product,
                                   std::span<const Vertex> choice,
                                   Player player) {
  const auto& arena = product.base();
  const auto n = arena.vertex_count();
  const auto states = product.memory().state_count();
  std::vector<Vertex> moves(n * states, kNoVertex);
  for (Vertex p = 0; p < product.vertex_count(); ++p) {
    if (choice[p] == kNoVertex || product.owner(p) != player) continue;
    moves[product.base_vertex(p) * states + product.state(p)] =
        product.base_vertex(choice[p]);
  }
  return FiniteMemoryStrategy(player, product.memory(), n, std::move(moves));
}

FiniteMemoryStrategy lift_eve_pruned(const ProductSolution& solution) {
  const auto& game = solution.game();
  const auto& arena = game.arena();
  const auto& product = solution.product();
  const auto& attr = solution.attractor();
  const ColorMask full = game.full();
  // Every color set but the full one; reaching the full set means Eve has
  // won, and the overflow state 0 keeps her moving legally.
  std::vector<ColorMask> masks(full == 0 ? 1 : full);
  std::iota(masks.begin(), masks.end(), ColorMask{0});

  const auto states = masks.size();
  const auto n = arena.vertex_count();
  std::vector<Vertex> moves(n * states, kNoVertex);
  for (Vertex v = 0; v < n; ++v) {
    if (arena.owner(v) != Player::Eve) continue;
    std::fill_n(moves.begin() + v * states, states, arena.successors(v).front());
  }
  // State id == mask below the full set, so one pass over the product fills
  // every attracted configuration.
  for (Vertex p = 0; p < product.vertex_count(); ++p) {
    if (product.owner(p) != Player::Eve || attr.eve_move[p] == kNoVertex) continue;
    const StateId s = product.state(p);
    if (s >= states) continue;
    moves[product.base_vertex(p) * states + s] = product.base_vertex(attr.eve_move[p]);
  }
  auto memory = MemoryStructure::color_subset(
      {game.objective().masks().begin(), game.objective().masks().end()},
      std::move(masks), 0, 0);
  return FiniteMemoryStrategy(Player::Eve, std::move(memory), n,
                              std::move(moves));
}

std::size_t AntichainTable::width() const {
  std::size_t w = 0;
  for (const auto& sets : maximal) w = std::max(w, sets.size());
  return w;
}

AntichainTable antichain_table(
    std::size_t vertex_count,
    std::span<const std::pair<Vertex, ColorMask>> adam_pairs,
    std::optional<std::span<const std::pair<Vertex, ColorMask>>> known_pairs) {
  std::vector<std::vector<ColorMask>> per_vertex(vertex_count);
  for (auto [v, s] : adam_pairs) per_vertex[v].push_back(s);

  AntichainTable table;
  table.maximal.resize(vertex_count);
  for (Vertex v = 0; v < vertex_count; ++v) {
    auto& sets = per_vertex[v];
    std::sort(sets.begin(), sets.end(), [](ColorMask a, ColorMask b) {
      auto pa = popcount(a), pb = popcount(b);
      return pa != pb ? pa > pb : a < b;
    });
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    auto& out = table.maximal[v];
    for (ColorMask s : sets) {
      bool dominated = std::any_of(out.begin(), out.end(), [s](ColorMask t) {
        return is_subset(s, t);
      });
      if (!dominated) out.push_back(s);
    }
    std::sort(out.begin(), out.end());
  }

  if (known_pairs) {
    std::vector<std::vector<ColorMask>> adam_sets(vertex_count);
    for (auto [v, s] : adam_pairs) adam_sets[v].push_back(s);
    for (auto& sets : adam_sets) std::sort(sets.begin(), sets.end());
    for (auto [v, s] : *known_pairs) {
      if (std::binary_search(adam_sets[v].begin(), adam_sets[v].end(), s)) {
        continue;
      }
      for (ColorMask t : table.maximal[v]) {
        if (is_subset(s, t)) {
          throw InternalError(
              "Adam's product region is not downward closed at vertex " +
              std::to_string(v));
        }
      }
    }
  }
  return table;
}

AntichainTable antichain_table(const ProductSolution& solution) {
  const auto& product = solution.product();
  std::vector<std::pair<Vertex, ColorMask>> adam;
  for (Vertex p = 0; p < product.vertex_count(); ++p) {
    if (!solution.eve_wins(p)) adam.emplace_back(product.base_vertex(p), solution.mask(p));
  }
  auto table = antichain_table(solution.game().n(), adam);
  // Same closure check as the generic overload, without copying every pair.
  for (Vertex p = 0; p < product.vertex_count(); ++p) {
    if (!solution.eve_wins(p)) continue;
    for (ColorMask t : table.maximal[product.base_vertex(p)]) {
      if (is_subset(solution.mask(p), t)) {
        throw InternalError(
            "Adam's product region is not downward closed at vertex " +
            std::to_string(product.base_vertex(p)));
      }
    }
  }
  return table;
}

FiniteMemoryStrategy compress_adam(const ProductSolution& solution) {
  return compress_adam(solution, antichain_table(solution));
}

FiniteMemoryStrategy compress_adam(const ProductSolution& solution,
                                   const AntichainTable& table) {
  const auto& game = solution.game();
  const auto& arena = game.arena();
  const auto& product = solution.product();
  const auto& attr = solution.attractor();
  const auto n = arena.vertex_count();
  const auto m = arena.edge_count();
  const std::size_t states = std::max<std::size_t>(table.width(), 1);

  auto cover = [&](Vertex v, ColorMask s) -> StateId {
    const auto& sets = table.maximal[v];
    for (StateId j = 0; j < sets.size(); ++j) {
      if (is_subset(s, sets[j])) return j;
    }
    return 0;
  };

  std::vector<StateId> entries(states * n);
  for (StateId i = 0; i < states; ++i) {
    for (Vertex v = 0; v < n; ++v) entries[i * n + v] = cover(v, game.colors(v));
  }
  std::vector<StateId> edges(states * m, 0);
  std::vector<Vertex> moves(n * states, kNoVertex);
  for (Vertex v = 0; v < n; ++v) {
    const auto& sets = table.maximal[v];
    auto succ = arena.successors(v);
    for (StateId i = 0; i < sets.size(); ++i) {
      for (std::size_t j = 0; j < succ.size(); ++j) {
        edges[i * m + arena.first_edge(v) + j] =
            cover(succ[j], sets[i] | game.colors(succ[j]));
      }
      if (arena.owner(v) != Player::Adam) continue;
      auto p = product.find(v, static_cast<StateId>(sets[i]));
      if (!p) throw InternalError("antichain set missing from the product");
      moves[v * states + i] =
          product.base_vertex(first_successor_outside(product, *p, attr));
    }
  }
  return FiniteMemoryStrategy(
      Player::Adam,
      MemoryStructure::table(states, 0, n, m, std::move(edges),
                             std::move(entries)),
      n, std::move(moves));
}

SolveResult solve_fpt(const Game& game, const FptOptions& options) {
  require_color_cap(game, options.color_cap);
  auto start = std::chrono::steady_clock::now();
  ProductSolution solution(game, options.color_cap);

  SolveResult result;
  result.method = Method::Fpt;
  result.winner.resize(game.n());
  bool adam_somewhere = false;
  for (Vertex v = 0; v < game.n(); ++v) {
    result.winner[v] = solution.winner(v);
    adam_somewhere |= result.winner[v] == Player::Adam;
  }
  result.stats.product_vertices = solution.product().vertex_count();
  result.stats.product_edges = solution.product().edge_count();
  result.stats.attractor_calls = 1;
  result.stats.edge_visits = solution.attractor().edge_visits;

  if (options.strategies) {
    result.eve_strategy = lift_eve_pruned(solution);
    result.stats.memory_states = result.eve_strategy->state_count();
    if (adam_somewhere) {
      if (options.compress_adam) {
        result.adam_strategy = compress_adam(solution);
      } else {
        auto choice = solution.adam_product_moves();
        result.adam_strategy =
            lift_strategy(solution.product(), choice, Player::Adam);
      }
    }
  }
  result.stats.wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
  return result;
}

}  // namespace genreach
