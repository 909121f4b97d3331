#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "genreach/attractor.hpp"
#include "genreach/game.hpp"
#include "genreach/memory.hpp"
#include "genreach/product.hpp"
#include "genreach/solve_result.hpp"

namespace genreach {

struct FptOptions {
  int color_cap = kDefaultColorCap;
  // Build Eve's lifted strategy and Adam's strategy.
  bool strategies = true;
  // Replace Adam's raw 2^k-state product strategy by the antichain one.
  bool compress_adam = true;
};

// The reachability game G x M over the color-subset memory, solved.
// Product states are color masks; the target is every (v, full set).
class ProductSolution {
 public:
  ProductSolution(const Game& game, int color_cap = kDefaultColorCap);

  const Game& game() const noexcept { return *game_; }
  const MemoryStructure& memory() const noexcept { return *memory_; }
  const ProductArena& product() const noexcept { return *product_; }
  const AttractorResult& attractor() const noexcept { return attractor_; }

  ColorMask mask(Vertex p) const { return product_->state(p); }
  bool eve_wins(Vertex p) const { return attractor_.contains(p); }
  // Winner from v with memory colors(v).
  Player winner(Vertex v) const;

  // Adam's positional product strategy: first successor outside the
  // attractor at his losing-for-Eve product vertices, kNoVertex elsewhere.
  std::vector<Vertex> adam_product_moves() const;

 private:
  const Game* game_;
  std::unique_ptr<MemoryStructure> memory_;
  std::unique_ptr<ProductArena> product_;
  AttractorResult attractor_;
};

// Generalized reachability solved in 2^k * O(n + m) through the product with
// the color-subset memory. Eve gets her lifted strategy with the full-set
// state pruned (at most 2^k - 1 states); Adam gets the antichain strategy
// (at most C(k, k/2) states) or, with compress_adam off, his raw product
// strategy. Throws CapExceeded when k > color_cap.
SolveResult solve_fpt(const Game& game, const FptOptions& options = {});

// Positional product strategy -> finite-memory strategy over the product's
// memory. choice[p] is a product successor of p or kNoVertex.
FiniteMemoryStrategy lift_strategy(const ProductArena& product,
                                   std::span<const Vertex> choice,
                                   Player player);

// Eve's strategy from the product solution over the color-subset memory
// without the full set (2^k - 1 states); reaching the full set redirects to
// state 0.
FiniteMemoryStrategy lift_eve_pruned(const ProductSolution& solution);

// Per vertex, the inclusion-maximal color sets S with (v, S) winning for
// Adam, sorted by mask value.
struct AntichainTable {
  std::vector<std::vector<ColorMask>> maximal;

  std::size_t width() const;  // max over v of p(v)
};

// `adam_pairs` is Adam's product region as (vertex, set) pairs. When
// `known_pairs` is given (every pair the solver decided), a known pair below
// an Adam pair that is not itself Adam's raises InternalError: Adam's region
// must be downward closed in the set coordinate.
AntichainTable antichain_table(
    std::size_t vertex_count,
    std::span<const std::pair<Vertex, ColorMask>> adam_pairs,
    std::optional<std::span<const std::pair<Vertex, ColorMask>>> known_pairs =
        std::nullopt);

AntichainTable antichain_table(const ProductSolution& solution);

// Adam's strategy with memory = index into the antichain of the current
// vertex. Memory i at v means the visited colors are inside S_i(v); moving
// to v' picks the smallest j with S_i(v) | colors(v') inside S_j(v').
// Requires Adam to win somewhere.
FiniteMemoryStrategy compress_adam(const ProductSolution& solution);
FiniteMemoryStrategy compress_adam(const ProductSolution& solution,
                                   const AntichainTable& table);

}  // namespace genreach
