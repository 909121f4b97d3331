#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "genreach/attractor.hpp"
#include "genreach/game.hpp"
#include "genreach/memory.hpp"

namespace genreach {

// ---------------------------------------------------------------------------
// Strategy against strategy

enum class SimReason { AllColors, StateRepeat };

struct SimOutcome {
  Player winner = Player::Eve;
  // Played prefix. For StateRepeat it ends on the first configuration that
  // repeats, so the tail from its earlier occurrence is the cycle.
  Play play;
  std::size_t steps = 0;
  SimReason reason = SimReason::AllColors;
};

// The unique play induced by sigma (Eve) and tau (Adam) from the game's init
// (or `start`). Both machines are finite, so the joint configuration
// (vertex, sigma state, tau state, visited colors) repeats unless Eve sees
// every color first; the winner is exact. Throws StrategyPartial on a
// missing move.
SimOutcome simulate(const Game& game, const FiniteMemoryStrategy& sigma,
                    const FiniteMemoryStrategy& tau);
SimOutcome simulate(const Game& game, const FiniteMemoryStrategy& sigma,
                    const FiniteMemoryStrategy& tau, Vertex start);

// ---------------------------------------------------------------------------
// Verification

struct Counterexample {
  Vertex start = 0;
  // Eve refuted: prefix then cycle, repeated forever, never sees every
  // color. Adam refuted: prefix alone is a path that sees every color.
  std::vector<Vertex> prefix;
  std::vector<Vertex> cycle;
};

struct Verdict {
  bool winning = true;
  std::optional<Counterexample> counterexample;
  std::size_t explored = 0;
};

// Decides whether `strategy` wins from every vertex of `claimed` against all
// opponent behaviors, by exploring arena x memory x visited-colors with the
// strategy's moves fixed. Eve's strategy wins iff the part of that graph
// with incomplete colors reachable from the starts is acyclic; Adam's wins
// iff no configuration with all colors is reachable.
// Throws StrategyPartial when a reached configuration has no move.
Verdict verify_strategy(const Game& game, const FiniteMemoryStrategy& strategy,
                        const VertexSet& claimed);
Verdict verify_strategy(const Game& game, const FiniteMemoryStrategy& strategy,
                        std::span<const Vertex> claimed);

// ---------------------------------------------------------------------------
// Bounded alternating search

struct MinimaxOptions {
  std::size_t node_budget = 20'000'000;
};

// Winner from init by alternating search over plays of length at most n*k:
// Eve wins iff she can force every color within that horizon. Memoized on
// (vertex, visited colors) with the horizon as a monotone bound.
// Throws BudgetExceeded past `node_budget` expansions.
Player minimax_oracle(const Game& game, const MinimaxOptions& options = {});
Player minimax_from(const Game& game, Vertex start,
                    const MinimaxOptions& options = {});

// ---------------------------------------------------------------------------
// Smallest winning machines

enum class MachineClass {
  // The update reads the whole edge.
  Full,
  // The update reads only the color set of the edge's target.
  ColorObs,
};

std::string_view to_string(MachineClass c) noexcept;

struct MinMemoryOptions {
  std::size_t node_budget = 50'000'000;
};

struct SizeReport {
  std::size_t states = 0;
  bool found = false;
  // Partial machines closed off with a losing play (each stands for every
  // total machine extending it).
  std::size_t refuted = 0;
  std::size_t search_nodes = 0;
};

struct MinMemoryResult {
  MachineClass machine_class = MachineClass::ColorObs;
  Player player = Player::Eve;
  std::size_t bound = 0;
  // Smallest winning machine from init with at most `bound` states.
  std::optional<FiniteMemoryStrategy> machine;
  std::size_t states = 0;
  std::size_t refuted = 0;
  std::size_t search_nodes = 0;
  std::vector<SizeReport> per_size;
};

// Exhaustive search for a winning machine of `player` from init with at most
// `bound` states, trying sizes 1, 2, ... in turn. Table entries are decided
// lazily, only when a play consistent with the decisions so far reaches
// them, and states are numbered in order of first use from initial state 0;
// so isomorphic machines and machines differing only on unreachable entries
// are explored once. A branch is closed as soon as a losing play exists
// under the decided entries.
MinMemoryResult min_memory_search(const Game& game, Player player,
                                  std::size_t bound, MachineClass machine_class,
                                  const MinMemoryOptions& options = {});

// ---------------------------------------------------------------------------
// Flower lower bound

struct FlowerRefutation {
  // Petal set i -> stopping set S_m of each memory state m (bit i-1).
  std::vector<ColorMask> stopping_sets;
  // A strict subset of the petals that is no stopping set.
  ColorMask missing = 0;
  // Petals (1-based) Adam chose at the heart, in order.
  std::vector<int> adam_moves;
  SimOutcome outcome;
};

// Refutes an Eve machine with fewer than 2^k - 1 states on gen_flower(k):
// Adam tracks Eve's memory and at the heart picks a petal in the symmetric
// difference of X and S_m. The returned play is checked with simulate.
// Throws PreconditionFailed when the machine has too many states.
FlowerRefutation flower_adversary(int k, const FiniteMemoryStrategy& eve_machine);

}  // namespace genreach
