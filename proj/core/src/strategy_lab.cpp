#include "genreach/strategy_lab.hpp"

#include <bit>
#include <functional>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "genreach/errors.hpp"
#include "genreach/generators.hpp"

namespace genreach {

namespace {

std::string state_label(const Arena& arena, Vertex v, StateId s) {
  return arena.name(v) + " in memory state " + std::to_string(s);
}

struct Config {
  Vertex v;
  StateId a;
  StateId b;
  ColorMask seen;

  bool operator==(const Config&) const = default;
};

struct ConfigHash {
  std::size_t operator()(const Config& c) const noexcept {
    std::size_t h = std::hash<std::uint64_t>{}(
        (std::uint64_t{c.v} << 32) | c.a);
    h ^= std::hash<std::uint64_t>{}((std::uint64_t{c.b} << 32) ^ c.seen) +
         0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Visit marks over (vertex, state, colors), dense when small.
class NodeMarks {
 public:
  NodeMarks(std::size_t vertex_states, int k) : k_(k) {
    int bits = std::bit_width(vertex_states) + k;
    if (bits > 62) throw CapExceeded("configuration space too large to index");
    std::size_t total = vertex_states << k;
    if (total <= (std::size_t{1} << 24)) dense_.assign(total, 0);
  }

  std::uint64_t key(std::size_t vertex_state, ColorMask seen) const {
    return (static_cast<std::uint64_t>(vertex_state) << k_) | seen;
  }
  std::uint8_t get(std::uint64_t key) const {
    if (!dense_.empty()) return dense_[key];
    auto it = sparse_.find(key);
    return it == sparse_.end() ? 0 : it->second;
  }
  void set(std::uint64_t key, std::uint8_t mark) {
    if (!dense_.empty()) {
      dense_[key] = mark;
    } else {
      sparse_[key] = mark;
    }
  }

 private:
  int k_;
  std::vector<std::uint8_t> dense_;
  std::unordered_map<std::uint64_t, std::uint8_t> sparse_;
};

constexpr std::uint8_t kGray = 1;
constexpr std::uint8_t kBlack = 2;

}  // namespace

SimOutcome simulate(const Game& game, const FiniteMemoryStrategy& sigma,
                    const FiniteMemoryStrategy& tau) {
  if (!game.init()) throw PreconditionFailed("simulate needs an init vertex");
  return simulate(game, sigma, tau, *game.init());
}

SimOutcome simulate(const Game& game, const FiniteMemoryStrategy& sigma,
                    const FiniteMemoryStrategy& tau, Vertex start) {
  if (sigma.player() != Player::Eve || tau.player() != Player::Adam) {
    throw PreconditionFailed("simulate takes Eve's strategy, then Adam's");
  }
  const auto& arena = game.arena();
  check_strategy(arena, sigma);
  check_strategy(arena, tau);

  SimOutcome out;
  Vertex v = start;
  StateId a = sigma.memory().start_state(v);
  StateId b = tau.memory().start_state(v);
  ColorMask seen = game.colors(v);
  std::vector<Vertex> path{v};
  // Visited colors only grow, so configurations seen under a smaller mask
  // can be forgotten.
  std::unordered_set<Config, ConfigHash> configs;
  while (true) {
    if (seen == game.full()) {
      out.winner = Player::Eve;
      out.reason = SimReason::AllColors;
      break;
    }
    if (!configs.insert({v, a, b, seen}).second) {
      out.winner = Player::Adam;
      out.reason = SimReason::StateRepeat;
      break;
    }
    bool eve = arena.owner(v) == Player::Eve;
    auto w = eve ? resolve_move(arena, sigma, v, a)
                 : resolve_move(arena, tau, v, b);
    if (!w) {
      throw StrategyPartial("no move at " +
                            state_label(arena, v, eve ? a : b));
    }
    EdgeId e = arena.edge_id(v, *w);
    a = sigma.memory().update(a, e, *w);
    b = tau.memory().update(b, e, *w);
    v = *w;
    ColorMask next = seen | game.colors(v);
    if (next != seen) configs.clear();
    seen = next;
    path.push_back(v);
  }
  out.steps = path.size() - 1;
  out.play = make_play(game, std::move(path));
  return out;
}

Verdict verify_strategy(const Game& game, const FiniteMemoryStrategy& strategy,
                        std::span<const Vertex> claimed) {
  return verify_strategy(game, strategy, to_set(game.n(), claimed));
}

Verdict verify_strategy(const Game& game, const FiniteMemoryStrategy& strategy,
                        const VertexSet& claimed) {
  const auto& arena = game.arena();
  check_strategy(arena, strategy);
  const auto& mem = strategy.memory();
  const auto states = mem.state_count();
  const Player me = strategy.player();
  const ColorMask full = game.full();
  NodeMarks marks(game.n() * states, game.k());

  struct Frame {
    Vertex v;
    StateId s;
    ColorMask seen;
    std::uint64_t key;
    std::uint32_t next;
    Vertex forced;  // the strategy's move at its own vertices
  };

  Verdict verdict;
  std::vector<Frame> stack;
  auto key_of = [&](Vertex v, StateId s, ColorMask seen) {
    return marks.key(static_cast<std::size_t>(v) * states + s, seen);
  };
  auto push = [&](Vertex v, StateId s, ColorMask seen) {
    Frame f{v, s, seen, key_of(v, s, seen), 0, kNoVertex};
    if (arena.owner(v) == me) {
      auto w = resolve_move(arena, strategy, v, s);
      if (!w) throw StrategyPartial("no move at " + state_label(arena, v, s));
      f.forced = *w;
    }
    marks.set(f.key, kGray);
    ++verdict.explored;
    stack.push_back(f);
  };
  auto path_vertices = [&](std::size_t from, std::size_t to) {
    std::vector<Vertex> out;
    for (std::size_t i = from; i < to; ++i) out.push_back(stack[i].v);
    return out;
  };
  auto fail = [&](Counterexample cx) {
    verdict.winning = false;
    verdict.counterexample = std::move(cx);
    return verdict;
  };

  for (Vertex start = 0; start < game.n(); ++start) {
    if (!claimed[start]) continue;
    StateId s0 = mem.start_state(start);
    ColorMask c0 = game.colors(start);
    if (c0 == full) {
      if (me == Player::Eve) continue;
      return fail({start, {start}, {}});
    }
    if (marks.get(key_of(start, s0, c0)) != 0) continue;
    push(start, s0, c0);
    while (!stack.empty()) {
      auto& f = stack.back();
      auto succ = arena.successors(f.v);
      std::uint32_t limit = f.forced == kNoVertex ? succ.size() : 1;
      if (f.next == limit) {
        marks.set(f.key, kBlack);
        stack.pop_back();
        continue;
      }
      Vertex w = f.forced == kNoVertex ? succ[f.next] : f.forced;
      ++f.next;
      EdgeId e = arena.edge_id(f.v, w);
      StateId s = mem.update(f.s, e, w);
      ColorMask seen = f.seen | game.colors(w);
      if (seen == full) {
        if (me == Player::Eve) continue;
        auto prefix = path_vertices(0, stack.size());
        prefix.push_back(w);
        return fail({start, std::move(prefix), {}});
      }
      auto key = key_of(w, s, seen);
      auto mark = marks.get(key);
      if (mark == kGray && me == Player::Eve) {
        std::size_t at = 0;
        while (stack[at].key != key) ++at;
        return fail({start, path_vertices(0, at),
                     path_vertices(at, stack.size())});
      }
      if (mark != 0) continue;
      push(w, s, seen);
    }
  }
  return verdict;
}

// ---------------------------------------------------------------------------

Player minimax_oracle(const Game& game, const MinimaxOptions& options) {
  if (!game.init()) throw PreconditionFailed("minimax needs an init vertex");
  return minimax_from(game, *game.init(), options);
}

Player minimax_from(const Game& game, Vertex start,
                    const MinimaxOptions& options) {
  require_color_cap(game, 40);
  const auto& arena = game.arena();
  const ColorMask full = game.full();
  const int k = game.k();
  const std::uint32_t horizon =
      static_cast<std::uint32_t>(game.n()) * static_cast<std::uint32_t>(k);

  // Eve winning within d moves is monotone in d: per configuration keep the
  // smallest depth known to win and the largest known to lose.
  struct Bounds {
    std::uint32_t win_at = kInfiniteRank;
    std::int64_t lose_at = -1;
  };
  std::unordered_map<std::uint64_t, Bounds> memo;
  std::size_t nodes = 0;

  std::function<bool(Vertex, ColorMask, std::uint32_t)> eve_wins =
      [&](Vertex v, ColorMask seen, std::uint32_t depth) -> bool {
    if (seen == full) return true;
    if (depth == 0) return false;
    auto key = (static_cast<std::uint64_t>(v) << k) | seen;
    auto& known = memo[key];
    if (depth >= known.win_at) return true;
    if (static_cast<std::int64_t>(depth) <= known.lose_at) return false;
    if (++nodes > options.node_budget) {
      throw BudgetExceeded("minimax node budget of " +
                           std::to_string(options.node_budget) + " exceeded");
    }
    const bool eve = arena.owner(v) == Player::Eve;
    bool result = !eve;
    for (Vertex w : arena.successors(v)) {
      if (eve_wins(w, seen | game.colors(w), depth - 1) == eve) {
        result = eve;
        break;
      }
    }
    // The recursive calls may rehash the table.
    auto& slot = memo[key];
    if (result) {
      slot.win_at = std::min(slot.win_at, depth);
    } else {
      slot.lose_at = std::max<std::int64_t>(slot.lose_at, depth);
    }
    return result;
  };
  return eve_wins(start, game.colors(start), horizon) ? Player::Eve
                                                      : Player::Adam;
}

// ---------------------------------------------------------------------------

std::string_view to_string(MachineClass c) noexcept {
  return c == MachineClass::Full ? "full" : "color-obs";
}

namespace {

// Lazy search over partial machines of a fixed size for one player from
// init. Entries are -1 until decided.
class MachineSearch {
 public:
  MachineSearch(const Game& game, Player player, MachineClass cls,
                std::size_t bound, std::size_t budget, std::size_t& nodes)
      : game_(game),
        arena_(game.arena()),
        player_(player),
        cls_(cls),
        bound_(bound),
        budget_(budget),
        nodes_(nodes) {
    const auto n = game.n();
    if (cls == MachineClass::Full) {
      slots_ = game.m();
    } else {
      std::unordered_map<ColorMask, std::uint32_t> index;
      slot_of_vertex_.resize(n);
      for (Vertex v = 0; v < n; ++v) {
        auto [it, fresh] = index.try_emplace(game.colors(v), index.size());
        slot_of_vertex_[v] = it->second;
      }
      slots_ = index.size();
    }
    updates_.assign(bound * slots_, -1);
    moves_.assign(bound * n, -1);
    std::size_t total = (n * bound) << game.k();
    if (total > (std::size_t{1} << 24)) {
      throw CapExceeded("machine search space too large");
    }
    stamp_.assign(total, 0);
    mark_.assign(total, 0);
  }

  bool run() { return search(); }
  std::size_t refuted() const { return refuted_; }
  std::size_t used() const { return used_; }

  FiniteMemoryStrategy machine() const {
    const auto n = game_.n();
    const auto m = game_.m();
    std::vector<StateId> edges(used_ * m);
    std::vector<Vertex> moves(n * used_, kNoVertex);
    for (StateId s = 0; s < used_; ++s) {
      for (Vertex v = 0; v < n; ++v) {
        auto succ = arena_.successors(v);
        for (std::uint32_t j = 0; j < succ.size(); ++j) {
          EdgeId e = arena_.first_edge(v) + j;
          auto t = updates_[s * slots_ + slot(e, succ[j])];
          edges[s * m + e] = t < 0 ? s : static_cast<StateId>(t);
        }
        if (arena_.owner(v) != player_) continue;
        auto d = moves_[s * n + v];
        moves[v * used_ + s] = succ[d < 0 ? 0 : d];
      }
    }
    return FiniteMemoryStrategy(
        player_, MemoryStructure::table(used_, 0, n, m, std::move(edges)), n,
        std::move(moves));
  }

 private:
  enum class Outcome { Refuted, Won, Open };
  struct Open {
    bool is_move = false;
    std::size_t index = 0;  // into moves_ or updates_
  };

  std::size_t slot(EdgeId e, Vertex to) const {
    return cls_ == MachineClass::Full ? e : slot_of_vertex_[to];
  }

  bool search() {
    if (++nodes_ > budget_) {
      throw BudgetExceeded("machine search budget of " +
                           std::to_string(budget_) + " exceeded");
    }
    Open open;
    switch (explore(open)) {
      case Outcome::Refuted:
        ++refuted_;
        return false;
      case Outcome::Won:
        return true;
      case Outcome::Open:
        break;
    }
    if (open.is_move) {
      Vertex v = static_cast<Vertex>(open.index % game_.n());
      for (std::size_t j = 0; j < arena_.out_degree(v); ++j) {
        moves_[open.index] = static_cast<int>(j);
        if (search()) return true;
      }
      moves_[open.index] = -1;
      return false;
    }
    // New states are introduced in order of first use.
    const std::size_t saved = used_;
    const std::size_t top = std::min(used_, bound_ - 1);
    for (std::size_t t = 0; t <= top; ++t) {
      if (t == used_) ++used_;
      updates_[open.index] = static_cast<int>(t);
      if (search()) return true;
      used_ = saved;
    }
    updates_[open.index] = -1;
    return false;
  }

  // Plays consistent with the decided entries from init. Refuted: some such
  // play is losing for player_. Won: every play is decided and winning.
  Outcome explore(Open& open) {
    ++epoch_;
    const auto n = game_.n();
    const ColorMask full = game_.full();
    const int k = game_.k();
    bool have_open = false;
    auto note_open = [&](bool is_move, std::size_t index) {
      if (!have_open) open = {is_move, index};
      have_open = true;
    };
    struct Frame {
      Vertex v;
      StateId s;
      ColorMask seen;
      std::size_t key;
      std::uint32_t next;
      int forced;
    };
    std::vector<Frame> stack;
    // Returns false when the node is closed at once (undecided move).
    auto push = [&](Vertex v, StateId s, ColorMask seen) {
      std::size_t key = ((static_cast<std::size_t>(v) * bound_ + s) << k) | seen;
      stamp_[key] = epoch_;
      int forced = -1;
      if (arena_.owner(v) == player_) {
        if (arena_.out_degree(v) == 1) {
          forced = 0;
        } else {
          forced = moves_[s * n + v];
          if (forced < 0) {
            note_open(true, s * n + v);
            mark_[key] = kBlack;
            return;
          }
        }
      }
      mark_[key] = kGray;
      stack.push_back({v, s, seen, key, 0, forced});
    };

    const Vertex v0 = *game_.init();
    const ColorMask c0 = game_.colors(v0);
    if (c0 == full) {
      return player_ == Player::Eve ? Outcome::Won : Outcome::Refuted;
    }
    push(v0, 0, c0);
    while (!stack.empty()) {
      auto& f = stack.back();
      auto succ = arena_.successors(f.v);
      std::uint32_t limit = f.forced < 0 ? succ.size() : 1;
      if (f.next == limit) {
        mark_[f.key] = kBlack;
        stack.pop_back();
        continue;
      }
      std::uint32_t j = f.forced < 0 ? f.next : static_cast<std::uint32_t>(f.forced);
      ++f.next;
      Vertex w = succ[j];
      EdgeId e = arena_.first_edge(f.v) + j;
      std::size_t entry = f.s * slots_ + slot(e, w);
      int t = updates_[entry];
      if (t < 0) {
        note_open(false, entry);
        continue;
      }
      ColorMask seen = f.seen | game_.colors(w);
      if (seen == full) {
        if (player_ == Player::Adam) return Outcome::Refuted;
        continue;
      }
      std::size_t key =
          ((static_cast<std::size_t>(w) * bound_ + static_cast<std::size_t>(t))
           << k) |
          seen;
      if (stamp_[key] == epoch_) {
        if (mark_[key] == kGray && player_ == Player::Eve) {
          return Outcome::Refuted;
        }
        continue;
      }
      push(w, static_cast<StateId>(t), seen);
    }
    return have_open ? Outcome::Open : Outcome::Won;
  }

  const Game& game_;
  const Arena& arena_;
  Player player_;
  MachineClass cls_;
  std::size_t bound_;
  std::size_t budget_;
  std::size_t& nodes_;
  std::size_t slots_ = 0;
  std::vector<std::uint32_t> slot_of_vertex_;
  std::vector<int> updates_;
  std::vector<int> moves_;
  std::size_t used_ = 1;
  std::size_t refuted_ = 0;
  std::uint32_t epoch_ = 0;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint8_t> mark_;
};

}  // namespace

MinMemoryResult min_memory_search(const Game& game, Player player,
                                  std::size_t bound, MachineClass machine_class,
                                  const MinMemoryOptions& options) {
  if (!game.init()) {
    throw PreconditionFailed("machine search needs an init vertex");
  }
  if (bound == 0) throw PreconditionFailed("machine bound must be positive");
  require_color_cap(game, kDefaultColorCap);

  MinMemoryResult result;
  result.machine_class = machine_class;
  result.player = player;
  result.bound = bound;
  for (std::size_t size = 1; size <= bound; ++size) {
    std::size_t nodes = 0;
    MachineSearch search(game, player, machine_class, size,
                         options.node_budget - result.search_nodes, nodes);
    bool found = search.run();
    result.per_size.push_back({size, found, search.refuted(), nodes});
    result.refuted += search.refuted();
    result.search_nodes += nodes;
    if (!found) continue;
    auto machine = search.machine();
    const Vertex init = *game.init();
    if (!verify_strategy(game, machine, std::span<const Vertex>(&init, 1))
             .winning) {
      throw InternalError("machine search returned a losing machine");
    }
    result.states = machine.state_count();
    result.machine = std::move(machine);
    break;
  }
  return result;
}

// ---------------------------------------------------------------------------

FlowerRefutation flower_adversary(int k, const FiniteMemoryStrategy& eve_machine) {
  if (k < 1) throw PreconditionFailed("flower needs at least one petal");
  if (k >= 20) throw CapExceeded("flower adversary limited to k < 20");
  const std::size_t threshold = (std::size_t{1} << k) - 1;
  if (eve_machine.player() != Player::Eve) {
    throw PreconditionFailed("flower adversary refutes Eve machines");
  }
  if (eve_machine.state_count() >= threshold) {
    throw PreconditionFailed("StateCountTooLarge: machine has " +
                             std::to_string(eve_machine.state_count()) +
                             " states, the bound is " +
                             std::to_string(threshold - 1));
  }
  Game game = gen_flower(k);
  const auto& arena = game.arena();
  check_strategy(arena, eve_machine);
  const auto& mem = eve_machine.memory();
  const Vertex heart = *arena.find("h");
  std::vector<Vertex> petal(k), stop(k);
  for (int i = 0; i < k; ++i) {
    petal[i] = *arena.find("v" + std::to_string(i + 1));
    stop[i] = *arena.find("nc" + std::to_string(i + 1));
  }

  FlowerRefutation out;
  const auto states = eve_machine.state_count();
  out.stopping_sets.assign(states, 0);
  std::vector<bool> taken(threshold + 1, false);
  for (StateId m = 0; m < states; ++m) {
    for (int i = 0; i < k; ++i) {
      StateId next = mem.update(m, arena.edge_id(heart, petal[i]), petal[i]);
      auto w = resolve_move(arena, eve_machine, petal[i], next);
      if (!w) {
        throw StrategyPartial("no move at " +
                              state_label(arena, petal[i], next));
      }
      if (*w == stop[i]) out.stopping_sets[m] |= ColorMask{1} << i;
    }
    taken[out.stopping_sets[m]] = true;
  }
  ColorMask x = 0;
  while (x < threshold && taken[x]) ++x;
  if (x == threshold) {
    throw InternalError("NoMissingSubset: every strict subset is a stopping set");
  }
  out.missing = x;

  std::vector<Vertex> moves(game.n() * states, kNoVertex);
  for (StateId m = 0; m < states; ++m) {
    int i = std::countr_zero(x ^ out.stopping_sets[m]);
    moves[heart * states + m] = petal[i];
  }
  FiniteMemoryStrategy tau(Player::Adam, mem, game.n(), std::move(moves));
  out.outcome = simulate(game, eve_machine, tau, heart);
  if (out.outcome.winner != Player::Adam) {
    throw InternalError("flower adversary lost against a small machine");
  }
  const auto& play = out.outcome.play.vertices;
  for (std::size_t i = 0; i + 1 < play.size(); ++i) {
    if (play[i] != heart) continue;
    for (int p = 0; p < k; ++p) {
      if (play[i + 1] == petal[p]) out.adam_moves.push_back(p + 1);
    }
  }
  return out;
}

}  // namespace genreach
