#include "genreach/generators.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <unordered_set>

#include "genreach/errors.hpp"

namespace genreach {

namespace {

// Incremental arena builder keyed by vertex name.
struct Builder {
  std::vector<std::string> names;
  std::vector<Player> owners;
  std::vector<Edge> edges;
  std::vector<std::vector<Vertex>> colors;

  explicit Builder(int k) : colors(k) {}

  Vertex add(std::string name, Player owner, std::initializer_list<int> cs = {}) {
    Vertex v = static_cast<Vertex>(names.size());
    names.push_back(std::move(name));
    owners.push_back(owner);
    for (int c : cs) colors[c - 1].push_back(v);
    return v;
  }
  void color(Vertex v, int c) { colors[c - 1].push_back(v); }
  void edge(Vertex a, Vertex b) { edges.push_back({a, b}); }

  Game build(Vertex init) {
    const auto n = names.size();
    return Game(Arena(std::move(names), std::move(owners), std::move(edges)),
                Objective(n, std::move(colors)), init);
  }
};

}  // namespace

Game gen_flower(int k) {
  if (k < 1) throw PreconditionFailed("flower needs k >= 1");
  if (k > kMaxColors) throw CapExceeded("too many colors");
  Builder b(k);
  Vertex h = b.add("h", Player::Adam);
  for (int i = 1; i <= k; ++i) {
    auto s = std::to_string(i);
    Vertex v = b.add("v" + s, Player::Eve);
    Vertex c = b.add("c" + s, Player::Eve, {i});
    Vertex nc = b.add("nc" + s, Player::Eve);
    for (int j = 1; j <= k; ++j) {
      if (j != i) b.color(nc, j);
    }
    b.edge(h, v);
    b.edge(v, c);
    b.edge(v, nc);
    b.edge(c, h);
    b.edge(nc, nc);
  }
  return b.build(h);
}

FiniteMemoryStrategy canonical_flower_eve(int k) {
  if (k < 1 || k > kDefaultColorCap) {
    throw PreconditionFailed("canonical flower strategy needs 1 <= k <= 20");
  }
  Game game = gen_flower(k);
  const auto& arena = game.arena();
  const ColorMask full = game.full();
  std::vector<ColorMask> masks(full);
  for (ColorMask s = 0; s < full; ++s) masks[s] = s;
  const auto states = masks.size();
  std::vector<Vertex> moves(game.n() * states, kNoVertex);
  for (int i = 0; i < k; ++i) {
    auto s = std::to_string(i + 1);
    Vertex v = *arena.find("v" + s);
    Vertex c = *arena.find("c" + s);
    Vertex nc = *arena.find("nc" + s);
    for (StateId m = 0; m < states; ++m) {
      moves[v * states + m] = (masks[m] >> i) & 1 ? nc : c;
    }
  }
  auto memory = MemoryStructure::color_subset(
      {game.objective().masks().begin(), game.objective().masks().end()},
      std::move(masks), 0, 0);
  return FiniteMemoryStrategy(Player::Eve, std::move(memory), game.n(),
                              std::move(moves));
}

Game gen_picker(int k) {
  if (k < 3 || k % 2 == 0) {
    throw PreconditionFailed("picker needs an odd k >= 3");
  }
  if (k > kMaxColors) throw CapExceeded("too many colors");
  const int p = k / 2;
  Builder b(k);
  struct Stage {
    const char* prefix;
    Player owner;
  };
  const Stage stages[] = {
      {"e1_", Player::Eve}, {"a_", Player::Adam}, {"e3_", Player::Eve}};
  std::vector<Vertex> choices;
  for (const auto& stage : stages) {
    for (int j = 1; j <= p; ++j) {
      choices.push_back(b.add(stage.prefix + std::to_string(j), stage.owner));
    }
  }
  Vertex sink = b.add("sink", Player::Eve);
  b.edge(sink, sink);
  for (std::size_t x = 0; x < choices.size(); ++x) {
    Vertex next = x + 1 < choices.size() ? choices[x + 1] : sink;
    for (int c = 1; c <= k; ++c) {
      Vertex pass = b.add(b.names[choices[x]] + "_c" + std::to_string(c),
                          Player::Eve, {c});
      b.edge(choices[x], pass);
      b.edge(pass, next);
    }
  }
  return b.build(choices.front());
}

Game gen_fig4(int k) {
  if (k < 2 || k % 2 != 0) {
    throw PreconditionFailed("fig4 family needs an even k >= 2");
  }
  if (k > kMaxColors) throw CapExceeded("too many colors");
  const int q = k / 2;
  Builder b(k);
  Vertex h = b.add("h", Player::Eve);
  for (int i = 1; i <= q; ++i) {
    Vertex pet = b.add("p" + std::to_string(i), Player::Adam);
    Vertex lo = b.add("a" + std::to_string(2 * i - 1), Player::Eve, {2 * i - 1});
    Vertex hi = b.add("a" + std::to_string(2 * i), Player::Eve, {2 * i});
    b.edge(h, pet);
    b.edge(pet, lo);
    b.edge(pet, hi);
    b.edge(lo, h);
    b.edge(hi, h);
  }
  std::vector<Vertex> ends;
  for (int i = 1; i <= q; ++i) {
    Vertex r = b.add("r" + std::to_string(i), Player::Eve);
    if (i == 1) {
      b.edge(h, r);
    } else {
      for (Vertex e : ends) b.edge(e, r);
    }
    Vertex lo = b.add("b" + std::to_string(2 * i - 1), Player::Eve, {2 * i - 1});
    Vertex hi = b.add("b" + std::to_string(2 * i), Player::Eve, {2 * i});
    b.edge(r, lo);
    b.edge(r, hi);
    ends = {lo, hi};
  }
  for (Vertex e : ends) b.edge(e, e);
  return b.build(h);
}

FiniteMemoryStrategy canonical_fig4_eve(int k) {
  Game game = gen_fig4(k);
  const auto& arena = game.arena();
  const int q = k / 2;
  if (q > 20) throw CapExceeded("fig4 strategy limited to k <= 40");
  // Heap-ordered binary tree of depth q: node x at depth d has children
  // 2x+1 (Adam gave the odd color of petal d+1) and 2x+2 (the even one).
  const std::size_t states = (std::size_t{1} << (q + 1)) - 1;
  std::vector<int> depth(states, 0);
  std::vector<ColorMask> evens(states, 0);  // bit d: petal d+1 gave its even color
  for (std::size_t x = 1; x < states; ++x) {
    std::size_t parent = (x - 1) / 2;
    depth[x] = depth[parent] + 1;
    evens[x] = evens[parent];
    if (x == 2 * parent + 2) evens[x] |= ColorMask{1} << depth[parent];
  }

  const auto n = game.n();
  const auto m = game.m();
  std::vector<StateId> edges(states * m);
  for (StateId s = 0; s < states; ++s) {
    for (EdgeId e = 0; e < m; ++e) edges[s * m + e] = s;
    if (depth[s] == q) continue;
    Vertex pet = *arena.find("p" + std::to_string(depth[s] + 1));
    auto succ = arena.successors(pet);
    for (std::size_t j = 0; j < succ.size(); ++j) {
      bool even = arena.name(succ[j]) ==
                  "a" + std::to_string(2 * (depth[s] + 1));
      edges[s * m + arena.first_edge(pet) + j] =
          static_cast<StateId>(2 * s + (even ? 2 : 1));
    }
  }

  std::vector<Vertex> moves(n * states, kNoVertex);
  Vertex h = *arena.find("h");
  for (StateId s = 0; s < states; ++s) {
    moves[h * states + s] = depth[s] < q
                                ? *arena.find("p" + std::to_string(depth[s] + 1))
                                : *arena.find("r1");
    for (int i = 1; i <= q; ++i) {
      Vertex r = *arena.find("r" + std::to_string(i));
      bool even_given = (evens[s] >> (i - 1)) & 1;
      moves[r * states + s] = *arena.find(
          "b" + std::to_string(even_given ? 2 * i - 1 : 2 * i));
    }
  }
  return FiniteMemoryStrategy(
      Player::Eve, MemoryStructure::table(states, 0, n, m, std::move(edges)), n,
      std::move(moves));
}

Game gen_fig5() {
  Builder b(4);
  Vertex start = b.add("start", Player::Eve);
  Vertex x[5], y[5], no[5];
  for (int i = 1; i <= 4; ++i) {
    x[i] = b.add("x" + std::to_string(i), Player::Eve, {i});
  }
  for (int i = 4; i >= 1; --i) {
    y[i] = b.add("y" + std::to_string(i), Player::Eve, {i});
  }
  for (int i = 1; i <= 4; ++i) {
    no[i] = b.add("not" + std::to_string(i), Player::Eve);
  }
  Vertex c = b.add("c", Player::Adam);
  b.edge(start, x[1]);
  b.edge(start, x[3]);
  b.edge(x[1], x[2]);
  b.edge(x[3], x[4]);
  b.edge(x[2], y[4]);
  b.edge(x[2], y[3]);
  b.edge(x[4], y[2]);
  b.edge(x[4], y[1]);
  for (int i = 1; i <= 4; ++i) {
    b.edge(y[i], c);
    b.edge(c, no[i]);
    for (int j = 1; j <= 4; ++j) {
      if (j != i) b.edge(no[i], y[j]);
    }
  }
  return b.build(start);
}

FiniteMemoryStrategy canonical_fig5_adam() {
  Game game = gen_fig5();
  const auto& arena = game.arena();
  const auto n = game.n();
  const auto m = game.m();
  // State i - 1 guesses that color i is the one Eve missed. The guesses
  // 3, 4, 2, 1 are tried in that order as colors show up.
  auto next_guess = [](StateId s, ColorMask colors) -> StateId {
    if (s == 2 && colors == 0b0100) return 3;
    if (s == 3 && colors == 0b1000) return 1;
    if (s == 1 && colors == 0b0010) return 0;
    return s;
  };
  std::vector<StateId> edges(4 * m);
  for (StateId s = 0; s < 4; ++s) {
    for (EdgeId e = 0; e < m; ++e) {
      edges[s * m + e] = next_guess(s, game.colors(arena.edge(e).to));
    }
  }
  std::vector<Vertex> moves(n * 4, kNoVertex);
  Vertex c = *arena.find("c");
  for (StateId s = 0; s < 4; ++s) {
    moves[c * 4 + s] = *arena.find("not" + std::to_string(s + 1));
  }
  return FiniteMemoryStrategy(
      Player::Adam, MemoryStructure::table(4, 2, n, m, std::move(edges)), n,
      std::move(moves));
}

Game gen_random(const RandomParams& params) {
  const auto n = params.n;
  if (n == 0) throw PreconditionFailed("random game needs n >= 1");
  if (params.k < 0 || params.k > kMaxColors) {
    throw PreconditionFailed("random game needs 0 <= k <= 64");
  }
  if (params.one_player && params.opponent_player) {
    throw PreconditionFailed("one-player and opponent-player are exclusive");
  }
  if (params.min_color_size > params.max_color_size) {
    throw PreconditionFailed("min color size exceeds max color size");
  }
  std::mt19937_64 rng(params.seed);
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  std::bernoulli_distribution eve(params.eve_ratio);
  std::bernoulli_distribution edge(params.edge_probability);

  std::vector<Player> owners(n);
  for (auto& o : owners) {
    if (params.one_player) {
      o = Player::Eve;
    } else if (params.opponent_player) {
      o = Player::Adam;
    } else {
      o = eve(rng) ? Player::Eve : Player::Adam;
    }
  }

  std::vector<Edge> edges;
  std::unordered_set<Vertex> picked;
  for (Vertex v = 0; v < n; ++v) {
    if (params.out_degree > 0) {
      const auto d = std::min(params.out_degree, n);
      picked.clear();
      while (picked.size() < d) {
        picked.insert(static_cast<Vertex>(uniform(0, n - 1)));
      }
      std::vector<Vertex> targets(picked.begin(), picked.end());
      std::sort(targets.begin(), targets.end());
      for (Vertex w : targets) edges.push_back({v, w});
    } else {
      bool any = false;
      for (Vertex w = 0; w < n; ++w) {
        if (edge(rng)) {
          edges.push_back({v, w});
          any = true;
        }
      }
      if (!any) edges.push_back({v, v});
    }
  }

  std::vector<std::vector<Vertex>> colors(params.k);
  for (auto& set : colors) {
    std::size_t size =
        params.singleton
            ? 1
            : uniform(std::min(params.min_color_size, n),
                      std::min(params.max_color_size, n));
    picked.clear();
    while (picked.size() < size) {
      picked.insert(static_cast<Vertex>(uniform(0, n - 1)));
    }
    set.assign(picked.begin(), picked.end());
    std::sort(set.begin(), set.end());
  }

  std::optional<Vertex> init;
  if (params.with_init) init = static_cast<Vertex>(uniform(0, n - 1));
  return Game(Arena(std::move(owners), std::move(edges)),
              Objective(n, std::move(colors)), init);
}

}  // namespace genreach
