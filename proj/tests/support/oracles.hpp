// Independent reference implementations used only by the tests. They are
// deliberately naive: repeated sweeps to a fixpoint, full enumeration.
#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "genreach/game.hpp"
#include "genreach/game_format.hpp"
#include "genreach/qbf.hpp"
#include "genreach/two_sat.hpp"

namespace oracle {

using genreach::ColorMask;
using genreach::Game;
using genreach::Player;
using genreach::Vertex;

// Attractor by sweeping all vertices until nothing changes.
inline std::vector<bool> attractor(const genreach::Arena& arena,
                                   const std::vector<bool>& target) {
  std::vector<bool> in = target;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v = 0; v < arena.vertex_count(); ++v) {
      if (in[v]) continue;
      auto succ = arena.successors(v);
      bool any = false, all = true;
      for (Vertex w : succ) {
        any |= in[w];
        all &= in[w];
      }
      if (arena.owner(v) == Player::Eve ? any : all) {
        in[v] = true;
        changed = true;
      }
    }
  }
  return in;
}

// Winner from every vertex by a sweep fixpoint on (vertex, visited colors).
inline std::vector<Player> winners(const Game& g) {
  const auto n = g.n();
  const int k = g.k();
  const ColorMask full = g.full();
  const std::size_t masks = std::size_t{1} << k;
  std::vector<char> win(n * masks, 0);
  for (Vertex v = 0; v < n; ++v) win[v * masks + full] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Vertex v = 0; v < n; ++v) {
      for (ColorMask s = 0; s < masks; ++s) {
        if (win[v * masks + s] || (s & g.colors(v)) != g.colors(v)) continue;
        bool any = false, all = true;
        for (Vertex w : g.arena().successors(v)) {
          bool x = win[w * masks + (s | g.colors(w))];
          any |= x;
          all &= x;
        }
        if (g.arena().owner(v) == Player::Eve ? any : all) {
          win[v * masks + s] = 1;
          changed = true;
        }
      }
    }
  }
  std::vector<Player> out(n);
  for (Vertex v = 0; v < n; ++v) {
    out[v] = win[v * masks + g.colors(v)] ? Player::Eve : Player::Adam;
  }
  return out;
}

inline bool two_sat(const genreach::TwoSatFormula& f) {
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << f.variables); ++bits) {
    bool ok = true;
    for (const auto& c : f.clauses) {
      bool a = ((bits >> c[0].var) & 1) == c[0].positive;
      bool b = ((bits >> c[1].var) & 1) == c[1].positive;
      if (!a && !b) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

// QBF value by folding the truth table of the matrix over the prefix,
// innermost variable first.
inline bool qbf(const genreach::QbfFormula& f) {
  const auto n = f.prefix.size();
  std::vector<char> table(std::size_t{1} << n);
  for (std::size_t bits = 0; bits < table.size(); ++bits) {
    bool all = true;
    for (const auto& clause : f.clauses) {
      bool sat = false;
      for (int l : clause) {
        std::size_t pos = 0;
        while (f.prefix[pos].var != static_cast<std::uint32_t>(std::abs(l))) ++pos;
        bool val = (bits >> pos) & 1;
        sat |= (l > 0) == val;
      }
      all &= sat;
    }
    table[bits] = all;
  }
  for (std::size_t i = n; i-- > 0;) {
    std::vector<char> next(std::size_t{1} << i);
    for (std::size_t bits = 0; bits < next.size(); ++bits) {
      char lo = table[bits], hi = table[bits | (std::size_t{1} << i)];
      next[bits] = f.prefix[i].q == genreach::Quantifier::Exists ? (lo || hi)
                                                                 : (lo && hi);
    }
    table.swap(next);
  }
  return table[0];
}

inline std::string read(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string fixture(const std::string& name) {
  return std::string(GENREACH_FIXTURES_DIR) + "/" + name;
}

inline Game fig1() { return genreach::parse_game(read(fixture("fig1.gr"))); }

}  // namespace oracle
