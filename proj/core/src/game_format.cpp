#include "genreach/game_format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>
#include <unordered_map>

#include "genreach/errors.hpp"

namespace genreach {
namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) {
    line = line.substr(0, hash);
  }
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

long parse_int(std::string_view token, std::size_t line) {
  long value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected an integer, got '" + std::string(token) +
                               "'");
  }
  return value;
}

struct PendingEdge {
  std::string from;
  std::string to;
  std::size_t line;
};

}  // namespace

Game parse_game(std::string_view text) {
  std::vector<std::string> names;
  std::vector<Player> owners;
  std::vector<std::size_t> declared_at;
  std::vector<std::vector<Vertex>> sets;
  std::unordered_map<std::string, Vertex> index;
  std::vector<PendingEdge> pending;
  std::optional<std::pair<std::string, std::size_t>> init_name;
  std::optional<int> k;
  bool header = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    auto tok = tokenize(line);
    if (tok.empty()) continue;
    const auto& kw = tok[0];

    if (!header) {
      if (kw != "genreach" || tok.size() != 2) {
        throw ParseError(line_no, "expected header 'genreach 1'");
      }
      if (tok[1] != "1") {
        throw ParseError(line_no, "unsupported format version '" +
                                      std::string(tok[1]) + "'");
      }
      header = true;
      continue;
    }

    if (kw == "colors") {
      if (tok.size() != 2) throw ParseError(line_no, "usage: colors <k>");
      if (k) throw ParseError(line_no, "duplicate 'colors' line");
      long value = parse_int(tok[1], line_no);
      if (value < 0 || value > kMaxColors) {
        throw ParseError(line_no, "color count must be in 0.." +
                                      std::to_string(kMaxColors));
      }
      k = static_cast<int>(value);
      sets.assign(*k, {});
    } else if (kw == "vertex") {
      if (!k) throw ParseError(line_no, "'colors' must precede vertices");
      if (tok.size() < 3) {
        throw ParseError(line_no, "usage: vertex <name> <eve|adam> [colors]");
      }
      std::string name(tok[1]);
      Player owner;
      if (tok[2] == "eve") {
        owner = Player::Eve;
      } else if (tok[2] == "adam") {
        owner = Player::Adam;
      } else {
        throw ParseError(line_no, "owner must be 'eve' or 'adam', got '" +
                                      std::string(tok[2]) + "'");
      }
      auto v = static_cast<Vertex>(names.size());
      if (!index.emplace(name, v).second) {
        throw ParseError(line_no, "duplicate vertex '" + name + "'");
      }
      for (std::size_t i = 3; i < tok.size(); ++i) {
        long c = parse_int(tok[i], line_no);
        if (c < 1 || c > *k) {
          throw ParseError(line_no, "color " + std::to_string(c) +
                                        " out of range 1.." +
                                        std::to_string(*k));
        }
        sets[c - 1].push_back(v);
      }
      names.push_back(std::move(name));
      owners.push_back(owner);
      declared_at.push_back(line_no);
    } else if (kw == "edge") {
      if (tok.size() != 3) throw ParseError(line_no, "usage: edge <from> <to>");
      pending.push_back({std::string(tok[1]), std::string(tok[2]), line_no});
    } else if (kw == "init") {
      if (tok.size() != 2) throw ParseError(line_no, "usage: init <name>");
      if (init_name) throw ParseError(line_no, "duplicate 'init' line");
      init_name.emplace(std::string(tok[1]), line_no);
    } else {
      throw ParseError(line_no,
                       "unknown directive '" + std::string(kw) + "'");
    }
  }
  if (!header) throw ParseError(line_no, "missing header 'genreach 1'");
  if (!k) throw ParseError(line_no, "missing 'colors' line");

  auto resolve = [&](const std::string& name, std::size_t line) {
    auto it = index.find(name);
    if (it == index.end()) {
      throw ParseError(line, "unknown vertex '" + name + "'");
    }
    return it->second;
  };

  std::vector<Edge> edges;
  std::set<Edge> seen;
  for (const auto& e : pending) {
    Edge edge{resolve(e.from, e.line), resolve(e.to, e.line)};
    if (!seen.insert(edge).second) {
      throw ParseError(e.line,
                       "duplicate edge " + e.from + " -> " + e.to);
    }
    edges.push_back(edge);
  }
  std::vector<bool> has_successor(names.size(), false);
  for (const auto& e : edges) has_successor[e.from] = true;
  for (Vertex v = 0; v < names.size(); ++v) {
    if (!has_successor[v]) {
      throw ParseError(declared_at[v], "dead end at vertex '" + names[v] +
                                           "' (every vertex needs a successor)");
    }
  }

  std::optional<Vertex> init;
  if (init_name) init = resolve(init_name->first, init_name->second);

  auto n = names.size();
  Arena arena(std::move(names), std::move(owners), std::move(edges));
  auto report = validate_arena(arena);
  if (!report.ok()) throw ParseError(line_no, report.violations.front());
  return Game(std::move(arena), Objective(n, std::move(sets)), init);
}

std::string serialize_game(const Game& game) {
  const auto& arena = game.arena();
  std::ostringstream out;
  out << "genreach 1\n";
  out << "colors " << game.k() << "\n";
  for (Vertex v = 0; v < game.n(); ++v) {
    out << "vertex " << arena.name(v) << ' ' << to_string(arena.owner(v));
    for (int i = 0; i < game.k(); ++i) {
      if (game.colors(v) >> i & 1) out << ' ' << i + 1;
    }
    out << '\n';
  }
  for (const auto& e : arena.edges()) {
    out << "edge " << arena.name(e.from) << ' ' << arena.name(e.to) << '\n';
  }
  if (game.init()) out << "init " << arena.name(*game.init()) << '\n';
  return out.str();
}

namespace {

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string export_dot(const Game& game, const DotAnnotations& notes) {
  const auto& arena = game.arena();
  std::set<Edge> bold(notes.highlighted.begin(), notes.highlighted.end());
  std::ostringstream out;
  out << "digraph genreach {\n";
  out << "  node [fontname=\"Helvetica\"];\n";
  for (Vertex v = 0; v < game.n(); ++v) {
    std::string label = arena.name(v);
    if (game.colors(v) != 0) {
      label += "\\n{";
      bool first = true;
      for (int i = 0; i < game.k(); ++i) {
        if (!(game.colors(v) >> i & 1)) continue;
        if (!first) label += ",";
        label += std::to_string(i + 1);
        first = false;
      }
      label += "}";
    }
    out << "  " << dot_quote(arena.name(v)) << " [shape="
        << (arena.owner(v) == Player::Eve ? "circle" : "box") << ", label=\""
        << label << "\"";
    if (game.init() == v) out << ", peripheries=2";
    if (notes.winner && v < notes.winner->size()) {
      out << ", style=filled, fillcolor=\""
          << ((*notes.winner)[v] == Player::Eve ? kEveFill : kAdamFill)
          << "\"";
    }
    out << "];\n";
  }
  for (const auto& e : arena.edges()) {
    out << "  " << dot_quote(arena.name(e.from)) << " -> "
        << dot_quote(arena.name(e.to));
    if (bold.count(e)) out << " [penwidth=2.5]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace genreach
