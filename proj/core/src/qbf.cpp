#include "genreach/qbf.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>
#include <sstream>

#include "genreach/errors.hpp"

namespace genreach {

QbfFormula parse_qdimacs(std::string_view text,
                         std::vector<std::string>* warnings) {
  QbfFormula f;
  bool header = false;
  bool in_matrix = false;
  std::size_t expected = 0;
  std::vector<bool> bound;
  std::vector<int> pending;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first) || first == "c") continue;
    if (first == "p") {
      std::string fmt;
      long vars = -1, clauses = -1;
      if (header || !(tokens >> fmt >> vars >> clauses) || fmt != "cnf" ||
          vars < 0 || clauses < 0) {
        throw ParseError(line_no, "expected 'p cnf <variables> <clauses>'");
      }
      header = true;
      f.variables = static_cast<std::size_t>(vars);
      expected = static_cast<std::size_t>(clauses);
      bound.assign(f.variables + 1, false);
      continue;
    }
    if (!header) throw ParseError(line_no, "missing 'p cnf' header");
    if (first == "e" || first == "a") {
      if (in_matrix) throw ParseError(line_no, "quantifier line after clauses");
      Quantifier q = first == "e" ? Quantifier::Exists : Quantifier::Forall;
      long x;
      bool closed = false;
      while (tokens >> x) {
        if (x == 0) {
          closed = true;
          break;
        }
        if (x < 0 || static_cast<std::size_t>(x) > f.variables) {
          throw ParseError(line_no, "bad quantified variable " + std::to_string(x));
        }
        if (bound[x]) {
          throw ParseError(line_no,
                           "variable " + std::to_string(x) + " quantified twice");
        }
        bound[x] = true;
        f.prefix.push_back({q, static_cast<std::uint32_t>(x)});
      }
      if (!closed) throw ParseError(line_no, "quantifier line must end with 0");
      continue;
    }
    in_matrix = true;
    tokens.clear();
    tokens.str(line);
    long lit;
    while (tokens >> lit) {
      if (lit == 0) {
        f.clauses.push_back(pending);
        pending.clear();
        continue;
      }
      if (static_cast<std::size_t>(std::labs(lit)) > f.variables) {
        throw ParseError(line_no, "literal " + std::to_string(lit) +
                                      " exceeds the declared variables");
      }
      pending.push_back(static_cast<int>(lit));
    }
    if (!tokens.eof()) throw ParseError(line_no, "bad literal");
  }
  if (!header) throw ParseError(line_no, "missing 'p cnf' header");
  if (!pending.empty()) throw ParseError(line_no, "unterminated clause");
  if (f.clauses.size() != expected) {
    throw ParseError(line_no, "header announces " + std::to_string(expected) +
                                  " clauses, found " +
                                  std::to_string(f.clauses.size()));
  }
  for (std::uint32_t x = 1; x <= f.variables; ++x) {
    if (bound[x]) continue;
    f.prefix.push_back({Quantifier::Exists, x});
    if (warnings) {
      warnings->push_back("variable " + std::to_string(x) +
                          " is free; treated as innermost existential");
    }
  }
  return f;
}

std::string serialize_qdimacs(const QbfFormula& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.variables << ' ' << formula.clauses.size() << '\n';
  for (std::size_t i = 0; i < formula.prefix.size();) {
    auto q = formula.prefix[i].q;
    out << (q == Quantifier::Exists ? 'e' : 'a');
    for (; i < formula.prefix.size() && formula.prefix[i].q == q; ++i) {
      out << ' ' << formula.prefix[i].var;
    }
    out << " 0\n";
  }
  for (const auto& c : formula.clauses) {
    for (int l : c) out << l << ' ';
    out << "0\n";
  }
  return out.str();
}

Game qbf_to_game(const QbfFormula& formula) {
  if (formula.prefix.empty()) {
    throw PreconditionFailed("EmptyPrefix: formula quantifies no variable");
  }
  const auto n = formula.prefix.size();
  std::vector<std::string> names;
  std::vector<Player> owners;
  std::vector<Edge> edges;
  // Vertex ids: choice 3i, positive literal 3i+1, negative 3i+2, sink 3n.
  std::vector<Vertex> pos_of(formula.variables + 1, kNoVertex);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& qv = formula.prefix[i];
    if (qv.var == 0 || qv.var > formula.variables || pos_of[qv.var] != kNoVertex) {
      throw InvalidGame("malformed quantifier prefix");
    }
    auto x = std::to_string(qv.var);
    names.push_back("v" + x);
    names.push_back("x" + x);
    names.push_back("nx" + x);
    owners.push_back(qv.q == Quantifier::Exists ? Player::Eve : Player::Adam);
    owners.push_back(Player::Eve);
    owners.push_back(Player::Eve);
    auto choice = static_cast<Vertex>(3 * i);
    auto next = static_cast<Vertex>(3 * (i + 1));
    pos_of[qv.var] = choice + 1;
    edges.push_back({choice, choice + 1});
    edges.push_back({choice, choice + 2});
    edges.push_back({choice + 1, next});
    edges.push_back({choice + 2, next});
  }
  const auto sink = static_cast<Vertex>(3 * n);
  names.push_back("s");
  owners.push_back(Player::Eve);
  edges.push_back({sink, sink});

  std::vector<std::vector<Vertex>> colors;
  for (const auto& clause : formula.clauses) {
    std::vector<Vertex> set;
    for (int l : clause) {
      auto var = static_cast<std::size_t>(std::abs(l));
      if (var > formula.variables || pos_of[var] == kNoVertex) {
        throw InvalidGame("clause mentions unquantified variable " +
                          std::to_string(var));
      }
      set.push_back(l > 0 ? pos_of[var] : pos_of[var] + 1);
    }
    colors.push_back(std::move(set));
  }
  const auto count = names.size();
  return Game(Arena(std::move(names), std::move(owners), std::move(edges)),
              Objective(count, std::move(colors)), Vertex{0});
}

bool eval_qbf_bruteforce(const QbfFormula& formula, std::size_t cap) {
  if (formula.prefix.size() > cap) {
    throw CapExceeded("brute-force QBF evaluation limited to " +
                      std::to_string(cap) + " variables");
  }
  std::vector<signed char> value(formula.variables + 1, 0);
  auto matrix_true = [&] {
    for (const auto& clause : formula.clauses) {
      bool sat = std::any_of(clause.begin(), clause.end(), [&](int l) {
        return value[std::abs(l)] == (l > 0 ? 1 : -1);
      });
      if (!sat) return false;
    }
    return true;
  };
  auto expand = [&](auto&& self, std::size_t i) -> bool {
    if (i == formula.prefix.size()) return matrix_true();
    const auto& qv = formula.prefix[i];
    bool exists = qv.q == Quantifier::Exists;
    for (signed char b : {1, -1}) {
      value[qv.var] = b;
      bool r = self(self, i + 1);
      if (r == exists) {
        value[qv.var] = 0;
        return r;
      }
    }
    value[qv.var] = 0;
    return !exists;
  };
  return expand(expand, 0);
}

QbfFormula gen_random_qbf(const RandomQbfParams& params) {
  if (params.min_vars == 0 || params.min_vars > params.max_vars ||
      params.max_width == 0) {
    throw PreconditionFailed("bad random formula parameters");
  }
  std::mt19937_64 rng(params.seed);
  auto uniform = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  std::bernoulli_distribution exists(params.exists_ratio);
  std::bernoulli_distribution positive(0.5);

  QbfFormula f;
  f.variables = uniform(params.min_vars, params.max_vars);
  for (std::uint32_t x = 1; x <= f.variables; ++x) {
    f.prefix.push_back(
        {exists(rng) ? Quantifier::Exists : Quantifier::Forall, x});
  }
  const auto clauses = uniform(0, params.max_clauses);
  for (std::size_t c = 0; c < clauses; ++c) {
    const auto width = uniform(1, std::min(params.max_width, f.variables));
    std::vector<int> clause;
    while (clause.size() < width) {
      int x = static_cast<int>(uniform(1, f.variables));
      bool dup = std::any_of(clause.begin(), clause.end(),
                             [&](int l) { return std::abs(l) == x; });
      if (!dup) clause.push_back(positive(rng) ? x : -x);
    }
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

}  // namespace genreach
