#include "genreach/two_sat.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "genreach/errors.hpp"

namespace genreach {

namespace {

std::uint32_t node(Literal l) { return 2 * l.var + (l.positive ? 0 : 1); }

}  // namespace

TwoSatResult two_sat_solve(const TwoSatFormula& formula) {
  const std::size_t nodes = 2 * formula.variables;
  for (const auto& c : formula.clauses) {
    for (auto l : c) {
      if (l.var >= formula.variables) {
        throw InvalidGame("clause mentions variable " +
                          std::to_string(l.var + 1) + " of " +
                          std::to_string(formula.variables));
      }
    }
  }

  // a or b  ==  (not a -> b) and (not b -> a)
  std::vector<std::uint32_t> offsets(nodes + 1, 0);
  for (const auto& [a, b] : formula.clauses) {
    ++offsets[node(!a) + 1];
    ++offsets[node(!b) + 1];
  }
  for (std::size_t i = 0; i < nodes; ++i) offsets[i + 1] += offsets[i];
  std::vector<std::uint32_t> targets(offsets.back());
  {
    auto fill = offsets;
    for (const auto& [a, b] : formula.clauses) {
      targets[fill[node(!a)]++] = node(b);
      targets[fill[node(!b)]++] = node(a);
    }
  }

  // Iterative Tarjan; components are numbered sinks first.
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> index(nodes, kUnset), low(nodes, 0),
      comp(nodes, kUnset);
  std::vector<std::uint32_t> scc_stack;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> call;  // node, next edge
  std::uint32_t counter = 0, components = 0;
  for (std::uint32_t root = 0; root < nodes; ++root) {
    if (index[root] != kUnset) continue;
    call.emplace_back(root, offsets[root]);
    index[root] = low[root] = counter++;
    scc_stack.push_back(root);
    while (!call.empty()) {
      auto& [u, next] = call.back();
      if (next < offsets[u + 1]) {
        std::uint32_t w = targets[next++];
        if (index[w] == kUnset) {
          index[w] = low[w] = counter++;
          scc_stack.push_back(w);
          call.emplace_back(w, offsets[w]);
        } else if (comp[w] == kUnset) {
          low[u] = std::min(low[u], index[w]);
        }
        continue;
      }
      std::uint32_t done = u;
      call.pop_back();
      if (low[done] == index[done]) {
        std::uint32_t w;
        do {
          w = scc_stack.back();
          scc_stack.pop_back();
          comp[w] = components;
        } while (w != done);
        ++components;
      }
      if (!call.empty()) {
        auto parent = call.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
    }
  }

  TwoSatResult result;
  result.satisfiable = true;
  result.assignment.assign(formula.variables, false);
  for (std::uint32_t v = 0; v < formula.variables; ++v) {
    auto pos = comp[2 * v], neg = comp[2 * v + 1];
    if (pos == neg) {
      result.satisfiable = false;
      result.assignment.clear();
      result.conflict = v;
      return result;
    }
    result.assignment[v] = pos < neg;
  }
  return result;
}

bool satisfies(const TwoSatFormula& formula,
               const std::vector<bool>& assignment) {
  if (assignment.size() != formula.variables) return false;
  auto holds = [&](Literal l) { return assignment[l.var] == l.positive; };
  return std::all_of(formula.clauses.begin(), formula.clauses.end(),
                     [&](const auto& c) { return holds(c[0]) || holds(c[1]); });
}

TwoSatFormula parse_dimacs_2cnf(std::string_view text) {
  TwoSatFormula f;
  bool header = false;
  std::size_t expected = 0;
  std::vector<long> pending;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first) || first == "c" || first[0] == 'c') continue;
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
      continue;
    }
    if (!header) throw ParseError(line_no, "clause before the 'p cnf' header");
    tokens.clear();
    tokens.str(line);
    long lit;
    while (tokens >> lit) {
      if (lit == 0) {
        if (pending.empty() || pending.size() > 2) {
          throw ParseError(line_no, "clauses must have one or two literals");
        }
        auto to_lit = [](long x) {
          return Literal{static_cast<std::uint32_t>(std::labs(x) - 1), x > 0};
        };
        f.add(to_lit(pending[0]), to_lit(pending.back()));
        pending.clear();
        continue;
      }
      if (static_cast<std::size_t>(std::labs(lit)) > f.variables) {
        throw ParseError(line_no, "literal " + std::to_string(lit) +
                                      " exceeds the declared variables");
      }
      pending.push_back(lit);
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
  return f;
}

}  // namespace genreach
