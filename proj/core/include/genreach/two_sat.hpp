#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace genreach {

struct Literal {
  std::uint32_t var = 0;  // 0-based
  bool positive = true;

  Literal operator!() const { return {var, !positive}; }
  friend bool operator==(const Literal&, const Literal&) = default;
};

// CNF with clauses of one or two literals; a unit clause is stored as a
// pair of equal literals.
struct TwoSatFormula {
  std::size_t variables = 0;
  std::vector<std::array<Literal, 2>> clauses;
  // Optional names, one per variable.
  std::vector<std::string> labels;

  void add(Literal a, Literal b) { clauses.push_back({a, b}); }
  void add(Literal a) { clauses.push_back({a, a}); }
};

struct TwoSatResult {
  bool satisfiable = false;
  std::vector<bool> assignment;
  // When unsatisfiable: a variable in the same component as its negation.
  std::optional<std::uint32_t> conflict;
};

// Implication graph plus strongly connected components, linear time.
TwoSatResult two_sat_solve(const TwoSatFormula& formula);

bool satisfies(const TwoSatFormula& formula, const std::vector<bool>& assignment);

// DIMACS CNF whose clauses have at most two literals. Throws ParseError.
TwoSatFormula parse_dimacs_2cnf(std::string_view text);

}  // namespace genreach
