#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "genreach/game.hpp"

namespace genreach {

enum class Quantifier { Exists, Forall };

struct QuantifiedVar {
  Quantifier q = Quantifier::Exists;
  std::uint32_t var = 1;  // 1-based, as in QDIMACS
};

// Prenex CNF formula Q1 x1 ... Qn xn. phi. Literals are signed 1-based
// variables; an empty clause makes the formula false.
struct QbfFormula {
  std::size_t variables = 0;
  std::vector<QuantifiedVar> prefix;
  std::vector<std::vector<int>> clauses;
};

// QDIMACS subset: 'c' comments, 'p cnf <vars> <clauses>', 'e'/'a' lines and
// 0-terminated clauses. Variables missing from the prefix become innermost
// existentials and are reported through `warnings`. Throws ParseError.
QbfFormula parse_qdimacs(std::string_view text,
                         std::vector<std::string>* warnings = nullptr);
std::string serialize_qdimacs(const QbfFormula& formula);

// Per variable x in prefix order a choice vertex "v<x>" (Eve's iff x is
// existential) leading to literal vertices "x<x>" and "nx<x>", which lead to
// the next choice vertex or to the uncolored self-looping sink "s". Color j
// is the set of literal vertices of clause j; init is the first choice
// vertex. Throws PreconditionFailed on an empty prefix.
Game qbf_to_game(const QbfFormula& formula);

// Truth value by expansion over the prefix. Throws CapExceeded above `cap`
// variables.
bool eval_qbf_bruteforce(const QbfFormula& formula, std::size_t cap = 20);

struct RandomQbfParams {
  std::size_t min_vars = 1;
  std::size_t max_vars = 12;
  std::size_t max_clauses = 15;
  std::size_t max_width = 4;
  double exists_ratio = 0.5;
  std::uint64_t seed = 0;
};

QbfFormula gen_random_qbf(const RandomQbfParams& params);

}  // namespace genreach
