#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geolab/game.hpp"

namespace geolab {

// Signed literal: +i is x_i, -i is its negation. Variables are 1..n.
using Lit = int;

inline int lit_var(Lit l) { return l < 0 ? -l : l; }
inline bool lit_positive(Lit l) { return l > 0; }

using Clause = std::array<Lit, 3>;

// Prefix-alternating quantified 3-CNF: the prefix is implicitly
// Ex1 Ax2 Ex3 ... Axn with n even; odd variables belong to the existential
// player (Left), even ones to the universal player (Right).
struct QbfInstance {
  int num_vars = 0;
  std::vector<Clause> clauses;

  int num_clauses() const { return static_cast<int>(clauses.size()); }
  void validate() const;  // throws QbfError
  std::string str() const;
  bool operator==(const QbfInstance&) const = default;
};

enum class QbfErrorCode {
  Syntax,
  Non3Cnf,
  BadAlternation,
  OddVarCount,
  VarOutOfRange,
  NCapExceeded,
  NoWinningPolicy,
};

const char* qbf_error_name(QbfErrorCode c);

struct QbfError : std::runtime_error {
  QbfErrorCode code;
  int line;  // 0 when not tied to input text
  QbfError(QbfErrorCode c, int line_, const std::string& what)
      : std::runtime_error(what), code(c), line(line_) {}
};

// QDIMACS with single-variable alternating quantifier blocks
// (e 1 / a 2 / ...), exactly three literals per clause.
QbfInstance parse_qdimacs(const std::string& text);

// Exact truth value by exhaustive alternating minimax. Throws NCapExceeded
// beyond n_cap variables.
bool evaluate(const QbfInstance& q, int n_cap = 24);

bool eval_assignment(const QbfInstance& q, uint32_t assignment);  // bit i-1 = x_i
bool clause_satisfied(const Clause& c, uint32_t assignment);

// Explicit decision table for one player's variables: the choice for
// variable i given the assignment of variables 1..i-1 (packed in the low
// i-1 bits). Defined for every prefix reachable under the policy.
struct Policy {
  PlayerSide side = PlayerSide::Left;  // Left = existential, Right = universal
  int num_vars = 0;
  std::map<std::pair<int, uint32_t>, bool> choice;

  bool decide(int var, uint32_t prefix) const;
  // Lookup that tolerates prefixes outside the policy tree (opponents who
  // abandon the alternation order make them reachable).
  bool decide_or(int var, uint32_t prefix, bool fallback) const;
};

// Winning policy for the requested side; verified against every opposing
// assignment sequence at construction. Throws NoWinningPolicy when the
// requested side loses q.
Policy optimal_policy(const QbfInstance& q, PlayerSide side, int n_cap = 24);

enum class ReductionTarget { DIF, DPF, UPR, UPF };

// Equi-true instance meeting the target's preconditions:
//   DIF: unchanged.
//   DPF: clauses duplicated until m >= 4 and m even.
//   UPR: fresh trailing variable pairs until n >= 4, then a tautology
//        x v x v ~x appended for every literal absent from all clauses
//        (which also guarantees m >= 2).
//   UPF: clauses duplicated until m >= 3.
QbfInstance normalize_for(const QbfInstance& q, ReductionTarget target);

// True when q already satisfies the target's structural preconditions.
bool satisfies_preconditions(const QbfInstance& q, ReductionTarget target);

// Uniform random 3-literal clauses over n variables; deterministic per seed.
QbfInstance random_instance(int n, int m, uint64_t seed);

}  // namespace geolab
