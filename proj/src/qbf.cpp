#include "geolab/qbf.hpp"

#include <algorithm>
#include <sstream>

#include "geolab/rng.hpp"

namespace geolab {

const char* qbf_error_name(QbfErrorCode c) {
  switch (c) {
    case QbfErrorCode::Syntax: return "Syntax";
    case QbfErrorCode::Non3Cnf: return "Non3Cnf";
    case QbfErrorCode::BadAlternation: return "BadAlternation";
    case QbfErrorCode::OddVarCount: return "OddVarCount";
    case QbfErrorCode::VarOutOfRange: return "VarOutOfRange";
    case QbfErrorCode::NCapExceeded: return "NCapExceeded";
    case QbfErrorCode::NoWinningPolicy: return "NoWinningPolicy";
  }
  return "?";
}

void QbfInstance::validate() const {
  if (num_vars < 2 || num_vars % 2 != 0)
    throw QbfError(QbfErrorCode::OddVarCount, 0, "variable count must be even and >= 2");
  if (clauses.empty()) throw QbfError(QbfErrorCode::Syntax, 0, "at least one clause required");
  for (const Clause& c : clauses)
    for (Lit l : c)
      if (l == 0 || lit_var(l) > num_vars)
        throw QbfError(QbfErrorCode::VarOutOfRange, 0, "literal out of range");
}

std::string QbfInstance::str() const {
  std::ostringstream out;
  for (int i = 1; i <= num_vars; ++i) out << (i % 2 ? "E" : "A") << "x" << i << " ";
  for (size_t j = 0; j < clauses.size(); ++j) {
    out << (j ? " & (" : "(");
    for (int k = 0; k < 3; ++k) {
      if (k) out << " v ";
      Lit l = clauses[j][k];
      out << (l < 0 ? "~x" : "x") << lit_var(l);
    }
    out << ")";
  }
  return out.str();
}

QbfInstance parse_qdimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int declared_vars = -1, declared_clauses = -1;
  std::vector<std::pair<char, int>> prefix;  // (quantifier, variable)
  QbfInstance q;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") continue;
    if (tok == "p") {
      std::string fmt;
      if (!(ls >> fmt >> declared_vars >> declared_clauses) || fmt != "cnf")
        throw QbfError(QbfErrorCode::Syntax, lineno, "bad problem line");
      continue;
    }
    if (tok == "e" || tok == "a") {
      if (declared_vars < 0) throw QbfError(QbfErrorCode::Syntax, lineno, "quantifier before problem line");
      int v;
      bool terminated = false;
      while (ls >> v) {
        if (v == 0) { terminated = true; break; }
        prefix.push_back({tok[0], v});
      }
      if (!terminated) throw QbfError(QbfErrorCode::Syntax, lineno, "quantifier line missing 0");
      continue;
    }
    // Clause line.
    if (declared_vars < 0) throw QbfError(QbfErrorCode::Syntax, lineno, "clause before problem line");
    std::istringstream cs(line);
    std::vector<int> lits;
    int l;
    bool terminated = false;
    while (cs >> l) {
      if (l == 0) { terminated = true; break; }
      lits.push_back(l);
    }
    if (!terminated) throw QbfError(QbfErrorCode::Syntax, lineno, "clause missing terminating 0");
    if (lits.size() != 3)
      throw QbfError(QbfErrorCode::Non3Cnf, lineno,
                     "clause has " + std::to_string(lits.size()) + " literals, need exactly 3");
    for (int lit : lits)
      if (lit_var(lit) > declared_vars)
        throw QbfError(QbfErrorCode::VarOutOfRange, lineno, "literal exceeds declared variables");
    q.clauses.push_back({lits[0], lits[1], lits[2]});
  }

  if (declared_vars < 0) throw QbfError(QbfErrorCode::Syntax, 0, "missing problem line");
  if (declared_vars % 2 != 0)
    throw QbfError(QbfErrorCode::OddVarCount, 0, "variable count must be even");
  if (static_cast<int>(prefix.size()) != declared_vars)
    throw QbfError(QbfErrorCode::BadAlternation, 0, "prefix must quantify every variable exactly once");
  for (int i = 0; i < declared_vars; ++i) {
    char want = (i % 2 == 0) ? 'e' : 'a';
    if (prefix[i].second != i + 1 || prefix[i].first != want)
      throw QbfError(QbfErrorCode::BadAlternation, 0,
                     "prefix must strictly alternate e/a over variables 1..n in order");
  }
  if (declared_clauses >= 0 && declared_clauses != q.num_clauses())
    throw QbfError(QbfErrorCode::Syntax, 0, "clause count differs from problem line");
  q.num_vars = declared_vars;
  q.validate();
  return q;
}

bool clause_satisfied(const Clause& c, uint32_t assignment) {
  for (Lit l : c) {
    bool val = (assignment >> (lit_var(l) - 1)) & 1;
    if (val == lit_positive(l)) return true;
  }
  return false;
}

bool eval_assignment(const QbfInstance& q, uint32_t assignment) {
  for (const Clause& c : q.clauses)
    if (!clause_satisfied(c, assignment)) return false;
  return true;
}

namespace {

bool minimax(const QbfInstance& q, int var, uint32_t assignment) {
  if (var > q.num_vars) return eval_assignment(q, assignment);
  bool with_true = minimax(q, var + 1, assignment | (1u << (var - 1)));
  if (var % 2 == 1) {  // existential
    if (with_true) return true;
    return minimax(q, var + 1, assignment);
  }
  if (!with_true) return false;
  return minimax(q, var + 1, assignment);
}

}  // namespace

bool evaluate(const QbfInstance& q, int n_cap) {
  q.validate();
  if (q.num_vars > n_cap)
    throw QbfError(QbfErrorCode::NCapExceeded, 0,
                   "instance has " + std::to_string(q.num_vars) + " variables, cap is " +
                       std::to_string(n_cap));
  return minimax(q, 1, 0);
}

bool Policy::decide(int var, uint32_t prefix) const {
  uint32_t mask = (var > 1) ? ((1u << (var - 1)) - 1) : 0;
  auto it = choice.find({var, prefix & mask});
  if (it == choice.end()) throw QbfError(QbfErrorCode::Syntax, 0, "policy undefined for prefix");
  return it->second;
}

bool Policy::decide_or(int var, uint32_t prefix, bool fallback) const {
  uint32_t mask = (var > 1) ? ((1u << (var - 1)) - 1) : 0;
  auto it = choice.find({var, prefix & mask});
  return it == choice.end() ? fallback : it->second;
}

namespace {

// True iff the side to choose at `var` can force a win given `assignment`.
bool side_wins(const QbfInstance& q, PlayerSide side, int var, uint32_t assignment) {
  bool value = minimax(q, var, assignment);
  return side == PlayerSide::Left ? value : !value;
}

void build_policy(const QbfInstance& q, Policy& policy, int var, uint32_t assignment) {
  if (var > q.num_vars) return;
  bool my_turn = (var % 2 == 1) == (policy.side == PlayerSide::Left);
  if (my_turn) {
    // Prefer true when it wins; otherwise false must win, since the policy
    // is only built below winning nodes.
    bool pick = side_wins(q, policy.side, var + 1, assignment | (1u << (var - 1)));
    policy.choice[{var, assignment & ((1u << (var - 1)) - 1)}] = pick;
    build_policy(q, policy, var + 1, pick ? (assignment | (1u << (var - 1))) : assignment);
  } else {
    build_policy(q, policy, var + 1, assignment | (1u << (var - 1)));
    build_policy(q, policy, var + 1, assignment);
  }
}

// Plays the policy against every opposing assignment; true when the policy
// side wins all of them.
bool verify_policy(const QbfInstance& q, const Policy& policy) {
  int opp_vars = q.num_vars / 2;
  for (uint32_t opp = 0; opp < (1u << opp_vars); ++opp) {
    uint32_t assignment = 0;
    int opp_index = 0;
    for (int var = 1; var <= q.num_vars; ++var) {
      bool mine = (var % 2 == 1) == (policy.side == PlayerSide::Left);
      bool value;
      if (mine) {
        value = policy.decide(var, assignment);
      } else {
        value = (opp >> opp_index) & 1;
        ++opp_index;
      }
      if (value) assignment |= 1u << (var - 1);
    }
    bool formula = eval_assignment(q, assignment);
    bool won = policy.side == PlayerSide::Left ? formula : !formula;
    if (!won) return false;
  }
  return true;
}

}  // namespace

Policy optimal_policy(const QbfInstance& q, PlayerSide side, int n_cap) {
  bool truth = evaluate(q, n_cap);
  bool winner_is_left = truth;
  if ((side == PlayerSide::Left) != winner_is_left)
    throw QbfError(QbfErrorCode::NoWinningPolicy, 0,
                   std::string(side_name(side)) + " has no winning policy");
  Policy policy;
  policy.side = side;
  policy.num_vars = q.num_vars;
  build_policy(q, policy, 1, 0);
  if (!verify_policy(q, policy))
    throw QbfError(QbfErrorCode::NoWinningPolicy, 0, "internal: policy failed verification sweep");
  return policy;
}

bool satisfies_preconditions(const QbfInstance& q, ReductionTarget target) {
  switch (target) {
    case ReductionTarget::DIF:
      return true;
    case ReductionTarget::DPF:
      return q.num_clauses() >= 4 && q.num_clauses() % 2 == 0;
    case ReductionTarget::UPF:
      return q.num_clauses() >= 3;
    case ReductionTarget::UPR: {
      if (q.num_vars < 4 || q.num_clauses() < 2) return false;
      for (int i = 1; i <= q.num_vars; ++i) {
        bool pos = false, neg = false;
        for (const Clause& c : q.clauses)
          for (Lit l : c) {
            if (l == i) pos = true;
            if (l == -i) neg = true;
          }
        if (!pos || !neg) return false;
      }
      return true;
    }
  }
  return false;
}

QbfInstance normalize_for(const QbfInstance& q, ReductionTarget target) {
  q.validate();
  QbfInstance r = q;
  switch (target) {
    case ReductionTarget::DIF:
      break;
    case ReductionTarget::DPF:
      while (r.num_clauses() < 4 || r.num_clauses() % 2 != 0) r.clauses.push_back(r.clauses.back());
      break;
    case ReductionTarget::UPF:
      while (r.num_clauses() < 3) r.clauses.push_back(r.clauses.back());
      break;
    case ReductionTarget::UPR: {
      while (r.num_vars < 4) r.num_vars += 2;  // fresh pair, appears in no clause
      for (int i = 1; i <= r.num_vars; ++i) {
        bool pos = false, neg = false;
        for (const Clause& c : r.clauses)
          for (Lit l : c) {
            if (l == i) pos = true;
            if (l == -i) neg = true;
          }
        if (!pos || !neg) r.clauses.push_back({i, i, -i});  // tautology, truth preserved
      }
      while (r.num_clauses() < 2) r.clauses.push_back(r.clauses.back());
      break;
    }
  }
  return r;
}

QbfInstance random_instance(int n, int m, uint64_t seed) {
  if (n < 2 || n % 2 != 0) throw QbfError(QbfErrorCode::OddVarCount, 0, "n must be even >= 2");
  if (m < 1) throw QbfError(QbfErrorCode::Syntax, 0, "m must be >= 1");
  Rng rng(seed * 0x2545f4914f6cdd1dULL + 0x9e3779b97f4a7c15ULL);
  QbfInstance q;
  q.num_vars = n;
  for (int j = 0; j < m; ++j) {
    Clause c;
    for (int k = 0; k < 3; ++k) {
      int var = 1 + static_cast<int>(rng.below(n));
      c[k] = rng.coin() ? var : -var;
    }
    q.clauses.push_back(c);
  }
  return q;
}

}  // namespace geolab
