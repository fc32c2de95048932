#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "geolab/game.hpp"

namespace geolab {

// Optional terminal rule: the game is a draw when the (single) token sits on
// `vertex` with `mover` to play.
struct DrawRule {
  VertexId vertex = -1;
  PlayerSide mover = PlayerSide::Left;
};

struct SolveOptions {
  uint64_t node_budget = 100'000'000;
  size_t table_cap = size_t{1} << 22;
  std::optional<DrawRule> draw_rule;
  bool want_pv = false;
};

struct SolveReport {
  Outcome outcome;
  uint64_t nodes_expanded = 0;
  uint64_t table_hits = 0;
  // Present iff the mover has a winning move (or a drawing move when the
  // position's value is a draw).
  std::optional<Move> optimal_move;
};

enum class SolveStatus { Solved, BudgetExhausted };

struct SolveResult {
  SolveStatus status = SolveStatus::Solved;
  SolveReport report;  // valid iff status == Solved
  uint64_t nodes_expanded = 0;

  bool ok() const { return status == SolveStatus::Solved; }
};

// Exact game value by full-depth memoized search. Win > Draw > Loss backup
// for the mover; win cutoff only, no heuristics. Budget exhaustion is an
// explicit status, never a wrong answer.
SolveResult solve_brute(const Position& p, const SolveOptions& opts = {});

// Matching characterization: N-position iff the token vertex is saturated by
// every maximum matching. Applies to UIR on any undirected graph and to UIF
// on bipartite graphs; UIF on non-bipartite input is rejected.
SolveReport solve_by_matching(const Position& p, uint64_t seed = 0);

// True when solve_by_matching's preconditions hold for p.
bool matching_solver_applies(const Position& p);

// Dispatches to the matching solver when applicable, else to brute search.
// Returns the optimal move when one exists, the first legal move when the
// mover is lost, and nullopt when stuck.
std::optional<Move> best_move(const Position& p, const SolveOptions& opts = {});

}  // namespace geolab
