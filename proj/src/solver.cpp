#include "geolab/solver.hpp"

#include <unordered_map>

#include "geolab/matching.hpp"

namespace geolab {

namespace {

// Value from the mover's perspective.
enum class Value : int8_t { Loss = -1, Draw = 0, Win = 1 };

Value flip(Value v) {
  if (v == Value::Win) return Value::Loss;
  if (v == Value::Loss) return Value::Win;
  return Value::Draw;
}

struct BudgetExceeded {};

class BruteSolver {
 public:
  BruteSolver(const Position& root, const SolveOptions& opts) : pos_(root), opts_(opts) {}

  SolveResult run() {
    SolveResult result;
    try {
      Value v = value();
      result.report.outcome.result = to_result(v, pos_.to_move);
      result.report.optimal_move = root_best(v);
      if (opts_.want_pv) result.report.outcome.principal_variation = principal_variation();
      result.report.nodes_expanded = nodes_;
      result.report.table_hits = hits_;
      result.nodes_expanded = nodes_;
    } catch (BudgetExceeded&) {
      result.status = SolveStatus::BudgetExhausted;
      result.nodes_expanded = nodes_;
    }
    return result;
  }

 private:
  static GameResult to_result(Value v, PlayerSide mover) {
    if (v == Value::Draw) return GameResult::Draw;
    return win_for(v == Value::Win ? mover : opponent(mover));
  }

  bool draw_terminal() const {
    return opts_.draw_rule && pos_.impartial() && pos_.token() == opts_.draw_rule->vertex &&
           pos_.to_move == opts_.draw_rule->mover;
  }

  Value value() {
    if (draw_terminal()) return Value::Draw;
    std::string key = encode_position(pos_);
    if (auto it = table_.find(key); it != table_.end()) {
      ++hits_;
      return it->second;
    }
    if (++nodes_ > opts_.node_budget) throw BudgetExceeded{};

    Value best = Value::Loss;
    for (const Move& m : legal_moves(pos_)) {
      apply_move_in_place(pos_, m);
      Value child = flip(value());
      undo_move_in_place(pos_, m);
      if (child == Value::Win) {
        best = Value::Win;
        break;
      }
      if (child == Value::Draw) best = Value::Draw;
    }
    if (table_.size() < opts_.table_cap) table_.emplace(std::move(key), best);
    return best;
  }

  // First move (in move order) achieving the position's value, when the
  // value is Win or Draw.
  std::optional<Move> root_best(Value v) {
    if (v == Value::Loss) return std::nullopt;
    for (const Move& m : legal_moves(pos_)) {
      apply_move_in_place(pos_, m);
      Value child = flip(value());
      undo_move_in_place(pos_, m);
      if (child == v) return m;
    }
    return std::nullopt;
  }

  // Optimal line: the winner plays value-preserving moves, a lost mover
  // plays the first legal move. Ends with the loser stuck or at the draw
  // terminal.
  std::vector<Move> principal_variation() {
    std::vector<Move> pv;
    std::vector<Move> applied;
    for (;;) {
      if (draw_terminal()) break;
      auto moves = legal_moves(pos_);
      if (moves.empty()) break;
      Value v = value();
      Move chosen = moves.front();
      if (v != Value::Loss) {
        for (const Move& m : moves) {
          apply_move_in_place(pos_, m);
          Value child = flip(value());
          undo_move_in_place(pos_, m);
          if (child == v) {
            chosen = m;
            break;
          }
        }
      }
      pv.push_back(chosen);
      applied.push_back(chosen);
      apply_move_in_place(pos_, chosen);
    }
    for (auto it = applied.rbegin(); it != applied.rend(); ++it) undo_move_in_place(pos_, *it);
    return pv;
  }

  Position pos_;
  SolveOptions opts_;
  std::unordered_map<std::string, Value> table_;
  uint64_t nodes_ = 0;
  uint64_t hits_ = 0;
};

}  // namespace

SolveResult solve_brute(const Position& p, const SolveOptions& opts) {
  p.validate();
  return BruteSolver(p, opts).run();
}

bool matching_solver_applies(const Position& p) {
  if (p.variant.orientation != Orientation::Undirected) return false;
  if (p.variant.partisanship != Partisanship::Impartial) return false;
  if (p.variant.max_height != 1) return false;
  if (p.variant.deletion == DeletionRule::Restricted) return true;
  // UIF: only settled for bipartite graphs (the Fig. 8 counterexample shows
  // the hypothesis is necessary), so refuse non-bipartite input.
  return p.graph.check_bipartite().bipartite();
}

SolveReport solve_by_matching(const Position& p, uint64_t seed) {
  p.validate();
  if (p.variant.orientation != Orientation::Undirected || !p.impartial() ||
      p.variant.max_height != 1)
    throw GraphError("matching solver requires UIR or bipartite UIF, k=1");
  if (p.variant.deletion == DeletionRule::Free && !p.graph.check_bipartite().bipartite())
    throw GraphError("matching solver: UIF on a non-bipartite graph is unsupported");

  SolveReport report;
  const VertexId t = p.token();
  if (is_essential(p.graph, t, seed)) {
    report.outcome.result = win_for(p.to_move);
    // Winning move: regular move along a maximum-matching edge at the token;
    // every maximum matching saturates t here.
    Matching m = maximum_matching(p.graph, seed);
    VertexId w = m.mate(t);
    if (w == -1) throw GraphError("internal: essential token unmatched");
    report.optimal_move = Move{t, w, t};
  } else {
    report.outcome.result = win_for(opponent(p.to_move));
  }
  return report;
}

std::optional<Move> best_move(const Position& p, const SolveOptions& opts) {
  if (matching_solver_applies(p)) {
    SolveReport r = solve_by_matching(p);
    if (r.optimal_move) return r.optimal_move;
    auto moves = legal_moves(p);
    if (moves.empty()) return std::nullopt;
    return moves.front();
  }
  SolveResult r = solve_brute(p, opts);
  if (!r.ok()) throw GraphError("best_move: node budget exhausted");
  if (r.report.optimal_move) return r.report.optimal_move;
  auto moves = legal_moves(p);
  if (moves.empty()) return std::nullopt;
  return moves.front();
}

}  // namespace geolab
