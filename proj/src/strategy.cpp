#include "geolab/strategy.hpp"

#include <algorithm>

namespace geolab {

std::optional<Move> RandomStrategy::next(const Position& p) {
  auto moves = legal_moves(p);
  if (moves.empty()) return std::nullopt;
  return moves[rng_.below(moves.size())];
}

std::optional<Move> SearchStrategy::next(const Position& p) { return best_move(p, opts_); }

PlayoutOutcome play_out(const Position& start, Strategy& left, Strategy& right,
                        const Bipartition* parts, int max_plies, Ledger* ledger) {
  PlayoutOutcome out;
  Ledger local;
  Ledger& led = ledger ? *ledger : local;
  Position p = start;
  for (int ply = 1; ply <= max_plies; ++ply) {
    if (parts && !p.impartial()) {
      bool opposite = parts->contains_a(p.left_token) != parts->contains_a(p.right_token);
      if (opposite != (p.to_move == PlayerSide::Left)) ++out.move_invariant_violations;
    }
    auto moves = legal_moves(p);
    if (moves.empty()) {
      out.winner = opponent(p.to_move);
      out.ledger = led;
      return out;
    }
    Strategy& active = p.to_move == PlayerSide::Left ? left : right;
    auto mv = active.next(p);
    if (!mv) {
      out.diverged = true;
      out.diverged_side = p.to_move;
      out.diverged_ply = ply;
      out.divergence_reason = active.divergence_reason();
      out.ledger = led;
      return out;
    }
    if (classify_move(p, *mv)) {
      ++out.illegal_emissions;
      out.diverged = true;
      out.diverged_side = p.to_move;
      out.diverged_ply = ply;
      out.divergence_reason = "illegal move emitted: " + mv->str();
      out.ledger = led;
      return out;
    }
    led.bump(p.to_move == PlayerSide::Left ? "left_moves" : "right_moves");
    left.observe(p, *mv);
    right.observe(p, *mv);
    apply_move_in_place(p, *mv);
    out.transcript.push_back(*mv);
  }
  out.diverged = true;
  out.divergence_reason = "ply cap reached";
  out.ledger = led;
  return out;
}

namespace detail {

std::vector<int> live_distances(const GameGraph& g, VertexId src, VertexId avoid) {
  std::vector<int> dist(g.vertex_count(), -1);
  if (src < 0 || !g.live(src)) return dist;
  dist[src] = 0;
  std::vector<VertexId> queue{src};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    VertexId v = queue[qi];
    for (VertexId w : g.out_raw(v)) {
      if (!g.live(w) || w == avoid || dist[w] != -1) continue;
      dist[w] = dist[v] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

std::vector<VertexId> live_path(const GameGraph& g, VertexId src, VertexId dst, VertexId avoid) {
  std::vector<VertexId> parent(g.vertex_count(), -2);
  if (src < 0 || dst < 0 || !g.live(src) || !g.live(dst)) return {};
  parent[src] = -1;
  std::vector<VertexId> queue{src};
  for (size_t qi = 0; qi < queue.size() && parent[dst] == -2; ++qi) {
    VertexId v = queue[qi];
    for (VertexId w : g.out_raw(v)) {
      if (!g.live(w) || w == avoid || parent[w] != -2) continue;
      parent[w] = v;
      queue.push_back(w);
    }
  }
  if (parent[dst] == -2) return {};
  std::vector<VertexId> path;
  for (VertexId v = dst; v != -1; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace detail

std::unique_ptr<Strategy> make_dif_script(const ReductionArtifact&, PlayerSide,
                                          std::optional<Policy>, Ledger*);
std::unique_ptr<Strategy> make_dpf_script(const ReductionArtifact&, PlayerSide,
                                          std::optional<Policy>, Ledger*);
std::unique_ptr<Strategy> make_upr_script(const ReductionArtifact&, PlayerSide,
                                          std::optional<Policy>, Ledger*);
std::unique_ptr<Strategy> make_upf_script(const ReductionArtifact&, PlayerSide,
                                          std::optional<Policy>, Ledger*);

std::unique_ptr<Strategy> make_scripted_strategy(const ReductionArtifact& art, PlayerSide side,
                                                 std::optional<Policy> policy, Ledger* ledger) {
  switch (art.kind) {
    case ReductionKind::DIF: return make_dif_script(art, side, std::move(policy), ledger);
    case ReductionKind::DPF: return make_dpf_script(art, side, std::move(policy), ledger);
    case ReductionKind::UPR: return make_upr_script(art, side, std::move(policy), ledger);
    case ReductionKind::UPF: return make_upf_script(art, side, std::move(policy), ledger);
    default: throw GraphError("no scripted strategy for this reduction kind");
  }
}

}  // namespace geolab
