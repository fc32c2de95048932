#include "geolab/game.hpp"

#include <algorithm>

namespace geolab {

std::string Variant::name() const {
  std::string s;
  s += orientation == Orientation::Directed ? 'D' : 'U';
  s += partisanship == Partisanship::Impartial ? 'I' : 'P';
  s += deletion == DeletionRule::Restricted ? 'R' : 'F';
  if (max_height != 1) s += std::to_string(max_height);
  return s;
}

Variant Variant::parse(const std::string& name) {
  if (name.size() < 3) throw GraphError("bad variant name: " + name);
  Variant v;
  char o = std::toupper(name[0]), y = std::toupper(name[1]), z = std::toupper(name[2]);
  if (o == 'D') v.orientation = Orientation::Directed;
  else if (o == 'U') v.orientation = Orientation::Undirected;
  else throw GraphError("bad variant orientation: " + name);
  if (y == 'I') v.partisanship = Partisanship::Impartial;
  else if (y == 'P') v.partisanship = Partisanship::Partizan;
  else throw GraphError("bad variant partisanship: " + name);
  if (z == 'R') v.deletion = DeletionRule::Restricted;
  else if (z == 'F') v.deletion = DeletionRule::Free;
  else throw GraphError("bad variant deletion rule: " + name);
  if (name.size() > 3) {
    v.max_height = std::stoi(name.substr(3));
    if (v.max_height < 1) throw GraphError("bad variant height: " + name);
  }
  return v;
}

std::string Move::str() const {
  return "<" + std::to_string(from) + "," + std::to_string(to) + "," + std::to_string(del) + ">";
}

const char* move_error_name(MoveError e) {
  switch (e) {
    case MoveError::BadSource: return "BadSource";
    case MoveError::BadTarget: return "BadTarget";
    case MoveError::HeightClimb: return "HeightClimb";
    case MoveError::OccupiedTarget: return "OccupiedTarget";
    case MoveError::BadDeletion: return "BadDeletion";
  }
  return "?";
}

const char* result_name(GameResult r) {
  switch (r) {
    case GameResult::LeftWins: return "LeftWins";
    case GameResult::RightWins: return "RightWins";
    case GameResult::Draw: return "Draw";
  }
  return "?";
}

VertexId Position::token() const {
  if (!impartial()) throw GraphError("token() on partizan position");
  return left_token;
}

VertexId Position::token_of(PlayerSide s) const {
  if (impartial()) return left_token;
  return s == PlayerSide::Left ? left_token : right_token;
}

void Position::validate() const {
  if (variant.max_height < 1) throw GraphError("max_height must be >= 1");
  for (VertexId v = 0; v < graph.vertex_count(); ++v)
    if (graph.height(v) > variant.max_height)
      throw GraphError("height exceeds variant max_height at vertex " + std::to_string(v));
  auto check_token = [&](VertexId t, const char* who) {
    if (t < 0 || t >= graph.vertex_count() || !graph.live(t))
      throw GraphError(std::string(who) + " token not on a live vertex");
  };
  if (impartial()) {
    check_token(left_token, "the");
  } else {
    check_token(left_token, "Left");
    check_token(right_token, "Right");
    if (left_token == right_token) throw GraphError("partizan tokens must occupy distinct vertices");
  }
}

Position Position::impartial_start(GameGraph g, Variant v, VertexId token, PlayerSide to_move) {
  if (v.partisanship != Partisanship::Impartial) throw GraphError("variant is not impartial");
  Position p{std::move(g), v, token, -1, to_move};
  p.validate();
  return p;
}

Position Position::partizan_start(GameGraph g, Variant v, VertexId left, VertexId right,
                                  PlayerSide to_move) {
  if (v.partisanship != Partisanship::Partizan) throw GraphError("variant is not partizan");
  Position p{std::move(g), v, left, right, to_move};
  p.validate();
  return p;
}

namespace {

std::vector<Move> gen_moves(const Position& p, bool climb_check) {
  std::vector<Move> moves;
  const GameGraph& g = p.graph;
  const VertexId v = p.active_token();
  const VertexId other =
      p.impartial() ? -1 : p.token_of(opponent(p.to_move));
  const int hv = g.height(v);
  const bool directed = g.directed();

  for (VertexId w : g.out_raw(v)) {
    if (!g.live(w)) continue;
    if (climb_check && g.height(w) < hv - 1) continue;
    if (w == other) continue;
    if (p.variant.deletion == DeletionRule::Restricted) {
      moves.push_back({v, w, v});
      continue;
    }
    // Free deletion: any live predecessor (directed) / neighbor (undirected)
    // of w, with the mover's origin treated as already vacated. Occupied
    // vertices cannot be reduced, so the opponent's token blocks deletion.
    const auto& preds = directed ? g.in_raw(w) : g.out_raw(w);
    for (VertexId u : preds) {
      if (!g.live(u)) continue;
      if (u == other) continue;
      moves.push_back({v, w, u});
    }
  }
  std::sort(moves.begin(), moves.end(), [](const Move& a, const Move& b) {
    return std::tie(a.to, a.del) < std::tie(b.to, b.del);
  });
  return moves;
}

}  // namespace

std::vector<Move> legal_moves(const Position& p) { return gen_moves(p, true); }

std::vector<Move> legal_moves_ignoring_climb(const Position& p) { return gen_moves(p, false); }

std::optional<MoveError> classify_move(const Position& p, const Move& m) {
  const GameGraph& g = p.graph;
  if (m.from != p.active_token() || !g.live(m.from)) return MoveError::BadSource;
  if (m.to < 0 || m.to >= g.vertex_count() || !g.live(m.to) || !g.has_link(m.from, m.to))
    return MoveError::BadTarget;
  if (g.height(m.to) < g.height(m.from) - 1) return MoveError::HeightClimb;
  if (!p.impartial() && m.to == p.token_of(opponent(p.to_move))) return MoveError::OccupiedTarget;
  if (p.variant.deletion == DeletionRule::Restricted) {
    if (m.del != m.from) return MoveError::BadDeletion;
  } else {
    if (m.del < 0 || m.del >= g.vertex_count() || !g.live(m.del)) return MoveError::BadDeletion;
    bool precedes = g.directed() ? (std::binary_search(g.in_raw(m.to).begin(), g.in_raw(m.to).end(), m.del))
                                 : g.has_link(m.to, m.del) || g.has_link(m.del, m.to);
    if (!precedes) return MoveError::BadDeletion;
    if (!p.impartial() && m.del == p.token_of(opponent(p.to_move))) return MoveError::BadDeletion;
    if (m.del == m.to) return MoveError::BadDeletion;
  }
  return std::nullopt;
}

Position apply_move(const Position& p, const Move& m) {
  if (auto err = classify_move(p, m))
    throw IllegalMove(*err, std::string("illegal move ") + m.str() + ": " + move_error_name(*err));
  Position next = p;
  apply_move_in_place(next, m);
  return next;
}

void apply_move_in_place(Position& p, const Move& m) {
  if (p.impartial()) {
    p.left_token = m.to;
  } else if (p.to_move == PlayerSide::Left) {
    p.left_token = m.to;
  } else {
    p.right_token = m.to;
  }
  p.graph.decrement_height(m.del);
  p.to_move = opponent(p.to_move);
}

void undo_move_in_place(Position& p, const Move& m) {
  p.to_move = opponent(p.to_move);
  p.graph.increment_height(m.del);
  if (p.impartial()) {
    p.left_token = m.from;
  } else if (p.to_move == PlayerSide::Left) {
    p.left_token = m.from;
  } else {
    p.right_token = m.from;
  }
}

std::optional<PlayerSide> loser_if_stuck(const Position& p) {
  if (legal_moves(p).empty()) return p.to_move;
  return std::nullopt;
}

std::string encode_position(const Position& p) {
  std::string key;
  key.reserve(5 + p.graph.vertex_count());
  key += static_cast<char>(p.to_move == PlayerSide::Left ? 0 : 1);
  auto put16 = [&](VertexId v) {
    key += static_cast<char>(v & 0xff);
    key += static_cast<char>((v >> 8) & 0xff);
  };
  put16(p.left_token);
  put16(p.impartial() ? -1 : p.right_token);
  for (VertexId v = 0; v < p.graph.vertex_count(); ++v)
    key += static_cast<char>(p.graph.height(v));
  return key;
}

}  // namespace geolab
