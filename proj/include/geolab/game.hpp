#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geolab/graph.hpp"

namespace geolab {

enum class PlayerSide { Left, Right };

inline PlayerSide opponent(PlayerSide s) {
  return s == PlayerSide::Left ? PlayerSide::Right : PlayerSide::Left;
}
inline const char* side_name(PlayerSide s) { return s == PlayerSide::Left ? "Left" : "Right"; }

enum class Partisanship { Impartial, Partizan };
enum class DeletionRule { Restricted, Free };

// Four-axis rule descriptor, e.g. UIR4 = undirected impartial restricted, k=4.
struct Variant {
  Orientation orientation = Orientation::Directed;
  Partisanship partisanship = Partisanship::Impartial;
  DeletionRule deletion = DeletionRule::Restricted;
  int max_height = 1;

  bool operator==(const Variant&) const = default;

  std::string name() const;                      // "DIR", "UIR4", ...
  static Variant parse(const std::string& name);  // throws GraphError on bad name
};

inline const Variant kGeography{Orientation::Directed, Partisanship::Impartial,
                                DeletionRule::Restricted, 1};

// Move <from, to, delete>; regular when del == from, irregular otherwise.
struct Move {
  VertexId from = -1;
  VertexId to = -1;
  VertexId del = -1;

  bool regular() const { return del == from; }
  bool operator==(const Move&) const = default;
  auto operator<=>(const Move&) const = default;
  std::string str() const;
};

enum class MoveError {
  BadSource,        // from is not the active token's vertex (or dead)
  BadTarget,        // to not adjacent/successive or dead
  HeightClimb,      // height(to) < height(from) - 1
  OccupiedTarget,   // partizan: to holds the inactive token
  BadDeletion,      // del not an eligible deletion vertex
};

const char* move_error_name(MoveError e);

struct IllegalMove : std::runtime_error {
  MoveError reason;
  IllegalMove(MoveError r, const std::string& what) : std::runtime_error(what), reason(r) {}
};

struct Position {
  GameGraph graph;
  Variant variant;
  VertexId left_token = -1;   // impartial: the single token
  VertexId right_token = -1;  // impartial: unused (-1)
  PlayerSide to_move = PlayerSide::Left;

  bool impartial() const { return variant.partisanship == Partisanship::Impartial; }
  VertexId token() const;  // impartial only
  VertexId token_of(PlayerSide s) const;
  VertexId active_token() const { return token_of(to_move); }

  // Throws GraphError when the Position invariants are violated.
  void validate() const;

  static Position impartial_start(GameGraph g, Variant v, VertexId token,
                                  PlayerSide to_move = PlayerSide::Left);
  static Position partizan_start(GameGraph g, Variant v, VertexId left, VertexId right,
                                 PlayerSide to_move = PlayerSide::Left);
};

// All legal moves for the active player, sorted by (to, del).
std::vector<Move> legal_moves(const Position& p);

// Same enumeration without the stacking climb restriction (k<=2 equivalence checks).
std::vector<Move> legal_moves_ignoring_climb(const Position& p);

// First violated rule, or nullopt when m is legal.
std::optional<MoveError> classify_move(const Position& p, const Move& m);

// Applies a legal move; throws IllegalMove otherwise.
Position apply_move(const Position& p, const Move& m);

// In-place apply/undo for search. No legality check.
void apply_move_in_place(Position& p, const Move& m);
void undo_move_in_place(Position& p, const Move& m);

// The to-move player iff they have no legal move.
std::optional<PlayerSide> loser_if_stuck(const Position& p);

// Canonical key: injective over positions sharing a vertex universe.
std::string encode_position(const Position& p);

enum class GameResult { LeftWins, RightWins, Draw };
const char* result_name(GameResult r);
inline GameResult win_for(PlayerSide s) {
  return s == PlayerSide::Left ? GameResult::LeftWins : GameResult::RightWins;
}

struct Outcome {
  GameResult result = GameResult::Draw;
  std::vector<Move> principal_variation;  // filled on request
};

}  // namespace geolab
