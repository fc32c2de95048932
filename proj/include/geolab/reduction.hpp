#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geolab/game.hpp"
#include "geolab/qbf.hpp"

namespace geolab {

enum class ReductionKind { DIF, DPF, UPR, UPF, UIR4, U2D, S2TO1 };

const char* reduction_kind_name(ReductionKind k);
ReductionKind parse_reduction_kind(const std::string& name);

struct VertexRole {
  enum class Kind {
    Variable,         // index = i, tag = slot name
    Clause,           // index = j
    Delay,            // slot = position (1-based)
    ClauseDeletion,   // index = path (UPF) or 0 (DPF), slot = position
    Escape,           // slot = position
    Linker,           // index = clause j, literal = signed literal,
                      // copy = occurrence/path copy, slot = position
    ClauseConnector,  // index = clause j, slot = position
    Exit,
    Prize,
    WinPath,          // slot = position
    Meta,             // index = source vertex, slot = 1..5
    Other,            // tag describes it; index = source vertex when relevant
  };

  Kind kind = Kind::Other;
  int index = 0;
  int slot = 0;
  Lit literal = 0;
  int copy = 0;
  std::string tag;

  std::string str() const;
  bool operator==(const VertexRole&) const = default;
};

const char* role_kind_name(VertexRole::Kind k);

struct ReductionArtifact {
  ReductionKind kind = ReductionKind::DIF;
  Position position;
  std::vector<VertexRole> roles;  // one per vertex id
  std::optional<Bipartition> claimed_bipartition;
  std::optional<QbfInstance> source_qbf;
  std::optional<Position> source_position;

  const VertexRole& role(VertexId v) const { return roles.at(v); }
  // Every vertex whose role matches the predicate, in id order.
  template <typename Pred>
  std::vector<VertexId> find_all(Pred pred) const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < static_cast<VertexId>(roles.size()); ++v)
      if (pred(roles[v])) out.push_back(v);
    return out;
  }
  // Unique vertex with a matching role; throws when absent or ambiguous.
  template <typename Pred>
  VertexId find_one(Pred pred) const {
    auto all = find_all(pred);
    if (all.size() != 1) throw GraphError("role lookup matched " + std::to_string(all.size()) + " vertices");
    return all[0];
  }
};

// Prop: edge doubling. Undirected position -> directed position with two
// antiparallel arcs per edge; tokens, heights and turn preserved.
ReductionArtifact undirect_to_direct(const Position& p);

// Prop: stack-2 to stack-1 vertex duplication. Height-2 vertices split into
// two copies, adjacency induced on all copy pairs, token on the high copy.
ReductionArtifact stack2_to_stack1(const Position& p);

// Thm: Geography (DIR) -> UIR4 meta-vertex construction. Every live source
// vertex becomes a 5-path with heights [2,4,3,1,1]; arc vw becomes edge
// v5~w1; token t moves to t1.
ReductionArtifact geography_to_uir4(const Position& p);

// Thm: TQBF -> DIF (directed impartial free deletion, bipartite).
ReductionArtifact tqbf_to_dif(const QbfInstance& q);

// Thm: TQBF -> DPF. Requires m >= 4 and m even (normalize_for(DPF)).
ReductionArtifact tqbf_to_dpf(const QbfInstance& q);

// Thm: TQBF -> UPR. Requires n >= 4, m >= 2, every literal appearing
// (normalize_for(UPR)).
ReductionArtifact tqbf_to_upr(const QbfInstance& q);

// Thm: TQBF -> UPF. Requires m >= 3 (normalize_for(UPF)).
ReductionArtifact tqbf_to_upf(const QbfInstance& q);

// Expected component sizes as pure functions of (n, m); generators assert
// these against the built graph and verify_structure re-checks them.
struct DpfSizes {
  int delay, deletion, escape, linker_path;
};
DpfSizes expected_dpf_sizes(int n, int m);

struct UprSizes {
  int delay_part;       // each side of the delay graph
  int connector;        // vertices per clause connector
  int left_linker;      // odd-variable linker length
  int right_linker;     // even-variable linker length
  int escape;
};
UprSizes expected_upr_sizes(int n, int m);

struct UpfSizes {
  int deletion_path;    // per clause deletion path
  int delay;
  int connector;        // per clause connector
  int linker;           // per linker
  int escape;
  int win_path;         // computed from the +2 invariant
};
UpfSizes expected_upf_sizes(int n, int m);

// 13-cycle witness through the variable gadget pair (i, i+1) of a UPF
// artifact, as a closed vertex walk.
std::vector<VertexId> upf_odd_cycle_witness(const ReductionArtifact& artifact, int i = 1);

}  // namespace geolab
