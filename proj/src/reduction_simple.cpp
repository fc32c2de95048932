#include <algorithm>

#include "geolab/reduction.hpp"

namespace geolab {

const char* reduction_kind_name(ReductionKind k) {
  switch (k) {
    case ReductionKind::DIF: return "DIF";
    case ReductionKind::DPF: return "DPF";
    case ReductionKind::UPR: return "UPR";
    case ReductionKind::UPF: return "UPF";
    case ReductionKind::UIR4: return "UIR4";
    case ReductionKind::U2D: return "U2D";
    case ReductionKind::S2TO1: return "S2TO1";
  }
  return "?";
}

ReductionKind parse_reduction_kind(const std::string& name) {
  std::string up;
  for (char c : name) up += std::toupper(c);
  if (up == "DIF") return ReductionKind::DIF;
  if (up == "DPF") return ReductionKind::DPF;
  if (up == "UPR") return ReductionKind::UPR;
  if (up == "UPF") return ReductionKind::UPF;
  if (up == "UIR4") return ReductionKind::UIR4;
  if (up == "U2D") return ReductionKind::U2D;
  if (up == "S2TO1") return ReductionKind::S2TO1;
  throw GraphError("unknown reduction kind: " + name);
}

const char* role_kind_name(VertexRole::Kind k) {
  switch (k) {
    case VertexRole::Kind::Variable: return "variable";
    case VertexRole::Kind::Clause: return "clause";
    case VertexRole::Kind::Delay: return "delay";
    case VertexRole::Kind::ClauseDeletion: return "clause_deletion";
    case VertexRole::Kind::Escape: return "escape";
    case VertexRole::Kind::Linker: return "linker";
    case VertexRole::Kind::ClauseConnector: return "clause_connector";
    case VertexRole::Kind::Exit: return "exit";
    case VertexRole::Kind::Prize: return "prize";
    case VertexRole::Kind::WinPath: return "win_path";
    case VertexRole::Kind::Meta: return "meta";
    case VertexRole::Kind::Other: return "other";
  }
  return "?";
}

std::string VertexRole::str() const {
  std::string s = role_kind_name(kind);
  switch (kind) {
    case Kind::Variable: s += "(x" + std::to_string(index) + "." + tag + ")"; break;
    case Kind::Clause: s += "(c" + std::to_string(index) + (tag.empty() ? "" : "." + tag) + ")"; break;
    case Kind::Delay: s += "[" + std::to_string(slot) + "]"; break;
    case Kind::ClauseDeletion:
      s += (index ? "(p" + std::to_string(index) + ")" : "") + std::string("[") + std::to_string(slot) + "]";
      break;
    case Kind::Escape: s += "[" + std::to_string(slot) + "]"; break;
    case Kind::Linker:
      s += "(c" + std::to_string(index) + "," + (literal < 0 ? "~x" : "x") + std::to_string(lit_var(literal)) +
           "#" + std::to_string(copy) + ")[" + std::to_string(slot) + "]";
      break;
    case Kind::ClauseConnector: s += "(c" + std::to_string(index) + ")[" + std::to_string(slot) + "]"; break;
    case Kind::Meta: s += "(" + std::to_string(index) + "." + std::to_string(slot) + ")"; break;
    case Kind::Other: s += "(" + tag + (index || slot ? "," + std::to_string(index) + "." + std::to_string(slot) : "") + ")"; break;
    default: break;
  }
  return s;
}

ReductionArtifact undirect_to_direct(const Position& p) {
  p.validate();
  if (p.variant.orientation != Orientation::Undirected)
    throw GraphError("undirect_to_direct requires an undirected position");

  std::vector<int> heights;
  for (VertexId v = 0; v < p.graph.vertex_count(); ++v) heights.push_back(p.graph.height(v));
  std::vector<std::pair<VertexId, VertexId>> arcs;
  for (auto [a, b] : p.graph.links()) {
    arcs.push_back({a, b});
    arcs.push_back({b, a});
  }
  GameGraph g(Orientation::Directed, heights, arcs);
  for (VertexId v = 0; v < p.graph.vertex_count(); ++v)
    if (auto l = p.graph.label(v)) g.set_label(v, *l);

  Variant variant = p.variant;
  variant.orientation = Orientation::Directed;

  ReductionArtifact art;
  art.kind = ReductionKind::U2D;
  art.source_position = p;
  art.position = Position{std::move(g), variant, p.left_token, p.right_token, p.to_move};
  art.position.validate();
  for (VertexId v = 0; v < p.graph.vertex_count(); ++v)
    art.roles.push_back({VertexRole::Kind::Other, v, 0, 0, 0, "source"});
  return art;
}

ReductionArtifact stack2_to_stack1(const Position& p) {
  p.validate();
  if (p.variant.max_height > 2) throw GraphError("stack2_to_stack1 requires max_height <= 2");

  const GameGraph& g = p.graph;
  const int n = g.vertex_count();
  // Copies allocated source-major: v1 (and v2 when height 2).
  std::vector<std::vector<VertexId>> copies(n);
  std::vector<int> heights;
  std::vector<VertexRole> roles;
  for (VertexId v = 0; v < n; ++v) {
    for (int c = 1; c <= g.height(v); ++c) {
      copies[v].push_back(static_cast<VertexId>(heights.size()));
      heights.push_back(1);
      roles.push_back({VertexRole::Kind::Other, v, c, 0, 0, "copy"});
    }
  }

  std::vector<std::pair<VertexId, VertexId>> links;
  for (auto [a, b] : g.links())
    for (VertexId ca : copies[a])
      for (VertexId cb : copies[b]) links.push_back({ca, cb});

  GameGraph out(g.orientation(), heights, links);
  for (VertexId v = 0; v < n; ++v)
    for (size_t c = 0; c < copies[v].size(); ++c)
      out.set_label(copies[v][c], g.display_name(v) + "_" + std::to_string(c + 1));

  // Token on a height-1 vertex maps to v1; on a height-2 vertex to v2.
  auto map_token = [&](VertexId t) -> VertexId {
    if (t < 0) return -1;
    return copies[t].back();
  };

  Variant variant = p.variant;
  variant.max_height = 1;

  ReductionArtifact art;
  art.kind = ReductionKind::S2TO1;
  art.source_position = p;
  art.position = Position{std::move(out), variant, map_token(p.left_token),
                          p.impartial() ? -1 : map_token(p.right_token), p.to_move};
  art.position.validate();
  art.roles = std::move(roles);

  // Bipartite input yields a bipartite output with copies inheriting sides.
  auto src_check = g.check_bipartite();
  if (src_check.bipartite()) {
    Bipartition out_parts;
    for (VertexId v : src_check.partition->part_a)
      for (VertexId c : copies[v]) out_parts.part_a.push_back(c);
    for (VertexId v : src_check.partition->part_b)
      for (VertexId c : copies[v]) out_parts.part_b.push_back(c);
    std::sort(out_parts.part_a.begin(), out_parts.part_a.end());
    std::sort(out_parts.part_b.begin(), out_parts.part_b.end());
    art.claimed_bipartition = std::move(out_parts);
  }
  return art;
}

ReductionArtifact geography_to_uir4(const Position& p) {
  p.validate();
  if (p.variant != kGeography)
    throw GraphError("geography_to_uir4 requires a DIR (k=1) position");

  const GameGraph& g = p.graph;
  static const int kMetaHeights[5] = {2, 4, 3, 1, 1};

  std::vector<std::vector<VertexId>> meta(g.vertex_count());
  std::vector<int> heights;
  std::vector<VertexRole> roles;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!g.live(v)) continue;
    for (int slot = 1; slot <= 5; ++slot) {
      meta[v].push_back(static_cast<VertexId>(heights.size()));
      heights.push_back(kMetaHeights[slot - 1]);
      roles.push_back({VertexRole::Kind::Meta, v, slot, 0, 0, ""});
    }
  }

  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!g.live(v)) continue;
    for (int slot = 0; slot < 4; ++slot) edges.push_back({meta[v][slot], meta[v][slot + 1]});
  }
  for (auto [a, b] : g.links()) {
    if (!g.live(a) || !g.live(b)) continue;
    edges.push_back({meta[a][4], meta[b][0]});  // v5 ~ w1
  }

  GameGraph out(Orientation::Undirected, heights, edges);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (size_t s = 0; s < meta[v].size(); ++s)
      out.set_label(meta[v][s], g.display_name(v) + "_" + std::to_string(s + 1));

  ReductionArtifact art;
  art.kind = ReductionKind::UIR4;
  art.source_position = p;
  art.position = Position::impartial_start(
      std::move(out),
      Variant{Orientation::Undirected, Partisanship::Impartial, DeletionRule::Restricted, 4},
      meta[p.token()][0], p.to_move);
  art.roles = std::move(roles);

  // When the source is bipartite, slots 1/3/5 inherit the source side and
  // slots 2/4 take the opposite one.
  auto src_check = g.check_bipartite();
  if (src_check.bipartite()) {
    Bipartition parts;
    auto place = [&](const std::vector<VertexId>& side, bool odd_to_a) {
      for (VertexId v : side) {
        if (!g.live(v)) continue;
        for (int slot = 1; slot <= 5; ++slot) {
          bool odd = slot % 2 == 1;
          (odd == odd_to_a ? parts.part_a : parts.part_b).push_back(meta[v][slot - 1]);
        }
      }
    };
    place(src_check.partition->part_a, true);
    place(src_check.partition->part_b, false);
    std::sort(parts.part_a.begin(), parts.part_a.end());
    std::sort(parts.part_b.begin(), parts.part_b.end());
    art.claimed_bipartition = std::move(parts);
  }
  return art;
}

}  // namespace geolab
