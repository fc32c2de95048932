#include <algorithm>

#include "geolab/reduction.hpp"

namespace geolab {

UpfSizes expected_upf_sizes(int n, int m) {
  UpfSizes s{m + 3, m + 9, m, m + 3, 8 * m + 7, 0};
  // Everything outside the win path: 13 per variable (the clause selection
  // top is the x_n diamond bottom, already counted), the selection gadget's
  // bottom + clause vertices + deletion paths, delay, connectors, linkers,
  // escape, PRIZE. The win path exceeds this by exactly two.
  int outside = 13 * n + (1 + m + m * (m + 3)) + (m + 9) + m * m + 3 * m * (m + 3) + (8 * m + 7) + 1;
  s.win_path = outside + 2;
  return s;
}

// Variable gadgets are an 8-cycle (drawn as a diamond) plus a 5-vertex path,
// wired so the diamond bottom meets the next path's first vertex and the
// path's fourth vertex meets the next diamond top; each diamond bottom also
// meets its own path's fifth vertex. The clause selection gadget hosts m
// clause deletion paths of m+3 vertices whose eligible interior slots carry
// the other clauses in ascending order. A delay path, per-clause connectors,
// per-occurrence linkers, an escape path, PRIZE, and the win path complete
// the construction.
ReductionArtifact tqbf_to_upf(const QbfInstance& q) {
  q.validate();
  if (!satisfies_preconditions(q, ReductionTarget::UPF))
    throw GraphError("tqbf_to_upf requires m >= 3; use normalize_for(UPF)");
  const int n = q.num_vars;
  const int m = q.num_clauses();
  const UpfSizes sizes = expected_upf_sizes(n, m);
  // Each deletion path hosts the m-1 other clauses on its m-1 eligible
  // interior slots (positions 3..m+1).
  if (m - 1 > sizes.deletion_path - 4)
    throw GraphError("internal: clause deletion path cannot host its clause attachments");

  std::vector<int> heights;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<VertexRole> roles;
  std::vector<std::string> labels;
  auto add = [&](VertexRole role, std::string label) {
    VertexId v = static_cast<VertexId>(heights.size());
    heights.push_back(1);
    roles.push_back(std::move(role));
    labels.push_back(std::move(label));
    return v;
  };
  auto edge = [&](VertexId a, VertexId b) { edges.push_back({a, b}); };

  static const char* kDiamondTags[8] = {"top", "tl", "left", "bl", "bottom", "br", "right", "tr"};
  std::vector<std::array<VertexId, 8>> diamond(n + 1);
  std::vector<std::array<VertexId, 5>> path(n + 1);
  for (int i = 1; i <= n; ++i) {
    std::string x = "x" + std::to_string(i);
    for (int s = 0; s < 8; ++s)
      diamond[i][s] =
          add({VertexRole::Kind::Variable, i, s, 0, 0, kDiamondTags[s]}, x + "." + kDiamondTags[s]);
    for (int s = 0; s < 8; ++s) edge(diamond[i][s], diamond[i][(s + 1) % 8]);
    for (int s = 0; s < 5; ++s) {
      std::string tag = "p" + std::to_string(s + 1);
      path[i][s] = add({VertexRole::Kind::Variable, i, s + 1, 0, 0, tag}, x + "." + tag);
      if (s > 0) edge(path[i][s - 1], path[i][s]);
    }
    edge(diamond[i][4], path[i][4]);  // bottom ~ p5
  }
  for (int i = 1; i < n; ++i) {
    edge(diamond[i][4], path[i + 1][0]);  // bottom ~ next p1
    edge(path[i][3], diamond[i + 1][0]);  // p4 ~ next top
  }

  const VertexId csg_top = diamond[n][4];  // shared with the x_n diamond bottom
  std::vector<VertexId> clause(m + 1);
  for (int j = 1; j <= m; ++j)
    clause[j] = add({VertexRole::Kind::Clause, j, 0, 0, 0, ""}, "c" + std::to_string(j));
  VertexId csg_bottom = add({VertexRole::Kind::Other, 0, 0, 0, 0, "csg_bottom"}, "csg.bot");

  std::vector<std::vector<VertexId>> del(m + 1);
  for (int p = 1; p <= m; ++p) {
    del[p].resize(sizes.deletion_path + 1);
    for (int s = 1; s <= sizes.deletion_path; ++s) {
      del[p][s] = add({VertexRole::Kind::ClauseDeletion, p, s, 0, 0, ""},
                      "q" + std::to_string(p) + "." + std::to_string(s));
      if (s > 1) edge(del[p][s - 1], del[p][s]);
    }
    edge(csg_top, del[p][1]);
    edge(del[p][sizes.deletion_path], csg_bottom);
    // Clauses {1..m} \ {p} on slots 3..m+1, ascending.
    int slot = 3;
    for (int j = 1; j <= m; ++j) {
      if (j == p) continue;
      edge(clause[j], del[p][slot]);
      ++slot;
    }
  }

  std::vector<VertexId> delay(sizes.delay + 1);
  for (int t = 1; t <= sizes.delay; ++t) {
    delay[t] = add({VertexRole::Kind::Delay, 0, t, 0, 0, ""}, "dly" + std::to_string(t));
    if (t > 1) edge(delay[t - 1], delay[t]);
  }
  edge(path[n][3], delay[1]);

  for (int j = 1; j <= m; ++j) {
    VertexId prev = delay[sizes.delay];
    for (int s = 1; s <= sizes.connector; ++s) {
      VertexId v = add({VertexRole::Kind::ClauseConnector, j, s, 0, 0, ""},
                       "cc" + std::to_string(j) + "." + std::to_string(s));
      edge(prev, v);
      prev = v;
    }
    edge(prev, clause[j]);
  }

  for (int j = 1; j <= m; ++j) {
    for (int k = 0; k < 3; ++k) {
      Lit lit = q.clauses[j - 1][k];
      int i = lit_var(lit);
      VertexId target = lit_positive(lit) ? diamond[i][6] : diamond[i][2];  // rightmost / leftmost
      std::string base = "c" + std::to_string(j) + (lit < 0 ? ".~x" : ".x") + std::to_string(i) +
                         "o" + std::to_string(k + 1) + ".";
      VertexId prev = clause[j];
      for (int s = 1; s <= sizes.linker; ++s) {
        VertexId v = add({VertexRole::Kind::Linker, j, s, lit, k + 1, ""}, base + std::to_string(s));
        edge(prev, v);
        prev = v;
      }
      edge(prev, target);
    }
  }

  std::vector<VertexId> esc(sizes.escape + 1);
  for (int t = 1; t <= sizes.escape; ++t) {
    esc[t] = add({VertexRole::Kind::Escape, 0, t, 0, 0, ""}, "esc" + std::to_string(t));
    if (t > 1) edge(esc[t - 1], esc[t]);
  }
  edge(csg_bottom, esc[1]);

  VertexId prize = add({VertexRole::Kind::Prize, 0, 0, 0, 0, ""}, "PRIZE");
  edge(prize, esc[3]);
  edge(prize, delay[m + 7]);

  const int outside = static_cast<int>(heights.size());
  if (sizes.win_path != outside + 2)
    throw GraphError("internal: UPF win path invariant mismatch");
  VertexId win_first = -1, prev_win = -1;
  for (int t = 1; t <= sizes.win_path; ++t) {
    VertexId v = add({VertexRole::Kind::WinPath, 0, t, 0, 0, ""}, "win" + std::to_string(t));
    if (t == 1) win_first = v;
    else edge(prev_win, v);
    prev_win = v;
  }
  edge(win_first, prize);
  for (int i = 1; i <= n; ++i) edge(win_first, path[i][4]);

  GameGraph g(Orientation::Undirected, heights, edges);
  for (VertexId v = 0; v < g.vertex_count(); ++v) g.set_label(v, labels[v]);

  ReductionArtifact art;
  art.kind = ReductionKind::UPF;
  art.source_qbf = q;
  art.position = Position::partizan_start(
      std::move(g), Variant{Orientation::Undirected, Partisanship::Partizan, DeletionRule::Free, 1},
      diamond[1][0], path[1][0]);
  art.roles = std::move(roles);
  // Not bipartite by design; the variable-gadget wiring creates 13-cycles.
  art.claimed_bipartition = std::nullopt;
  return art;
}

std::vector<VertexId> upf_odd_cycle_witness(const ReductionArtifact& artifact, int i) {
  if (artifact.kind != ReductionKind::UPF) throw GraphError("witness requires a UPF artifact");
  auto var = [&](int idx, const std::string& tag) {
    return artifact.find_one([&](const VertexRole& r) {
      return r.kind == VertexRole::Kind::Variable && r.index == idx && r.tag == tag;
    });
  };
  // bottom_i, the full path of gadget i+1, bottom_{i+1}, then back over the
  // right half of diamond i+1 and down gadget i's path tail: 13 edges.
  return {var(i, "bottom"),     var(i + 1, "p1"), var(i + 1, "p2"),    var(i + 1, "p3"),
          var(i + 1, "p4"),     var(i + 1, "p5"), var(i + 1, "bottom"), var(i + 1, "br"),
          var(i + 1, "right"),  var(i + 1, "tr"), var(i + 1, "top"),   var(i, "p4"),
          var(i, "p5")};
}

}  // namespace geolab
