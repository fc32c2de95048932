#include <algorithm>

#include "geolab/reduction.hpp"

namespace geolab {

UprSizes expected_upr_sizes(int n, int m) {
  return UprSizes{m + n / 2 + 5, n + 4, n + 2, n + 7, 3 * n + 25};
}

// Undirected diamonds chained per parity; a K_{m,m-1} clause selection
// gadget; a K_{D,D} delay graph (D = m + n/2 + 5) hanging off the bottom of
// the x_{n-1} gadget; EXIT adjacent to that bottom and to all of Part II;
// one clause connector (n+4 vertices) from EXIT to each clause; two
// independent linker paths per literal occurrence (n+2 vertices for odd
// variables, n+7 for even); an escape path of 3n+25 vertices adjacent to
// every non-clause selection vertex.
ReductionArtifact tqbf_to_upr(const QbfInstance& q) {
  q.validate();
  if (!satisfies_preconditions(q, ReductionTarget::UPR))
    throw GraphError(
        "tqbf_to_upr requires n >= 4, m >= 2, and every literal appearing; use normalize_for(UPR)");
  const int n = q.num_vars;
  const int m = q.num_clauses();
  const UprSizes sizes = expected_upr_sizes(n, m);

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

  std::vector<VertexId> top(n + 1), left(n + 1), right(n + 1), bottom(n + 1);
  for (int i = 1; i <= n; ++i) {
    std::string x = "x" + std::to_string(i);
    auto var = [&](const char* tag) { return VertexRole{VertexRole::Kind::Variable, i, 0, 0, 0, tag}; };
    top[i] = (i <= 2) ? add(var("top"), x + ".top") : bottom[i - 2];
    left[i] = add(var("left"), x + ".l");
    right[i] = add(var("right"), x + ".r");
    bottom[i] = add(var("bottom"), x + ".bot");
    edge(top[i], left[i]);
    edge(top[i], right[i]);
    edge(left[i], bottom[i]);
    edge(right[i], bottom[i]);
  }

  std::vector<VertexId> clause(m + 1), selector(m);
  for (int j = 1; j <= m; ++j)
    clause[j] = add({VertexRole::Kind::Clause, j, 0, 0, 0, ""}, "c" + std::to_string(j));
  for (int t = 1; t <= m - 1; ++t)
    selector[t] = add({VertexRole::Kind::Other, 0, t, 0, 0, "selector"}, "sel" + std::to_string(t));
  for (int j = 1; j <= m; ++j)
    for (int t = 1; t <= m - 1; ++t) edge(clause[j], selector[t]);
  for (int j = 1; j <= m; ++j) edge(clause[j], bottom[n]);

  const int D = sizes.delay_part;
  std::vector<VertexId> part1(D + 1), part2(D + 1);
  for (int t = 1; t <= D; ++t)
    part1[t] = add({VertexRole::Kind::Delay, 1, t, 0, 0, ""}, "dlyI" + std::to_string(t));
  for (int t = 1; t <= D; ++t)
    part2[t] = add({VertexRole::Kind::Delay, 2, t, 0, 0, ""}, "dlyII" + std::to_string(t));
  for (int a = 1; a <= D; ++a)
    for (int c = 1; c <= D; ++c) edge(part1[a], part2[c]);
  for (int t = 1; t <= D; ++t) edge(part1[t], bottom[n - 1]);

  VertexId exit = add({VertexRole::Kind::Exit, 0, 0, 0, 0, ""}, "EXIT");
  edge(exit, bottom[n - 1]);
  for (int t = 1; t <= D; ++t) edge(exit, part2[t]);

  for (int j = 1; j <= m; ++j) {
    VertexId prev = exit;
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
      VertexId target = lit_positive(lit) ? right[i] : left[i];
      int len = (i % 2 == 1) ? sizes.left_linker : sizes.right_linker;
      for (int copy = 1; copy <= 2; ++copy) {
        std::string base = "c" + std::to_string(j) + (lit < 0 ? ".~x" : ".x") + std::to_string(i) +
                           "o" + std::to_string(k + 1) + (copy == 1 ? "a." : "b.");
        VertexId prev = clause[j];
        for (int s = 1; s <= len; ++s) {
          VertexId v = add({VertexRole::Kind::Linker, j, s, lit, copy, std::to_string(k + 1)},
                           base + std::to_string(s));
          edge(prev, v);
          prev = v;
        }
        edge(prev, target);
      }
    }
  }

  std::vector<VertexId> esc(sizes.escape + 1);
  for (int t = 1; t <= sizes.escape; ++t) {
    esc[t] = add({VertexRole::Kind::Escape, 0, t, 0, 0, ""}, "esc" + std::to_string(t));
    if (t > 1) edge(esc[t - 1], esc[t]);
  }
  for (int t = 1; t <= m - 1; ++t) edge(esc[1], selector[t]);

  GameGraph g(Orientation::Undirected, heights, edges);
  for (VertexId v = 0; v < g.vertex_count(); ++v) g.set_label(v, labels[v]);

  ReductionArtifact art;
  art.kind = ReductionKind::UPR;
  art.source_qbf = q;
  art.position = Position::partizan_start(
      std::move(g),
      Variant{Orientation::Undirected, Partisanship::Partizan, DeletionRule::Restricted, 1},
      top[1], top[2]);
  art.roles = std::move(roles);

  // A: odd-gadget tops/bottoms, even-gadget sides, Part II, odd connector
  // slots, clause vertices, odd escape slots, even linker slots.
  // B: the complements, Part I, EXIT, the selector vertices.
  Bipartition parts;
  auto side = [&](bool a, VertexId v) { (a ? parts.part_a : parts.part_b).push_back(v); };
  for (int i = 1; i <= 2; ++i) side(i % 2 == 1, top[i]);
  for (int i = 1; i <= n; ++i) {
    side(i % 2 == 1, bottom[i]);
    side(i % 2 == 0, left[i]);
    side(i % 2 == 0, right[i]);
  }
  for (int j = 1; j <= m; ++j) side(true, clause[j]);
  for (int t = 1; t <= m - 1; ++t) side(false, selector[t]);
  for (int t = 1; t <= D; ++t) {
    side(false, part1[t]);
    side(true, part2[t]);
  }
  side(false, exit);
  for (int t = 1; t <= sizes.escape; ++t) side(t % 2 == 1, esc[t]);
  for (VertexId v = 0; v < static_cast<VertexId>(art.roles.size()); ++v) {
    const VertexRole& r = art.roles[v];
    if (r.kind == VertexRole::Kind::ClauseConnector) side(r.slot % 2 == 1, v);
    else if (r.kind == VertexRole::Kind::Linker) side(r.slot % 2 == 0, v);
  }
  std::sort(parts.part_a.begin(), parts.part_a.end());
  std::sort(parts.part_b.begin(), parts.part_b.end());
  art.claimed_bipartition = std::move(parts);

  if (!validate_bipartition(art.position.graph, *art.claimed_bipartition))
    throw GraphError("internal: UPR bipartition failed validation");
  return art;
}

}  // namespace geolab
