#include <algorithm>

#include "geolab/reduction.hpp"

namespace geolab {

namespace {

struct DifBuilder {
  std::vector<int> heights;
  std::vector<std::pair<VertexId, VertexId>> arcs;
  std::vector<VertexRole> roles;
  std::vector<std::string> labels;

  VertexId add(VertexRole role, std::string label) {
    VertexId v = static_cast<VertexId>(heights.size());
    heights.push_back(1);
    roles.push_back(std::move(role));
    labels.push_back(std::move(label));
    return v;
  }
  void arc(VertexId a, VertexId b) { arcs.push_back({a, b}); }
};

}  // namespace

// Variable gadgets: odd index -> hexagon (top, two 2-vertex paths, joining
// bottom); even index -> diamond with a pendant (top, left, right, joining,
// pendant bottom). Clause gadgets: a clause vertex; per literal occurrence
// two literal vertices, routed through one extra vertex when the variable
// index is even. Vertex ids run gadget-major in this listing order.
ReductionArtifact tqbf_to_dif(const QbfInstance& q) {
  q.validate();
  const int n = q.num_vars;
  const int m = q.num_clauses();

  DifBuilder b;
  // Per-gadget slots, indexed by variable (1-based).
  std::vector<VertexId> top(n + 1), bottom(n + 1);
  std::vector<VertexId> left1(n + 1), left2(n + 1), right1(n + 1), right2(n + 1);  // odd
  std::vector<VertexId> left(n + 1), right(n + 1), joining(n + 1);                 // even

  for (int i = 1; i <= n; ++i) {
    std::string x = "x" + std::to_string(i);
    auto var = [&](const char* tag) { return VertexRole{VertexRole::Kind::Variable, i, 0, 0, 0, tag}; };
    top[i] = b.add(var("top"), x + ".top");
    if (i % 2 == 1) {
      left1[i] = b.add(var("left1"), x + ".l1");
      left2[i] = b.add(var("left2"), x + ".l2");
      right1[i] = b.add(var("right1"), x + ".r1");
      right2[i] = b.add(var("right2"), x + ".r2");
      bottom[i] = b.add(var("bottom"), x + ".bot");
      b.arc(top[i], left1[i]);
      b.arc(left1[i], left2[i]);
      b.arc(left2[i], bottom[i]);
      b.arc(top[i], right1[i]);
      b.arc(right1[i], right2[i]);
      b.arc(right2[i], bottom[i]);
    } else {
      left[i] = b.add(var("left"), x + ".l");
      right[i] = b.add(var("right"), x + ".r");
      joining[i] = b.add(var("joining"), x + ".join");
      bottom[i] = b.add(var("bottom"), x + ".bot");
      b.arc(top[i], left[i]);
      b.arc(top[i], right[i]);
      b.arc(left[i], joining[i]);
      b.arc(right[i], joining[i]);
      b.arc(joining[i], bottom[i]);
    }
  }

  std::vector<VertexId> clause(m + 1);
  std::vector<VertexId> odd_literals, even_literals, extras;
  for (int j = 1; j <= m; ++j) {
    std::string cj = "c" + std::to_string(j);
    clause[j] = b.add({VertexRole::Kind::Clause, j, 0, 0, 0, ""}, cj);
    for (int k = 0; k < 3; ++k) {
      Lit lit = q.clauses[j - 1][k];
      int i = lit_var(lit);
      // The second left-path vertex for a positive odd literal, second
      // right-path vertex for a negated odd literal; for even variables the
      // sides swap: positive -> right, negated -> left.
      VertexId target;
      if (i % 2 == 1) {
        target = lit_positive(lit) ? left2[i] : right2[i];
      } else {
        target = lit_positive(lit) ? right[i] : left[i];
      }
      std::string lname = cj + (lit < 0 ? ".~x" : ".x") + std::to_string(i) + "o" + std::to_string(k + 1);
      if (i % 2 == 1) {
        for (int copy = 1; copy <= 2; ++copy) {
          VertexId lv = b.add({VertexRole::Kind::Linker, j, k + 1, lit, copy, ""},
                              lname + (copy == 1 ? "a" : "b"));
          b.arc(clause[j], lv);
          b.arc(lv, target);
          odd_literals.push_back(lv);
        }
      } else {
        VertexId extra = b.add({VertexRole::Kind::Other, j, k + 1, lit, 0, "extra"}, lname + ".ex");
        b.arc(clause[j], extra);
        extras.push_back(extra);
        for (int copy = 1; copy <= 2; ++copy) {
          VertexId lv = b.add({VertexRole::Kind::Linker, j, k + 1, lit, copy, ""},
                              lname + (copy == 1 ? "a" : "b"));
          b.arc(extra, lv);
          b.arc(lv, target);
          even_literals.push_back(lv);
        }
      }
    }
  }

  for (int i = 1; i < n; ++i) b.arc(bottom[i], top[i + 1]);
  for (int j = 1; j <= m; ++j) b.arc(bottom[n], clause[j]);

  GameGraph g(Orientation::Directed, b.heights, b.arcs);
  for (VertexId v = 0; v < g.vertex_count(); ++v) g.set_label(v, b.labels[v]);

  ReductionArtifact art;
  art.kind = ReductionKind::DIF;
  art.source_qbf = q;
  art.position = Position::impartial_start(
      std::move(g), Variant{Orientation::Directed, Partisanship::Impartial, DeletionRule::Free, 1},
      top[1]);
  art.roles = std::move(b.roles);

  // Bipartition from the construction: A holds tops, odd second-path
  // vertices, even joining vertices, clause vertices and even-variable
  // literal vertices; B holds the rest.
  Bipartition parts;
  for (int i = 1; i <= n; ++i) {
    parts.part_a.push_back(top[i]);
    parts.part_b.push_back(bottom[i]);
    if (i % 2 == 1) {
      parts.part_a.push_back(left2[i]);
      parts.part_a.push_back(right2[i]);
      parts.part_b.push_back(left1[i]);
      parts.part_b.push_back(right1[i]);
    } else {
      parts.part_a.push_back(joining[i]);
      parts.part_b.push_back(left[i]);
      parts.part_b.push_back(right[i]);
    }
  }
  for (int j = 1; j <= m; ++j) parts.part_a.push_back(clause[j]);
  for (VertexId v : even_literals) parts.part_a.push_back(v);
  for (VertexId v : odd_literals) parts.part_b.push_back(v);
  for (VertexId v : extras) parts.part_b.push_back(v);
  std::sort(parts.part_a.begin(), parts.part_a.end());
  std::sort(parts.part_b.begin(), parts.part_b.end());
  art.claimed_bipartition = std::move(parts);

  if (!validate_bipartition(art.position.graph, *art.claimed_bipartition))
    throw GraphError("internal: DIF bipartition failed validation");
  return art;
}

}  // namespace geolab
