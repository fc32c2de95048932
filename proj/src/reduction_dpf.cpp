#include <algorithm>

#include "geolab/reduction.hpp"

namespace geolab {

DpfSizes expected_dpf_sizes(int /*n*/, int m) {
  return DpfSizes{2 * m - 3, 2 * m - 3, m - 1, m - 3};
}

// Diamond variable gadgets chained per parity (the bottom of x_{2i-1} is the
// top of x_{2i+1}, likewise for the even chain), a 2m-3 delay path feeding
// the clause vertices, a 2m-3 clause deletion path whose odd vertices
// succeed every clause, an m-1 escape path, and per literal occurrence a
// linker path of m-3 vertices ending in two parallel vertices that precede
// the right (positive) or left (negated) vertex of the variable's gadget.
ReductionArtifact tqbf_to_dpf(const QbfInstance& q) {
  q.validate();
  if (!satisfies_preconditions(q, ReductionTarget::DPF))
    throw GraphError("tqbf_to_dpf requires m >= 4 and m even; use normalize_for(DPF)");
  const int n = q.num_vars;
  const int m = q.num_clauses();
  const DpfSizes sizes = expected_dpf_sizes(n, m);

  std::vector<int> heights;
  std::vector<std::pair<VertexId, VertexId>> arcs;
  std::vector<VertexRole> roles;
  std::vector<std::string> labels;
  auto add = [&](VertexRole role, std::string label) {
    VertexId v = static_cast<VertexId>(heights.size());
    heights.push_back(1);
    roles.push_back(std::move(role));
    labels.push_back(std::move(label));
    return v;
  };
  auto arc = [&](VertexId a, VertexId b) { arcs.push_back({a, b}); };

  std::vector<VertexId> top(n + 1), left(n + 1), right(n + 1), bottom(n + 1);
  for (int i = 1; i <= n; ++i) {
    std::string x = "x" + std::to_string(i);
    auto var = [&](const char* tag) { return VertexRole{VertexRole::Kind::Variable, i, 0, 0, 0, tag}; };
    top[i] = (i <= 2) ? add(var("top"), x + ".top") : bottom[i - 2];
    left[i] = add(var("left"), x + ".l");
    right[i] = add(var("right"), x + ".r");
    bottom[i] = add(var("bottom"), x + ".bot");
    arc(top[i], left[i]);
    arc(top[i], right[i]);
    arc(left[i], bottom[i]);
    arc(right[i], bottom[i]);
  }

  std::vector<VertexId> clause(m + 1);
  for (int j = 1; j <= m; ++j)
    clause[j] = add({VertexRole::Kind::Clause, j, 0, 0, 0, ""}, "c" + std::to_string(j));

  std::vector<VertexId> delay(sizes.delay + 1);
  for (int t = 1; t <= sizes.delay; ++t) {
    delay[t] = add({VertexRole::Kind::Delay, 0, t, 0, 0, ""}, "dly" + std::to_string(t));
    if (t > 1) arc(delay[t - 1], delay[t]);
  }
  arc(bottom[n - 1], delay[1]);
  for (int j = 1; j <= m; ++j) arc(delay[sizes.delay], clause[j]);

  std::vector<VertexId> del(sizes.deletion + 1);
  for (int t = 1; t <= sizes.deletion; ++t) {
    del[t] = add({VertexRole::Kind::ClauseDeletion, 0, t, 0, 0, ""}, "dlt" + std::to_string(t));
    if (t > 1) arc(del[t - 1], del[t]);
    if (t % 2 == 1)
      for (int j = 1; j <= m; ++j) arc(clause[j], del[t]);
  }
  arc(bottom[n], del[1]);

  std::vector<VertexId> esc(sizes.escape + 1);
  for (int t = 1; t <= sizes.escape; ++t) {
    esc[t] = add({VertexRole::Kind::Escape, 0, t, 0, 0, ""}, "esc" + std::to_string(t));
    if (t > 1) arc(esc[t - 1], esc[t]);
  }
  arc(del[sizes.deletion], esc[1]);

  for (int j = 1; j <= m; ++j) {
    for (int k = 0; k < 3; ++k) {
      Lit lit = q.clauses[j - 1][k];
      int i = lit_var(lit);
      VertexId target = lit_positive(lit) ? right[i] : left[i];
      std::string base = "c" + std::to_string(j) + (lit < 0 ? ".~x" : ".x") + std::to_string(i) +
                         "o" + std::to_string(k + 1) + ".";
      VertexId prev = clause[j];
      for (int s = 1; s <= sizes.linker_path; ++s) {
        VertexId v = add({VertexRole::Kind::Linker, j, s, lit, k + 1, ""}, base + std::to_string(s));
        arc(prev, v);
        prev = v;
      }
      VertexId pa = add({VertexRole::Kind::Linker, j, sizes.linker_path + 1, lit, k + 1, "par"},
                        base + "pa");
      VertexId pb = add({VertexRole::Kind::Linker, j, sizes.linker_path + 2, lit, k + 1, "par"},
                        base + "pb");
      arc(prev, pa);
      arc(prev, pb);
      arc(pa, target);
      arc(pb, target);
    }
  }

  GameGraph g(Orientation::Directed, heights, arcs);
  for (VertexId v = 0; v < g.vertex_count(); ++v) g.set_label(v, labels[v]);

  ReductionArtifact art;
  art.kind = ReductionKind::DPF;
  art.source_qbf = q;
  art.position = Position::partizan_start(
      std::move(g), Variant{Orientation::Directed, Partisanship::Partizan, DeletionRule::Free, 1},
      top[1], top[2]);
  art.roles = std::move(roles);

  // A: tops/bottoms, even delay, even deletion, clause vertices, the two
  // parallel linker vertices, even linker-path slots, odd escape.
  // B: the rest.
  Bipartition parts;
  auto side = [&](bool a, VertexId v) { (a ? parts.part_a : parts.part_b).push_back(v); };
  for (int i = 1; i <= 2; ++i) side(true, top[i]);
  for (int i = 1; i <= n; ++i) {
    side(true, bottom[i]);
    side(false, left[i]);
    side(false, right[i]);
  }
  for (int j = 1; j <= m; ++j) side(true, clause[j]);
  for (int t = 1; t <= sizes.delay; ++t) side(t % 2 == 0, delay[t]);
  for (int t = 1; t <= sizes.deletion; ++t) side(t % 2 == 0, del[t]);
  for (int t = 1; t <= sizes.escape; ++t) side(t % 2 == 1, esc[t]);
  for (VertexId v = 0; v < static_cast<VertexId>(art.roles.size()); ++v) {
    const VertexRole& r = art.roles[v];
    if (r.kind != VertexRole::Kind::Linker) continue;
    if (r.tag == "par") side(true, v);
    else side(r.slot % 2 == 0, v);
  }
  std::sort(parts.part_a.begin(), parts.part_a.end());
  std::sort(parts.part_b.begin(), parts.part_b.end());
  art.claimed_bipartition = std::move(parts);

  if (!validate_bipartition(art.position.graph, *art.claimed_bipartition))
    throw GraphError("internal: DPF bipartition failed validation");
  return art;
}

}  // namespace geolab
