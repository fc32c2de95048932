#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "geolab/io.hpp"
#include "geolab/solver.hpp"
#include "geolab/verify.hpp"
#include "test_util.hpp"

using namespace geolab;
using namespace geolab::testutil;

namespace {

QbfInstance fig4_instance() {
  QbfInstance q;
  q.num_vars = 4;
  q.clauses = {{-1, 2, 3}, {1, 3, -4}};
  return q;
}

QbfInstance mk(int n, std::vector<Clause> clauses) {
  QbfInstance q;
  q.num_vars = n;
  q.clauses = std::move(clauses);
  return q;
}

}  // namespace

TEST_CASE("undirect_to_direct doubles edges") {
  Position p = Position::impartial_start(ugraph(2, {{0, 1}}), Variant::parse("UIR"), 0);
  ReductionArtifact art = undirect_to_direct(p);
  CHECK(art.position.graph.directed());
  CHECK(art.position.graph.links().size() == 2);
  CHECK(art.position.graph.has_link(0, 1));
  CHECK(art.position.graph.has_link(1, 0));
  CHECK(art.position.variant.name() == "DIR");
  CHECK(verify_structure(art).passed());

  Position empty = Position::impartial_start(ugraph(3, {}), Variant::parse("UIF"), 1);
  ReductionArtifact e = undirect_to_direct(empty);
  CHECK(e.position.graph.vertex_count() == 3);
  CHECK(e.position.graph.links().empty());

  Position dir = Position::impartial_start(dgraph(2, {{0, 1}}), kGeography, 0);
  CHECK_THROWS_AS(undirect_to_direct(dir), GraphError);
}

TEST_CASE("undirect_to_direct preserves winners") {
  Rng rng(73);
  for (int it = 0; it < 60; ++it) {
    Variant v{Orientation::Undirected,
              it % 2 ? Partisanship::Impartial : Partisanship::Partizan,
              it % 4 < 2 ? DeletionRule::Restricted : DeletionRule::Free, 1};
    GameGraph g = random_undirected_graph(6, rng);
    std::vector<VertexId> live;
    for (VertexId x = 0; x < g.vertex_count(); ++x) live.push_back(x);
    Position p;
    if (v.partisanship == Partisanship::Impartial) {
      p = Position::impartial_start(g, v, rng.pick(live));
    } else {
      if (live.size() < 2) continue;
      VertexId l = rng.pick(live), r = rng.pick(live);
      if (l == r) continue;
      p = Position::partizan_start(g, v, l, r);
    }
    ReductionArtifact art = undirect_to_direct(p);
    SolveResult a = solve_brute(p), b = solve_brute(art.position);
    REQUIRE(a.ok());
    REQUIRE(b.ok());
    CHECK(a.report.outcome.result == b.report.outcome.result);
  }
}

TEST_CASE("stack2_to_stack1 reproduces the worked example") {
  // Directed partizan path, heights 2,2,1,1,2, Left on the second vertex,
  // Right on the fourth.
  GameGraph g = dgraph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, {2, 2, 1, 1, 2});
  Position p = Position::partizan_start(
      std::move(g), Variant{Orientation::Directed, Partisanship::Partizan, DeletionRule::Restricted, 2},
      1, 3);
  ReductionArtifact art = stack2_to_stack1(p);
  CHECK(art.position.graph.vertex_count() == 8);
  CHECK(art.position.graph.links().size() == 9);
  CHECK(art.position.variant.max_height == 1);
  // Copies are allocated source-major: 0 -> {0,1}, 1 -> {2,3}, 2 -> {4},
  // 3 -> {5}, 4 -> {6,7}; tokens land on the high copies.
  CHECK(art.position.left_token == 3);
  CHECK(art.position.right_token == 5);
  CHECK(verify_structure(art).passed());

  // All-height-1 input is an isomorphic copy.
  GameGraph flat = dgraph(3, {{0, 1}, {1, 2}}, {1, 1, 1});
  Position fp = Position::impartial_start(std::move(flat), Variant::parse("DIR2"), 0);
  ReductionArtifact fa = stack2_to_stack1(fp);
  CHECK(fa.position.graph.vertex_count() == 3);
  CHECK(fa.position.graph.links().size() == 2);
  CHECK(fa.position.graph.has_link(0, 1));
  CHECK(fa.position.graph.has_link(1, 2));
}

TEST_CASE("stack2_to_stack1 preserves bipartiteness both ways") {
  Rng rng(79);
  for (int it = 0; it < 80; ++it) {
    GameGraph g = random_undirected_graph(6, rng);
    for (VertexId x = 0; x < g.vertex_count(); ++x)
      g.set_height(x, 1 + int(rng.below(2)));
    std::vector<VertexId> live;
    for (VertexId x = 0; x < g.vertex_count(); ++x)
      if (g.live(x)) live.push_back(x);
    Position p = Position::impartial_start(g, Variant::parse("UIR2"), rng.pick(live));
    ReductionArtifact art = stack2_to_stack1(p);
    bool src = p.graph.check_bipartite().bipartite();
    auto out = art.position.graph.check_bipartite();
    CHECK(src == out.bipartite());
    if (src) {
      REQUIRE(art.claimed_bipartition.has_value());
      CHECK(validate_bipartition(art.position.graph, *art.claimed_bipartition));
    } else {
      CHECK(validate_odd_cycle(art.position.graph, out.odd_cycle));
    }
  }
}

TEST_CASE("DIF artifact for the worked instance has 38 vertices") {
  ReductionArtifact art = tqbf_to_dif(fig4_instance());
  CHECK(art.position.graph.vertex_count() == 38);
  REQUIRE(art.claimed_bipartition.has_value());
  CHECK(validate_bipartition(art.position.graph, *art.claimed_bipartition));
  CHECK(verify_structure(art).passed());
  CHECK(art.position.variant.name() == "DIF");
  // Token starts on the top of the x1 gadget.
  CHECK(art.roles[art.position.token()].kind == VertexRole::Kind::Variable);
  CHECK(art.roles[art.position.token()].tag == "top");
  CHECK(art.roles[art.position.token()].index == 1);
}

TEST_CASE("DIF winner equals formula truth on small instances") {
  int idx = 0;
  for (const QbfInstance& q : exhaustive_qbf_n2m1()) {
    if (idx++ % 4 != 0) continue;  // spot sample; the acceptance suite runs all
    ReductionArtifact art = tqbf_to_dif(q);
    SolveResult r = solve_brute(art.position);
    REQUIRE(r.ok());
    CHECK((r.report.outcome.result == GameResult::LeftWins) == evaluate(q));
  }
}

TEST_CASE("DPF sizes and parity facts") {
  QbfInstance q = normalize_for(mk(2, {{1, 1, -2}}), ReductionTarget::DPF);
  REQUIRE(q.num_clauses() == 4);
  ReductionArtifact art = tqbf_to_dpf(q);
  DpfSizes sz = expected_dpf_sizes(2, 4);
  CHECK(sz.delay == 5);
  CHECK(sz.deletion == 5);
  CHECK(sz.escape == 3);
  CHECK(sz.linker_path == 1);
  CHECK(verify_structure(art).passed());
  CHECK_THROWS_AS(tqbf_to_dpf(mk(2, {{1, 1, -2}})), GraphError);

  // Tokens on the two chain tops.
  CHECK(art.roles[art.position.left_token].tag == "top");
  CHECK(art.roles[art.position.left_token].index == 1);
  CHECK(art.roles[art.position.right_token].tag == "top");
  CHECK(art.roles[art.position.right_token].index == 2);
}

TEST_CASE("DPF winner equals formula truth where solvable") {
  Rng rng(83);
  for (int it = 0; it < 6; ++it) {
    QbfInstance q = normalize_for(random_instance(2, 1 + int(rng.below(2)), rng.next()),
                                  ReductionTarget::DPF);
    ReductionArtifact art = tqbf_to_dpf(q);
    SolveOptions opts;
    opts.node_budget = 30'000'000;
    SolveResult r = solve_brute(art.position, opts);
    if (!r.ok()) continue;
    CHECK((r.report.outcome.result == GameResult::LeftWins) == evaluate(q));
  }
}

TEST_CASE("UPR sizes for n=4, m=2") {
  UprSizes sz = expected_upr_sizes(4, 2);
  CHECK(sz.delay_part == 9);
  CHECK(sz.connector == 8);
  CHECK(sz.left_linker == 6);
  CHECK(sz.right_linker == 11);
  CHECK(sz.escape == 37);

  QbfInstance q = normalize_for(mk(2, {{1, 1, -2}}), ReductionTarget::UPR);
  REQUIRE(q.num_vars == 4);
  ReductionArtifact art = tqbf_to_upr(q);
  CHECK(verify_structure(art).passed());
  REQUIRE(art.claimed_bipartition.has_value());
  CHECK(validate_bipartition(art.position.graph, *art.claimed_bipartition));
  CHECK_THROWS_AS(tqbf_to_upr(mk(2, {{1, 1, -2}})), GraphError);
}

TEST_CASE("UPF sizes, win path invariant and 13-cycle") {
  QbfInstance q = normalize_for(mk(2, {{1, 1, -2}}), ReductionTarget::UPF);
  REQUIRE(q.num_clauses() == 3);
  UpfSizes sz = expected_upf_sizes(2, 3);
  CHECK(sz.deletion_path == 6);
  CHECK(sz.delay == 12);
  CHECK(sz.connector == 3);
  CHECK(sz.linker == 6);
  CHECK(sz.escape == 31);

  ReductionArtifact art = tqbf_to_upf(q);
  int win = 0, others = 0;
  for (const auto& r : art.roles)
    (r.kind == VertexRole::Kind::WinPath ? win : others)++;
  CHECK(win == others + 2);
  CHECK(win == sz.win_path);
  CHECK_FALSE(art.position.graph.check_bipartite().bipartite());
  auto witness = upf_odd_cycle_witness(art);
  CHECK(witness.size() == 13);
  CHECK(validate_odd_cycle(art.position.graph, witness));
  CHECK(verify_structure(art).passed());
  CHECK_THROWS_AS(tqbf_to_upf(mk(2, {{1, 1, -2}})), GraphError);

  // Each clause deletion path hosts the other m-1 clauses on its eligible
  // interior slots.
  for (int p = 1; p <= 3; ++p) {
    int hosted = 0;
    for (VertexId v = 0; v < static_cast<VertexId>(art.roles.size()); ++v) {
      const auto& role = art.roles[v];
      if (role.kind != VertexRole::Kind::ClauseDeletion || role.index != p) continue;
      if (role.slot < 3 || role.slot > sz.deletion_path - 2) continue;
      for (VertexId w : art.position.graph.neighbors(v))
        if (art.roles[w].kind == VertexRole::Kind::Clause) ++hosted;
    }
    CHECK(hosted == 2);
  }
}

TEST_CASE("UPF structure check catches a shortened win path") {
  QbfInstance q = normalize_for(mk(2, {{1, 1, -2}}), ReductionTarget::UPF);
  ReductionArtifact art = tqbf_to_upf(q);
  // Fault injection: the generator "forgot" one win vertex.
  for (VertexId v = static_cast<VertexId>(art.roles.size()); v-- > 0;) {
    if (art.roles[v].kind == VertexRole::Kind::WinPath) {
      art.roles[v].kind = VertexRole::Kind::Other;
      art.roles[v].tag = "stray";
      break;
    }
  }
  CHECK_FALSE(verify_structure(art).passed());
}

TEST_CASE("geography_to_uir4 single vertex gives the lemma path") {
  Position p = Position::impartial_start(dgraph(1, {}), kGeography, 0);
  ReductionArtifact art = geography_to_uir4(p);
  CHECK(art.position.graph.vertex_count() == 5);
  std::vector<int> heights;
  for (VertexId v = 0; v < 5; ++v) heights.push_back(art.position.graph.height(v));
  CHECK(heights == std::vector<int>{2, 4, 3, 1, 1});
  CHECK(art.position.token() == 0);
  CHECK(art.position.variant.name() == "UIR4");
  SolveResult r = solve_brute(art.position);
  REQUIRE(r.ok());
  CHECK(r.report.outcome.result == GameResult::RightWins);
  CHECK(verify_structure(art).passed());
}

TEST_CASE("geography_to_uir4 worked example counts") {
  // Five vertices, eight arcs.
  GameGraph g = dgraph(5, {{0, 1}, {0, 3}, {1, 2}, {2, 4}, {3, 1}, {3, 4}, {4, 1}, {4, 0}});
  Position p = Position::impartial_start(std::move(g), kGeography, 0);
  ReductionArtifact art = geography_to_uir4(p);
  CHECK(art.position.graph.vertex_count() == 25);
  CHECK(art.position.graph.links().size() == 28);  // 20 intra-meta + 8 cross
  CHECK(verify_structure(art).passed());
  CHECK_THROWS_AS(geography_to_uir4(fig8_position(DeletionRule::Restricted)), GraphError);
}

TEST_CASE("geography_to_uir4 preserves winners on tiny digraphs") {
  Position two = Position::impartial_start(dgraph(2, {{0, 1}}), kGeography, 0);
  SolveResult src = solve_brute(two);
  ReductionArtifact art = geography_to_uir4(two);
  SolveResult dst = solve_brute(art.position);
  REQUIRE(src.ok());
  REQUIRE(dst.ok());
  CHECK(src.report.outcome.result == dst.report.outcome.result);
}

TEST_CASE("generators are deterministic") {
  QbfInstance q = normalize_for(mk(2, {{1, -2, 2}}), ReductionTarget::UPR);
  auto a = artifact_to_json(tqbf_to_upr(q)).dump();
  auto b = artifact_to_json(tqbf_to_upr(q)).dump();
  CHECK(a == b);
  auto c = artifact_to_json(tqbf_to_dif(mk(2, {{1, -2, 2}}))).dump();
  auto d = artifact_to_json(tqbf_to_dif(mk(2, {{1, -2, 2}}))).dump();
  CHECK(c == d);
}
