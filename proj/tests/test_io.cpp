#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "geolab/io.hpp"
#include "geolab/rng.hpp"
#include "geolab/verify.hpp"
#include "test_util.hpp"

using namespace geolab;
using namespace geolab::testutil;

TEST_CASE("graph JSON round trip is identity") {
  Rng rng(101);
  for (int it = 0; it < 100; ++it) {
    GameGraph g = it % 2 ? random_digraph(7, rng) : random_undirected_graph(7, rng);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      g.set_height(v, static_cast<int>(rng.below(4)));
    if (it % 3 == 0 && g.vertex_count() > 0) g.set_label(0, "named");
    GameGraph back = graph_from_json(graph_to_json(g));
    CHECK(graph_to_json(back) == graph_to_json(g));
  }
}

TEST_CASE("position JSON round trip") {
  Position p = lemma_path_position();
  Position back = position_from_json(position_to_json(p));
  CHECK(position_to_json(back) == position_to_json(p));
  CHECK(encode_position(back) == encode_position(p));

  GameGraph g = ugraph(3, {{0, 1}, {1, 2}});
  Position pz = Position::partizan_start(std::move(g), Variant::parse("UPR"), 0, 2,
                                         PlayerSide::Right);
  Position pzb = position_from_json(position_to_json(pz));
  CHECK(pzb.left_token == 0);
  CHECK(pzb.right_token == 2);
  CHECK(pzb.to_move == PlayerSide::Right);
}

TEST_CASE("variant JSON and string forms") {
  Variant v = Variant::parse("UPF");
  CHECK(variant_from_json(variant_to_json(v)) == v);
  CHECK(variant_from_json(nlohmann::json("UIR4")).max_height == 4);
}

TEST_CASE("qbf JSON round trip") {
  QbfInstance q = parse_qdimacs("p cnf 4 2\ne 1 0\na 2 0\ne 3 0\na 4 0\n-1 2 3 0\n1 3 -4 0\n");
  QbfInstance back = qbf_from_json(qbf_to_json(q));
  CHECK(back == q);
}

TEST_CASE("artifact JSON round trip preserves solving behavior") {
  QbfInstance q;
  q.num_vars = 2;
  q.clauses = {{1, 1, -2}};
  ReductionArtifact art = tqbf_to_dif(q);
  ReductionArtifact back = artifact_from_json(artifact_to_json(art));
  CHECK(back.kind == ReductionKind::DIF);
  CHECK(back.roles.size() == art.roles.size());
  CHECK(artifact_to_json(back) == artifact_to_json(art));
  CHECK(verify_structure(back).passed());
  REQUIRE(back.source_qbf.has_value());
  CHECK(*back.source_qbf == q);

  ReductionArtifact uir4 = geography_to_uir4(
      Position::impartial_start(dgraph(2, {{0, 1}}), kGeography, 0));
  ReductionArtifact uir4_back = artifact_from_json(artifact_to_json(uir4));
  CHECK(artifact_to_json(uir4_back) == artifact_to_json(uir4));
  REQUIRE(uir4_back.source_position.has_value());
}

TEST_CASE("dot export carries names, heights and token markers") {
  Position p = lemma_path_position();
  std::string dot = to_dot(p);
  CHECK(dot.find("graph position {") != std::string::npos);
  CHECK(dot.find("v1:2 T") != std::string::npos);
  CHECK(dot.find("--") != std::string::npos);

  Position d = Position::impartial_start(dgraph(2, {{0, 1}}), kGeography, 0);
  std::string ddot = to_dot(d);
  CHECK(ddot.find("digraph") != std::string::npos);
  CHECK(ddot.find("->") != std::string::npos);

  QbfInstance q;
  q.num_vars = 2;
  q.clauses = {{1, 1, -2}};
  std::string adot = to_dot(tqbf_to_dif(q));
  CHECK(adot.find("fillcolor=gold") != std::string::npos);    // clause vertex
  CHECK(adot.find("fillcolor=lightblue") != std::string::npos);  // variable gadget
}

TEST_CASE("qdimacs text and json inputs agree") {
  std::string text = "p cnf 2 1\ne 1 0\na 2 0\n1 1 -2 0\n";
  QbfInstance q = parse_qdimacs(text);
  nlohmann::json j = qbf_to_json(q);
  CHECK(qbf_from_json(j) == q);
}
