#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geolab/matching.hpp"
#include "geolab/rng.hpp"
#include "geolab/verify.hpp"
#include "test_util.hpp"

using namespace geolab;
using namespace geolab::testutil;

namespace {

// All labeled undirected graphs on n vertices.
std::vector<GameGraph> all_ugraphs(int n) {
  std::vector<std::pair<VertexId, VertexId>> slots;
  for (VertexId a = 0; a < n; ++a)
    for (VertexId b = a + 1; b < n; ++b) slots.push_back({a, b});
  std::vector<GameGraph> out;
  for (uint64_t mask = 0; mask < (uint64_t{1} << slots.size()); ++mask) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (size_t k = 0; k < slots.size(); ++k)
      if (mask >> k & 1) edges.push_back(slots[k]);
    out.push_back(ugraph(n, edges));
  }
  return out;
}

bool is_valid_matching(const GameGraph& g, const Matching& m) {
  std::vector<int> deg(g.vertex_count(), 0);
  for (auto [a, b] : m.edges) {
    if (!g.has_link(a, b) && !g.has_link(b, a)) return false;
    if (!g.live(a) || !g.live(b)) return false;
    if (++deg[a] > 1 || ++deg[b] > 1) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("matching rejects directed input and stacked heights") {
  CHECK_THROWS_AS(maximum_matching(dgraph(2, {{0, 1}})), GraphError);
  CHECK_THROWS_AS(maximum_matching(ugraph(2, {{0, 1}}, {2, 1})), GraphError);
}

TEST_CASE("small fixtures") {
  CHECK(maximum_matching(ugraph(3, {{0, 1}, {1, 2}})).size() == 1);
  CHECK(maximum_matching(ugraph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}})).size() == 2);
  Position fig8 = fig8_position(DeletionRule::Restricted);
  CHECK(maximum_matching(fig8.graph).size() == 2);
  // Odd cycles exercise blossom contraction.
  CHECK(maximum_matching(ugraph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}})).size() == 2);
  CHECK(maximum_matching(ugraph(9, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}, {5, 3},
                                    {1, 6}, {6, 7}, {7, 8}, {8, 6}}))
            .size() == 4);
}

TEST_CASE("matching matches brute force exhaustively up to 6 vertices") {
  for (int n = 1; n <= 6; ++n) {
    for (const GameGraph& g : all_ugraphs(n)) {
      Matching m = maximum_matching(g);
      REQUIRE(is_valid_matching(g, m));
      REQUIRE(static_cast<int>(m.size()) == brute_matching_size(g));
    }
  }
}

TEST_CASE("matching matches brute force on random graphs up to 10 vertices") {
  Rng rng(23);
  for (int it = 0; it < 500; ++it) {
    GameGraph g = random_undirected_graph(10, rng);
    for (uint64_t seed = 0; seed < 3; ++seed) {
      Matching m = maximum_matching(g, seed);
      REQUIRE(is_valid_matching(g, m));
      REQUIRE(static_cast<int>(m.size()) == brute_matching_size(g));
    }
  }
}

TEST_CASE("matching ignores deleted vertices") {
  GameGraph g = ugraph(4, {{0, 1}, {1, 2}, {2, 3}}, {1, 1, 0, 1});
  CHECK(maximum_matching(g).size() == 1);
}

TEST_CASE("determinism per seed") {
  Rng rng(29);
  for (int it = 0; it < 50; ++it) {
    GameGraph g = random_undirected_graph(9, rng);
    CHECK(maximum_matching(g, it).edges == maximum_matching(g, it).edges);
  }
}

TEST_CASE("is_essential agrees with brute saturation") {
  for (int n = 1; n <= 5; ++n)
    for (const GameGraph& g : all_ugraphs(n))
      for (VertexId v = 0; v < n; ++v)
        REQUIRE(is_essential(g, v) == brute_essential(g, v));

  Rng rng(31);
  for (int it = 0; it < 300; ++it) {
    GameGraph g = random_undirected_graph(8, rng);
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      REQUIRE(is_essential(g, v) == brute_essential(g, v));
  }
}

TEST_CASE("fig8 essential vertices") {
  Position fig8 = fig8_position(DeletionRule::Restricted);
  CHECK(is_essential(fig8.graph, 3));         // u
  CHECK_FALSE(is_essential(fig8.graph, 0));   // v
  CHECK_FALSE(is_essential(ugraph(1, {}), 0));                      // isolated vertex
  CHECK_THROWS_AS(is_essential(ugraph(1, {}, {0}), 0), GraphError);  // deleted vertex
}

TEST_CASE("union_components") {
  // Identical matchings: shared edges form single-edge path components.
  Matching m;
  m.edges = {{0, 1}, {2, 3}};
  auto comps = union_components(m, m);
  REQUIRE(comps.size() == 2);
  for (const auto& c : comps) {
    CHECK(c.edge_count == 1);
    CHECK_FALSE(c.cycle);
    CHECK_FALSE(c.has_difference);
  }

  // The two perfect matchings of C4 union to one 4-cycle.
  Matching c4a, c4b;
  c4a.edges = {{0, 1}, {2, 3}};
  c4b.edges = {{0, 3}, {1, 2}};
  comps = union_components(c4a, c4b);
  REQUIRE(comps.size() == 1);
  CHECK(comps[0].cycle);
  CHECK(comps[0].edge_count == 4);
  CHECK(comps[0].has_difference);

  // Fig. 8 matchings {ut, vw} and {ut, vx}: the shared edge plus a 2-edge path.
  Matching f1, f2;
  f1.edges = {{3, 4}, {0, 2}};  // ut, vw
  f2.edges = {{3, 4}, {0, 1}};  // ut, vx
  comps = union_components(f1, f2);
  REQUIRE(comps.size() == 2);
  for (const auto& c : comps) {
    if (c.edge_count == 1) {
      CHECK(c.vertices == std::vector<VertexId>{3, 4});
      CHECK_FALSE(c.has_difference);
    } else {
      CHECK(c.edge_count == 2);
      CHECK_FALSE(c.cycle);
      CHECK(c.has_difference);
      CHECK(c.vertices == std::vector<VertexId>{0, 1, 2});
    }
  }
}

TEST_CASE("union of two maximum matchings: difference components are even") {
  Rng rng(37);
  for (int it = 0; it < 500; ++it) {
    GameGraph g = random_undirected_graph(12, rng);
    Matching m1 = maximum_matching(g, 1000 + it);
    Matching m2 = maximum_matching(g, 5000 + it);
    REQUIRE(m1.size() == m2.size());
    for (const auto& comp : union_components(m1, m2)) {
      if (!comp.has_difference) continue;
      CHECK(comp.edge_count % 2 == 0);
    }
  }
}
