#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "geolab/graph.hpp"

namespace geolab {

// Set of disjoint edges over live vertices, stored as canonical a<b pairs.
struct Matching {
  std::vector<std::pair<VertexId, VertexId>> edges;  // sorted

  size_t size() const { return edges.size(); }
  // Live vertex matched to v, or -1.
  VertexId mate(VertexId v) const;
  bool saturates(VertexId v) const { return mate(v) != -1; }
};

// Maximum-cardinality matching on a general undirected graph (blossom
// augmenting search). The seed varies tie-breaking, and with it which of
// the maximum matchings is returned; the result is deterministic per
// (graph, seed). Heights above 1 are rejected: the matching layer ignores
// stacking. Directed input is rejected.
Matching maximum_matching(const GameGraph& g, uint64_t seed = 0);

// True iff v is saturated by every maximum matching, decided by comparing
// |MM(g)| with |MM(g - v)|.
bool is_essential(const GameGraph& g, VertexId v, uint64_t seed = 0);

struct UnionComponent {
  std::vector<VertexId> vertices;
  int edge_count = 0;        // distinct edges (duplicates collapsed)
  bool cycle = false;        // path otherwise
  bool has_difference = false;  // contains an edge of the symmetric difference
};

// Components of the de-duplicated union of two matchings of one graph.
std::vector<UnionComponent> union_components(const Matching& m1, const Matching& m2);

}  // namespace geolab
