#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace geolab {

using VertexId = int32_t;

enum class Orientation { Directed, Undirected };

enum class Direction { Successors, Predecessors, Either };

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Disjoint vertex sets covering all live vertices; no link joins two
// vertices of the same part.
struct Bipartition {
  std::vector<VertexId> part_a;
  std::vector<VertexId> part_b;

  bool contains_a(VertexId v) const;
  bool contains_b(VertexId v) const;
};

struct BipartiteCheck {
  std::optional<Bipartition> partition;
  std::vector<VertexId> odd_cycle;  // closed odd walk when not bipartite
  bool bipartite() const { return partition.has_value(); }
};

struct DegreeSummary {
  int max_in = 0;
  int max_out = 0;
  int max_total = 0;
};

// Vertices carry integer heights; height 0 means deleted. Ids stay stable
// across height changes. Adjacency is immutable after construction and
// shared between copies; only the height vector is per-instance.
class GameGraph {
 public:
  GameGraph() = default;
  GameGraph(Orientation o, std::vector<int> heights,
            const std::vector<std::pair<VertexId, VertexId>>& links);

  Orientation orientation() const { return topo_ ? topo_->orientation : Orientation::Undirected; }
  bool directed() const { return orientation() == Orientation::Directed; }

  int vertex_count() const { return static_cast<int>(heights_.size()); }
  int live_count() const;
  long long total_height() const;

  int height(VertexId v) const {
    check_vertex(v);
    return heights_[v];
  }
  bool live(VertexId v) const { return height(v) > 0; }

  void set_height(VertexId v, int h);
  void decrement_height(VertexId v);
  void increment_height(VertexId v);  // undo helper for search

  // Live vertices adjacent to v in the requested sense. Querying a deleted
  // vertex is a contract violation.
  std::vector<VertexId> neighbors(VertexId v, Direction dir = Direction::Either) const;

  // Raw adjacency including deleted endpoints, sorted by id.
  const std::vector<VertexId>& out_raw(VertexId v) const;
  const std::vector<VertexId>& in_raw(VertexId v) const;

  // Arcs (ordered) for directed graphs, canonical a<b edges for undirected.
  const std::vector<std::pair<VertexId, VertexId>>& links() const;

  bool has_link(VertexId a, VertexId b) const;  // arc a->b, or edge a~b

  BipartiteCheck check_bipartite() const;
  DegreeSummary max_degree() const;

  std::optional<std::string> label(VertexId v) const;
  void set_label(VertexId v, std::string name);
  std::string display_name(VertexId v) const;  // label or numeric id

  bool same_topology(const GameGraph& other) const { return topo_ == other.topo_; }

 private:
  struct Topology {
    Orientation orientation = Orientation::Undirected;
    std::vector<std::vector<VertexId>> out;  // undirected: full adjacency
    std::vector<std::vector<VertexId>> in;   // undirected: aliases `out`
    std::vector<std::pair<VertexId, VertexId>> links;
    std::vector<std::string> labels;  // empty string = unnamed
  };

  void check_vertex(VertexId v) const {
    if (v < 0 || v >= vertex_count()) throw GraphError("vertex id out of range: " + std::to_string(v));
  }

  std::shared_ptr<Topology> topo_;
  std::vector<int> heights_;
};

// True when `partition` is a valid bipartition of g's live vertices.
bool validate_bipartition(const GameGraph& g, const Bipartition& partition);

// True when `walk` is a closed odd walk along links of g (ignoring direction).
bool validate_odd_cycle(const GameGraph& g, const std::vector<VertexId>& walk);

}  // namespace geolab
