#include "geolab/graph.hpp"

#include <algorithm>
#include <set>

namespace geolab {

bool Bipartition::contains_a(VertexId v) const {
  return std::binary_search(part_a.begin(), part_a.end(), v);
}

bool Bipartition::contains_b(VertexId v) const {
  return std::binary_search(part_b.begin(), part_b.end(), v);
}

GameGraph::GameGraph(Orientation o, std::vector<int> heights,
                     const std::vector<std::pair<VertexId, VertexId>>& links) {
  const int n = static_cast<int>(heights.size());
  for (int h : heights)
    if (h < 0) throw GraphError("negative height");

  auto topo = std::make_shared<Topology>();
  topo->orientation = o;
  topo->out.resize(n);
  topo->in.resize(n);
  topo->labels.resize(n);

  std::set<std::pair<VertexId, VertexId>> seen;
  for (auto [a, b] : links) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw GraphError("link endpoint out of range");
    if (a == b) throw GraphError("self-loop rejected");
    auto key = (o == Orientation::Undirected && a > b) ? std::make_pair(b, a) : std::make_pair(a, b);
    if (!seen.insert(key).second) throw GraphError("duplicate arc/edge rejected");
    topo->links.push_back(key);
    if (o == Orientation::Directed) {
      topo->out[a].push_back(b);
      topo->in[b].push_back(a);
    } else {
      topo->out[a].push_back(b);
      topo->out[b].push_back(a);
      topo->in[a].push_back(b);
      topo->in[b].push_back(a);
    }
  }
  for (auto& v : topo->out) std::sort(v.begin(), v.end());
  for (auto& v : topo->in) std::sort(v.begin(), v.end());
  std::sort(topo->links.begin(), topo->links.end());

  topo_ = std::move(topo);
  heights_ = std::move(heights);
}

int GameGraph::live_count() const {
  int c = 0;
  for (int h : heights_)
    if (h > 0) ++c;
  return c;
}

long long GameGraph::total_height() const {
  long long t = 0;
  for (int h : heights_) t += h;
  return t;
}

void GameGraph::set_height(VertexId v, int h) {
  check_vertex(v);
  if (h < 0) throw GraphError("negative height");
  heights_[v] = h;
}

void GameGraph::decrement_height(VertexId v) {
  check_vertex(v);
  if (heights_[v] <= 0) throw GraphError("decrement of deleted vertex");
  --heights_[v];
}

void GameGraph::increment_height(VertexId v) {
  check_vertex(v);
  ++heights_[v];
}

std::vector<VertexId> GameGraph::neighbors(VertexId v, Direction dir) const {
  if (!live(v)) throw GraphError("neighbor query on deleted vertex " + std::to_string(v));
  std::vector<VertexId> result;
  auto add_live = [&](const std::vector<VertexId>& adj) {
    for (VertexId w : adj)
      if (heights_[w] > 0) result.push_back(w);
  };
  if (!directed() || dir == Direction::Successors) {
    add_live(topo_->out[v]);
  } else if (dir == Direction::Predecessors) {
    add_live(topo_->in[v]);
  } else {
    add_live(topo_->out[v]);
    add_live(topo_->in[v]);
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
  }
  return result;
}

const std::vector<VertexId>& GameGraph::out_raw(VertexId v) const {
  check_vertex(v);
  return topo_->out[v];
}

const std::vector<VertexId>& GameGraph::in_raw(VertexId v) const {
  check_vertex(v);
  return topo_->in[v];
}

const std::vector<std::pair<VertexId, VertexId>>& GameGraph::links() const {
  static const std::vector<std::pair<VertexId, VertexId>> empty;
  return topo_ ? topo_->links : empty;
}

bool GameGraph::has_link(VertexId a, VertexId b) const {
  check_vertex(a);
  check_vertex(b);
  const auto& adj = topo_->out[a];
  return std::binary_search(adj.begin(), adj.end(), b);
}

BipartiteCheck GameGraph::check_bipartite() const {
  const int n = vertex_count();
  std::vector<int> color(n, -1);
  std::vector<VertexId> parent(n, -1);
  std::vector<int> depth(n, 0);
  BipartiteCheck result;
  std::vector<VertexId> queue;

  auto undirected_live = [&](VertexId v) {
    std::vector<VertexId> adj = topo_->out[v];
    if (directed()) adj.insert(adj.end(), topo_->in[v].begin(), topo_->in[v].end());
    std::vector<VertexId> live_adj;
    for (VertexId w : adj)
      if (heights_[w] > 0) live_adj.push_back(w);
    std::sort(live_adj.begin(), live_adj.end());
    live_adj.erase(std::unique(live_adj.begin(), live_adj.end()), live_adj.end());
    return live_adj;
  };

  for (VertexId root = 0; root < n; ++root) {
    if (heights_[root] == 0 || color[root] != -1) continue;
    color[root] = 0;
    queue.assign(1, root);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      VertexId v = queue[qi];
      for (VertexId w : undirected_live(v)) {
        if (color[w] == -1) {
          color[w] = 1 - color[v];
          parent[w] = v;
          depth[w] = depth[v] + 1;
          queue.push_back(w);
        } else if (color[w] == color[v]) {
          // Conflict edge closes an odd walk through the BFS forest.
          std::vector<VertexId> pv, pw;
          VertexId a = v, b = w;
          while (depth[a] > depth[b]) { pv.push_back(a); a = parent[a]; }
          while (depth[b] > depth[a]) { pw.push_back(b); b = parent[b]; }
          while (a != b) {
            pv.push_back(a); a = parent[a];
            pw.push_back(b); b = parent[b];
          }
          pv.push_back(a);
          result.odd_cycle = pv;
          for (auto it = pw.rbegin(); it != pw.rend(); ++it) result.odd_cycle.push_back(*it);
          return result;
        }
      }
    }
  }

  Bipartition parts;
  for (VertexId v = 0; v < n; ++v) {
    if (heights_[v] == 0) continue;
    (color[v] == 0 ? parts.part_a : parts.part_b).push_back(v);
  }
  result.partition = std::move(parts);
  return result;
}

DegreeSummary GameGraph::max_degree() const {
  DegreeSummary d;
  for (VertexId v = 0; v < vertex_count(); ++v) {
    if (heights_[v] == 0) continue;
    int out = 0, in = 0;
    for (VertexId w : topo_->out[v])
      if (heights_[w] > 0) ++out;
    for (VertexId w : topo_->in[v])
      if (heights_[w] > 0) ++in;
    if (directed()) {
      d.max_out = std::max(d.max_out, out);
      d.max_in = std::max(d.max_in, in);
      d.max_total = std::max(d.max_total, out + in);
    } else {
      d.max_out = std::max(d.max_out, out);
      d.max_in = d.max_out;
      d.max_total = d.max_out;
    }
  }
  return d;
}

std::optional<std::string> GameGraph::label(VertexId v) const {
  check_vertex(v);
  const std::string& s = topo_->labels[v];
  if (s.empty()) return std::nullopt;
  return s;
}

void GameGraph::set_label(VertexId v, std::string name) {
  check_vertex(v);
  // Labels live in the shared topology; clone it if shared.
  if (topo_.use_count() > 1) topo_ = std::make_shared<Topology>(*topo_);
  topo_->labels[v] = std::move(name);
}

std::string GameGraph::display_name(VertexId v) const {
  auto l = label(v);
  return l ? *l : std::to_string(v);
}

bool validate_bipartition(const GameGraph& g, const Bipartition& partition) {
  std::vector<int> side(g.vertex_count(), -1);
  for (VertexId v : partition.part_a) {
    if (v < 0 || v >= g.vertex_count() || side[v] != -1) return false;
    side[v] = 0;
  }
  for (VertexId v : partition.part_b) {
    if (v < 0 || v >= g.vertex_count() || side[v] != -1) return false;
    side[v] = 1;
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (g.live(v) != (side[v] != -1)) return false;
  }
  for (auto [a, b] : g.links()) {
    if (!g.live(a) || !g.live(b)) continue;
    if (side[a] == side[b]) return false;
  }
  return true;
}

bool validate_odd_cycle(const GameGraph& g, const std::vector<VertexId>& walk) {
  if (walk.size() < 3 || walk.size() % 2 == 0) return false;
  for (size_t i = 0; i < walk.size(); ++i) {
    VertexId a = walk[i], b = walk[(i + 1) % walk.size()];
    if (!g.live(a)) return false;
    if (!g.has_link(a, b) && !g.has_link(b, a)) return false;
  }
  return true;
}

}  // namespace geolab
