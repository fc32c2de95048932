#include "geolab/matching.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "geolab/rng.hpp"

namespace geolab {

VertexId Matching::mate(VertexId v) const {
  for (auto [a, b] : edges) {
    if (a == v) return b;
    if (b == v) return a;
  }
  return -1;
}

namespace {

// Edmonds blossom search, O(V^3). Vertex ids are the live vertices of the
// host graph; adjacency lists come pre-shuffled for tie-breaking.
class Blossom {
 public:
  Blossom(int n, std::vector<std::vector<int>> adj) : n_(n), adj_(std::move(adj)), match_(n, -1) {}

  void greedy_init(const std::vector<int>& order) {
    for (int v : order) {
      if (match_[v] != -1) continue;
      for (int w : adj_[v]) {
        if (match_[w] == -1) {
          match_[v] = w;
          match_[w] = v;
          break;
        }
      }
    }
  }

  void run(const std::vector<int>& order) {
    for (int v : order)
      if (match_[v] == -1) find_path(v);
  }

  const std::vector<int>& match() const { return match_; }

 private:
  int lca(int a, int b) {
    std::vector<bool> seen(n_, false);
    for (;;) {
      a = base_[a];
      seen[a] = true;
      if (match_[a] == -1) break;
      a = parent_[match_[a]];
    }
    for (;;) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(int v, int b, int child, std::vector<bool>& in_blossom) {
    while (base_[v] != b) {
      in_blossom[base_[v]] = true;
      in_blossom[base_[match_[v]]] = true;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  bool find_path(int root) {
    parent_.assign(n_, -1);
    base_.resize(n_);
    for (int i = 0; i < n_; ++i) base_[i] = i;
    std::vector<bool> used(n_, false);
    used[root] = true;
    std::vector<int> queue{root};

    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      for (int w : adj_[v]) {
        if (base_[v] == base_[w] || match_[v] == w) continue;
        if (w == root || (match_[w] != -1 && parent_[match_[w]] != -1)) {
          // Odd cycle found: contract the blossom.
          int b = lca(v, w);
          std::vector<bool> in_blossom(n_, false);
          mark_path(v, b, w, in_blossom);
          mark_path(w, b, v, in_blossom);
          for (int i = 0; i < n_; ++i) {
            if (in_blossom[base_[i]]) {
              base_[i] = b;
              if (!used[i]) {
                used[i] = true;
                queue.push_back(i);
              }
            }
          }
        } else if (parent_[w] == -1) {
          parent_[w] = v;
          if (match_[w] == -1) {
            augment(w);
            return true;
          }
          used[match_[w]] = true;
          queue.push_back(match_[w]);
        }
      }
    }
    return false;
  }

  void augment(int w) {
    while (w != -1) {
      int pv = parent_[w];
      int next = match_[pv];
      match_[w] = pv;
      match_[pv] = w;
      w = next;
    }
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_;
  std::vector<int> parent_, base_;
};

void check_matching_input(const GameGraph& g) {
  if (g.directed()) throw GraphError("matching requires an undirected graph");
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.height(v) > 1) throw GraphError("matching layer requires heights in {0,1}");
}

}  // namespace

Matching maximum_matching(const GameGraph& g, uint64_t seed) {
  check_matching_input(g);
  const int n = g.vertex_count();
  Rng rng(seed * 0x9e3779b97f4a7c15ULL + 0x6a09e667f3bcc909ULL);

  std::vector<std::vector<int>> adj(n);
  for (auto [a, b] : g.links()) {
    if (!g.live(a) || !g.live(b)) continue;
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& lst : adj) rng.shuffle(lst);

  std::vector<int> order;
  for (VertexId v = 0; v < n; ++v)
    if (g.live(v)) order.push_back(v);
  rng.shuffle(order);

  Blossom blossom(n, std::move(adj));
  blossom.greedy_init(order);
  blossom.run(order);

  Matching m;
  const auto& match = blossom.match();
  for (int v = 0; v < n; ++v)
    if (match[v] > v) m.edges.push_back({v, match[v]});
  std::sort(m.edges.begin(), m.edges.end());
  return m;
}

bool is_essential(const GameGraph& g, VertexId v, uint64_t seed) {
  check_matching_input(g);
  if (!g.live(v)) throw GraphError("is_essential on deleted vertex");
  size_t full = maximum_matching(g, seed).size();
  GameGraph without = g;
  without.set_height(v, 0);
  return maximum_matching(without, seed).size() < full;
}

std::vector<UnionComponent> union_components(const Matching& m1, const Matching& m2) {
  std::set<std::pair<VertexId, VertexId>> e1(m1.edges.begin(), m1.edges.end());
  std::set<std::pair<VertexId, VertexId>> e2(m2.edges.begin(), m2.edges.end());
  std::set<std::pair<VertexId, VertexId>> all(e1);
  all.insert(e2.begin(), e2.end());

  std::map<VertexId, std::vector<VertexId>> adj;
  std::map<VertexId, int> degree;
  for (auto [a, b] : all) {
    adj[a].push_back(b);
    adj[b].push_back(a);
    ++degree[a];
    ++degree[b];
  }

  std::set<VertexId> visited;
  std::vector<UnionComponent> result;
  for (const auto& [start, _] : adj) {
    if (visited.count(start)) continue;
    UnionComponent comp;
    std::vector<VertexId> stack{start};
    visited.insert(start);
    std::set<std::pair<VertexId, VertexId>> comp_edges;
    while (!stack.empty()) {
      VertexId v = stack.back();
      stack.pop_back();
      comp.vertices.push_back(v);
      for (VertexId w : adj[v]) {
        auto edge = std::minmax(v, w);
        comp_edges.insert({edge.first, edge.second});
        if (!visited.count(w)) {
          visited.insert(w);
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.vertices.begin(), comp.vertices.end());
    comp.edge_count = static_cast<int>(comp_edges.size());
    comp.cycle = true;
    for (VertexId v : comp.vertices)
      if (degree[v] != 2) comp.cycle = false;
    for (auto& e : comp_edges)
      if (e1.count(e) != e2.count(e)) comp.has_difference = true;
    result.push_back(std::move(comp));
  }
  return result;
}

}  // namespace geolab
