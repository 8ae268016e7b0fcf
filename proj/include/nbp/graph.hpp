#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nbp/error.hpp"

namespace nbp {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph over opaque integer ids. Neighbor sequences keep
/// insertion order; `vertices()` and `edges()` are sorted so every consumer
/// iterates deterministically.
class Graph {
 public:
  Graph() = default;

  void add_vertex(Vertex v) { adj_.try_emplace(v); }

  void add_edge(Vertex u, Vertex v) {
    if (u == v) {
      throw Error(ErrorKind::invalid_graph, "self-loop at " + std::to_string(u));
    }
    add_vertex(u);
    add_vertex(v);
    if (adjacent(u, v)) {
      throw Error(ErrorKind::edge_exists,
                  "edge " + std::to_string(u) + "-" + std::to_string(v));
    }
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    ++edge_count_;
  }

  bool has_vertex(Vertex v) const { return adj_.count(v) != 0; }

  bool adjacent(Vertex u, Vertex v) const {
    auto it = adj_.find(u);
    if (it == adj_.end()) return false;
    return std::find(it->second.begin(), it->second.end(), v) != it->second.end();
  }

  const std::vector<Vertex>& neighbors(Vertex v) const {
    auto it = adj_.find(v);
    if (it == adj_.end()) {
      throw Error(ErrorKind::unknown_vertex, std::to_string(v));
    }
    return it->second;
  }

  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  std::size_t order() const { return adj_.size(); }
  std::size_t size() const { return edge_count_; }

  std::vector<Vertex> vertices() const {
    std::vector<Vertex> out;
    out.reserve(adj_.size());
    for (const auto& [v, _] : adj_) out.push_back(v);
    return out;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (const auto& [u, nbrs] : adj_) {
      for (Vertex v : nbrs) {
        if (u < v) out.emplace_back(u, v);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Adjacency as sorted neighbor sets; equality of two graphs in the
  /// mathematical sense.
  std::map<Vertex, std::set<Vertex>> adjacency_sets() const {
    std::map<Vertex, std::set<Vertex>> out;
    for (const auto& [v, nbrs] : adj_) out[v] = {nbrs.begin(), nbrs.end()};
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.adjacency_sets() == b.adjacency_sets();
  }

  static Graph from_edges(std::initializer_list<Edge> edges) {
    return from_edges(std::span<const Edge>(edges.begin(), edges.size()));
  }

  static Graph from_edges(std::span<const Edge> edges,
                          std::span<const Vertex> isolated = {}) {
    Graph g;
    for (Vertex v : isolated) g.add_vertex(v);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
  }

 private:
  std::map<Vertex, std::vector<Vertex>> adj_;
  std::size_t edge_count_ = 0;
};

/// A cycle given as its cyclic vertex sequence.
struct CycleRef {
  std::vector<Vertex> vertices;

  std::size_t length() const { return vertices.size(); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
      Vertex a = vertices[i];
      Vertex b = vertices[(i + 1) % vertices.size()];
      out.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool contains(Vertex v) const {
    return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
  }

  bool has_edge(Vertex a, Vertex b) const {
    const std::size_t n = vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
      Vertex x = vertices[i];
      Vertex y = vertices[(i + 1) % n];
      if ((x == a && y == b) || (x == b && y == a)) return true;
    }
    return false;
  }
};

inline bool is_cycle(const Graph& g, const CycleRef& c) {
  const auto& vs = c.vertices;
  if (vs.size() < 3) return false;
  std::set<Vertex> seen(vs.begin(), vs.end());
  if (seen.size() != vs.size()) return false;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!g.has_vertex(vs[i])) return false;
    if (!g.adjacent(vs[i], vs[(i + 1) % vs.size()])) return false;
  }
  return true;
}

inline void require_cycle(const Graph& g, const CycleRef& c) {
  if (!is_cycle(g, c)) {
    std::string text;
    for (Vertex v : c.vertices) text += (text.empty() ? "" : ",") + std::to_string(v);
    throw Error(ErrorKind::not_a_cycle, "[" + text + "]");
  }
}

/// Induced subgraph on `keep`.
inline Graph induced(const Graph& g, const std::set<Vertex>& keep) {
  Graph out;
  for (Vertex v : keep) {
    if (g.has_vertex(v)) out.add_vertex(v);
  }
  for (auto [u, v] : g.edges()) {
    if (keep.count(u) && keep.count(v)) out.add_edge(u, v);
  }
  return out;
}

/// G·{u,v}: merge v into u. The merged vertex keeps id `u`; parallel edges
/// collapse.
inline Graph identify(const Graph& g, Vertex u, Vertex v) {
  if (!g.has_vertex(u)) throw Error(ErrorKind::unknown_vertex, std::to_string(u));
  if (!g.has_vertex(v)) throw Error(ErrorKind::unknown_vertex, std::to_string(v));
  if (u == v) {
    throw Error(ErrorKind::adjacent_identification,
                "cannot identify " + std::to_string(u) + " with itself");
  }
  if (g.adjacent(u, v)) {
    throw Error(ErrorKind::adjacent_identification,
                std::to_string(u) + " and " + std::to_string(v) + " are adjacent");
  }
  Graph out;
  for (Vertex w : g.vertices()) {
    if (w != v) out.add_vertex(w);
  }
  for (auto [a, b] : g.edges()) {
    Vertex x = (a == v) ? u : a;
    Vertex y = (b == v) ? u : b;
    if (!out.adjacent(x, y)) out.add_edge(x, y);
  }
  return out;
}

/// Deletes `deletions`, then adds `added` between surviving non-adjacent
/// vertices.
inline Graph edit(const Graph& g, const std::set<Vertex>& deletions,
                  std::span<const Edge> added) {
  for (Vertex d : deletions) {
    if (!g.has_vertex(d)) throw Error(ErrorKind::unknown_vertex, std::to_string(d));
  }
  Graph out;
  for (Vertex w : g.vertices()) {
    if (!deletions.count(w)) out.add_vertex(w);
  }
  for (auto [a, b] : g.edges()) {
    if (!deletions.count(a) && !deletions.count(b)) out.add_edge(a, b);
  }
  for (auto [a, b] : added) {
    for (Vertex x : {a, b}) {
      if (deletions.count(x)) {
        throw Error(ErrorKind::endpoint_deleted, std::to_string(x));
      }
      if (!out.has_vertex(x)) throw Error(ErrorKind::unknown_vertex, std::to_string(x));
    }
    if (a == b) throw Error(ErrorKind::invalid_graph, "added loop at " + std::to_string(a));
    if (out.adjacent(a, b)) {
      throw Error(ErrorKind::edge_exists, std::to_string(a) + "-" + std::to_string(b));
    }
    out.add_edge(a, b);
  }
  return out;
}

inline bool is_connected(const Graph& g) {
  auto vs = g.vertices();
  if (vs.empty()) return true;
  std::set<Vertex> seen{vs.front()};
  std::queue<Vertex> q;
  q.push(vs.front());
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    for (Vertex w : g.neighbors(v)) {
      if (seen.insert(w).second) q.push(w);
    }
  }
  return seen.size() == vs.size();
}

/// Cut vertices via iterative lowpoint DFS.
inline std::vector<Vertex> articulation_points(const Graph& g) {
  std::map<Vertex, int> disc;
  std::map<Vertex, int> low;
  std::set<Vertex> cuts;
  int timer = 0;
  for (Vertex root : g.vertices()) {
    if (disc.count(root)) continue;
    struct Frame {
      Vertex v;
      Vertex parent;
      std::size_t next;
    };
    std::vector<Frame> stack{{root, root, 0}};
    disc[root] = low[root] = timer++;
    int root_children = 0;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& nbrs = g.neighbors(f.v);
      if (f.next < nbrs.size()) {
        Vertex w = nbrs[f.next++];
        if (!disc.count(w)) {
          disc[w] = low[w] = timer++;
          if (f.v == root) ++root_children;
          stack.push_back({w, f.v, 0});
        } else if (w != f.parent) {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        Vertex v = f.v;
        Vertex p = f.parent;
        stack.pop_back();
        if (!stack.empty()) {
          low[p] = std::min(low[p], low[v]);
          if (p != root && low[v] >= disc[p]) cuts.insert(p);
        }
      }
    }
    if (root_children > 1) cuts.insert(root);
  }
  return {cuts.begin(), cuts.end()};
}

inline bool is_biconnected(const Graph& g) {
  return g.order() >= 3 && is_connected(g) && articulation_points(g).empty();
}

}  // namespace nbp
