#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <queue>

#include "nbp/graph.hpp"

namespace nbp {

namespace detail {

// Depth-limited enumeration of simple cycles whose minimum vertex is `start`.
// Each undirected cycle is reported once: the neighbor after `start` must be
// smaller than the neighbor before it.
inline bool cycles_from(const Graph& g, Vertex start, std::size_t max_len,
                        std::vector<Vertex>& path, std::set<Vertex>& on_path,
                        const std::function<bool(const std::vector<Vertex>&)>& visit) {
  Vertex tail = path.back();
  for (Vertex w : g.neighbors(tail)) {
    if (w == start && path.size() >= 3 && path[1] < tail) {
      if (!visit(path)) return false;
      continue;
    }
    if (w <= start || on_path.count(w) || path.size() >= max_len) continue;
    path.push_back(w);
    on_path.insert(w);
    bool keep_going = cycles_from(g, start, max_len, path, on_path, visit);
    on_path.erase(w);
    path.pop_back();
    if (!keep_going) return false;
  }
  return true;
}

}  // namespace detail

/// Visits every simple cycle of length at most `max_len` exactly once, in a
/// deterministic order. Stops early when `visit` returns false.
inline void for_each_cycle(const Graph& g, std::size_t max_len,
                           const std::function<bool(const CycleRef&)>& visit) {
  for (Vertex s : g.vertices()) {
    std::vector<Vertex> path{s};
    std::set<Vertex> on_path{s};
    bool keep_going = detail::cycles_from(
        g, s, max_len, path, on_path,
        [&](const std::vector<Vertex>& p) { return visit(CycleRef{p}); });
    if (!keep_going) return;
  }
}

/// Some cycle with lo <= length <= hi, or nothing.
inline std::optional<CycleRef> cycles_in_length_range(const Graph& g, int lo, int hi) {
  if (lo < 3 || hi < lo || hi > 14) {
    throw Error(ErrorKind::invalid_graph, "cycle length range must satisfy 3 <= lo <= hi <= 14");
  }
  std::optional<CycleRef> found;
  for_each_cycle(g, static_cast<std::size_t>(hi), [&](const CycleRef& c) {
    if (c.length() >= static_cast<std::size_t>(lo)) {
      found = c;
      return false;
    }
    return true;
  });
  return found;
}

/// Length of a shortest cycle; nullopt for forests.
inline std::optional<int> girth(const Graph& g) {
  int best = std::numeric_limits<int>::max();
  for (Vertex s : g.vertices()) {
    std::map<Vertex, int> dist{{s, 0}};
    std::map<Vertex, Vertex> parent{{s, s}};
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      for (Vertex w : g.neighbors(v)) {
        if (!dist.count(w)) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          q.push(w);
        } else if (parent[v] != w) {
          best = std::min(best, dist[v] + dist[w] + 1);
        }
      }
    }
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

}  // namespace nbp
