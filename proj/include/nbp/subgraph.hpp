#pragma once

#include <map>
#include <optional>

#include "nbp/graph.hpp"

namespace nbp {

using VertexMap = std::map<Vertex, Vertex>;

namespace detail {

// Pattern order: each next vertex has the most already-placed neighbors,
// then highest degree, then smallest id. Early adjacency checks prune hard.
inline std::vector<Vertex> match_order(const Graph& h) {
  std::vector<Vertex> order;
  std::set<Vertex> placed;
  auto remaining = h.vertices();
  while (order.size() < remaining.size()) {
    Vertex best = 0;
    int best_links = -1;
    std::size_t best_deg = 0;
    bool have = false;
    for (Vertex v : remaining) {
      if (placed.count(v)) continue;
      int links = 0;
      for (Vertex w : h.neighbors(v)) links += placed.count(w) ? 1 : 0;
      std::size_t deg = h.degree(v);
      if (!have || links > best_links || (links == best_links && deg > best_deg)) {
        best = v;
        best_links = links;
        best_deg = deg;
        have = true;
      }
    }
    order.push_back(best);
    placed.insert(best);
  }
  return order;
}

inline bool extend_match(const Graph& h, const Graph& g, const std::vector<Vertex>& order,
                         std::size_t depth, const std::vector<Vertex>& targets,
                         VertexMap& mapping, std::set<Vertex>& used) {
  if (depth == order.size()) return true;
  Vertex hv = order[depth];
  for (Vertex gv : targets) {
    if (used.count(gv) || g.degree(gv) < h.degree(hv)) continue;
    bool ok = true;
    for (Vertex hw : h.neighbors(hv)) {
      auto it = mapping.find(hw);
      if (it != mapping.end() && !g.adjacent(gv, it->second)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    mapping[hv] = gv;
    used.insert(gv);
    if (extend_match(h, g, order, depth + 1, targets, mapping, used)) return true;
    mapping.erase(hv);
    used.erase(gv);
  }
  return false;
}

}  // namespace detail

/// Injective, adjacency-preserving map V(h) -> V(g) (not necessarily
/// induced), or nothing.
inline std::optional<VertexMap> subgraph_match(const Graph& h, const Graph& g) {
  if (h.order() > g.order() || h.size() > g.size()) return std::nullopt;
  VertexMap mapping;
  std::set<Vertex> used;
  auto order = detail::match_order(h);
  auto targets = g.vertices();
  if (detail::extend_match(h, g, order, 0, targets, mapping, used)) return mapping;
  return std::nullopt;
}

}  // namespace nbp
