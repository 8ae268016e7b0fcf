#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nbp/graph.hpp"

namespace nbp {

enum class Color : std::uint8_t { I, F };

inline Color opposite(Color c) { return c == Color::I ? Color::F : Color::I; }
inline char to_char(Color c) { return c == Color::I ? 'I' : 'F'; }

/// Vertex -> {I, F}; partial while searching.
using IFColoring = std::map<Vertex, Color>;

struct Violation {
  enum class Kind { i_edge, f_cycle } kind;
  std::vector<Vertex> witness;  // the I-edge endpoints, or the F-cycle in order
};

namespace detail {

// F-cycle inside the F-colored subgraph, if any (iterative DFS with parents).
inline std::optional<std::vector<Vertex>> find_f_cycle(const Graph& g, const IFColoring& c) {
  std::map<Vertex, Vertex> parent;
  for (Vertex root : g.vertices()) {
    auto it = c.find(root);
    if (it == c.end() || it->second != Color::F || parent.count(root)) continue;
    parent[root] = root;
    std::vector<Vertex> stack{root};
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbors(v)) {
        auto cw = c.find(w);
        if (cw == c.end() || cw->second != Color::F || w == parent[v]) continue;
        if (parent.count(w)) {
          // Close the cycle through the lowest common ancestor.
          std::vector<Vertex> up_v{v};
          while (up_v.back() != parent[up_v.back()]) up_v.push_back(parent[up_v.back()]);
          std::vector<Vertex> up_w{w};
          while (up_w.back() != parent[up_w.back()]) up_w.push_back(parent[up_w.back()]);
          while (up_v.size() > 1 && up_w.size() > 1 &&
                 up_v[up_v.size() - 2] == up_w[up_w.size() - 2]) {
            up_v.pop_back();
            up_w.pop_back();
          }
          std::vector<Vertex> cycle(up_v.begin(), up_v.end());
          for (auto r = up_w.rbegin() + 1; r != up_w.rend(); ++r) cycle.push_back(*r);
          return cycle;
        }
        parent[w] = v;
        stack.push_back(w);
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Checks the I-set is independent and the F-set induces a forest. Only
/// vertices of g are inspected; `c` must color all of them.
inline std::optional<Violation> validate(const Graph& g, const IFColoring& c) {
  for (Vertex v : g.vertices()) {
    if (!c.count(v)) throw Error(ErrorKind::partial_coloring, "vertex " + std::to_string(v));
  }
  for (auto [u, v] : g.edges()) {
    if (c.at(u) == Color::I && c.at(v) == Color::I) {
      return Violation{Violation::Kind::i_edge, {u, v}};
    }
  }
  if (auto cycle = detail::find_f_cycle(g, c)) {
    return Violation{Violation::Kind::f_cycle, std::move(*cycle)};
  }
  return std::nullopt;
}

/// All-F path joining two vertices of `c`, every internal vertex off `c`.
/// Edges of the cycle itself are exempt; chords count. Breadth-first search
/// over F-components of V \ C.
inline std::optional<std::vector<Vertex>> find_violating_path(const Graph& g, const CycleRef& c,
                                                              const IFColoring& coloring) {
  std::set<Vertex> on_c(c.vertices.begin(), c.vertices.end());
  auto is_f = [&](Vertex v) {
    auto it = coloring.find(v);
    return it != coloring.end() && it->second == Color::F;
  };
  for (auto [a, b] : g.edges()) {
    if (on_c.count(a) && on_c.count(b) && is_f(a) && is_f(b) && !c.has_edge(a, b)) {
      return std::vector<Vertex>{a, b};
    }
  }
  std::set<Vertex> seen;
  for (Vertex s : g.vertices()) {
    if (on_c.count(s) || !is_f(s) || seen.count(s)) continue;
    // BFS the component, remembering the parent tree.
    std::map<Vertex, Vertex> parent{{s, s}};
    std::vector<Vertex> queue{s};
    seen.insert(s);
    std::map<Vertex, Vertex> anchor_via;  // boundary vertex -> component vertex touching it
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex v = queue[head];
      for (Vertex w : g.neighbors(v)) {
        if (!is_f(w)) continue;
        if (on_c.count(w)) {
          anchor_via.try_emplace(w, v);
        } else if (!seen.count(w)) {
          seen.insert(w);
          parent[w] = v;
          queue.push_back(w);
        }
      }
    }
    if (anchor_via.size() < 2) continue;
    auto first = anchor_via.begin();
    auto second = std::next(first);
    auto to_root = [&](Vertex v) {
      std::vector<Vertex> path{v};
      while (parent[path.back()] != path.back()) path.push_back(parent[path.back()]);
      return path;
    };
    auto pa = to_root(first->second);
    auto pb = to_root(second->second);
    while (pa.size() > 1 && pb.size() > 1 && pa[pa.size() - 2] == pb[pb.size() - 2]) {
      pa.pop_back();
      pb.pop_back();
    }
    std::vector<Vertex> path{first->first};
    path.insert(path.end(), pa.begin(), pa.end());
    for (auto r = pb.rbegin() + 1; r != pb.rend(); ++r) path.push_back(*r);
    path.push_back(second->first);
    return path;
  }
  return std::nullopt;
}

/// Exhaustive 2^n count of valid total IF-colorings. Test oracle; kept
/// independent of the backtracking solver.
inline std::uint64_t count_all(const Graph& g) {
  const auto vs = g.vertices();
  const std::size_t n = vs.size();
  if (n > 24) throw Error(ErrorKind::too_large, std::to_string(n) + " vertices (limit 24)");
  std::map<Vertex, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[vs[i]] = i;
  std::vector<std::uint32_t> adj(n, 0);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (auto [u, v] : g.edges()) {
    adj[index[u]] |= 1u << index[v];
    adj[index[v]] |= 1u << index[u];
    edges.emplace_back(index[u], index[v]);
  }
  std::uint64_t count = 0;
  std::vector<std::size_t> parent(n);
  for (std::uint64_t i_set = 0; i_set < (std::uint64_t{1} << n); ++i_set) {
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) {
      if ((i_set >> v & 1u) && (adj[v] & i_set)) ok = false;
    }
    if (ok) {
      for (std::size_t v = 0; v < n; ++v) parent[v] = v;
      auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (auto [a, b] : edges) {
        if ((i_set >> a & 1u) || (i_set >> b & 1u)) continue;
        auto ra = find(a);
        auto rb = find(b);
        if (ra == rb) {
          ok = false;
          break;
        }
        parent[ra] = rb;
      }
    }
    if (ok) ++count;
  }
  return count;
}

namespace detail {

/// Union-find with an undo log; no path compression so rollback is exact.
class RollbackUnionFind {
 public:
  explicit RollbackUnionFind(std::size_t n) : parent_(n), size_(n, 1), anchor_(n, -1) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }

  std::size_t find(std::size_t x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  int anchor(std::size_t x) const { return anchor_[find(x)]; }

  void set_anchor(std::size_t x, int a) {
    auto r = find(x);
    log_.push_back({r, r, anchor_[r], false});
    anchor_[r] = a;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    log_.push_back({b, a, anchor_[a], true});
    parent_[b] = a;
    size_[a] += size_[b];
    if (anchor_[a] < 0) anchor_[a] = anchor_[b];
  }

  std::size_t mark() const { return log_.size(); }

  void rollback(std::size_t mark) {
    while (log_.size() > mark) {
      Entry e = log_.back();
      log_.pop_back();
      if (e.merge) {
        parent_[e.child] = e.child;
        size_[e.root] -= size_[e.child];
      }
      anchor_[e.root] = e.previous_anchor;
    }
  }

 private:
  struct Entry {
    std::size_t child;
    std::size_t root;
    int previous_anchor;
    bool merge;
  };
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::vector<int> anchor_;
  std::vector<Entry> log_;
};

}  // namespace detail

/// Backtracking IF-coloring search.
///
/// Branches on the uncolored vertex with the most colored neighbors (ties to
/// the smallest id), trying F before I. F-acyclicity is kept in a rollback
/// union-find; in boundary mode a second union-find over off-boundary F
/// vertices records which boundary vertex each component touches, so an
/// F-path between two boundary vertices prunes immediately.
class IFSolver {
 public:
  IFSolver(const Graph& g, const IFColoring& partial, const CycleRef* boundary = nullptr)
      : vertices_(g.vertices()),
        n_(vertices_.size()),
        forest_(n_),
        anchors_(n_),
        color_(n_, kUncolored),
        on_boundary_(n_, false) {
    for (std::size_t i = 0; i < n_; ++i) index_[vertices_[i]] = i;
    adj_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (Vertex w : g.neighbors(vertices_[i])) adj_[i].push_back(index_.at(w));
    }
    if (boundary) {
      for (Vertex v : boundary->vertices) on_boundary_[index_.at(v)] = true;
      boundary_ = boundary;
    }
    for (const auto& [v, c] : partial) {
      auto it = index_.find(v);
      if (it == index_.end()) throw Error(ErrorKind::unknown_vertex, std::to_string(v));
      if (!assign(it->second, c)) {
        consistent_ = false;
        return;
      }
    }
  }

  /// False when the partial coloring already forces a violation.
  bool consistent() const { return consistent_; }

  std::optional<IFColoring> first() {
    std::optional<IFColoring> out;
    if (!consistent_) return out;
    search([&](const IFColoring& c) {
      out = c;
      return false;
    });
    return out;
  }

  /// Visits every valid total extension; stop by returning false.
  void enumerate(const std::function<bool(const IFColoring&)>& visit) {
    if (!consistent_) return;
    search(visit);
  }

 private:
  static constexpr std::uint8_t kUncolored = 2;

  bool exempt_edge(std::size_t a, std::size_t b) const {
    return boundary_ && boundary_->has_edge(vertices_[a], vertices_[b]);
  }

  // Applies a color; returns false (state possibly partially changed, caller
  // rolls back) when a constraint breaks.
  bool assign(std::size_t v, Color c) {
    color_[v] = static_cast<std::uint8_t>(c);
    if (c == Color::I) {
      for (std::size_t w : adj_[v]) {
        if (color_[w] == static_cast<std::uint8_t>(Color::I)) return false;
      }
      return true;
    }
    for (std::size_t w : adj_[v]) {
      if (color_[w] != static_cast<std::uint8_t>(Color::F)) continue;
      if (forest_.find(v) == forest_.find(w)) return false;
      forest_.unite(v, w);
    }
    if (!boundary_) return true;
    if (on_boundary_[v]) {
      for (std::size_t w : adj_[v]) {
        if (color_[w] != static_cast<std::uint8_t>(Color::F)) continue;
        if (on_boundary_[w]) {
          if (!exempt_edge(v, w)) return false;  // F chord
        } else if (!attach(w, static_cast<int>(v))) {
          return false;
        }
      }
      return true;
    }
    for (std::size_t w : adj_[v]) {
      if (color_[w] != static_cast<std::uint8_t>(Color::F)) continue;
      if (on_boundary_[w]) {
        if (!attach(v, static_cast<int>(w))) return false;
      } else {
        int a = anchors_.anchor(v);
        int b = anchors_.anchor(w);
        if (a >= 0 && b >= 0 && a != b) return false;
        anchors_.unite(v, w);
      }
    }
    return true;
  }

  bool attach(std::size_t off, int boundary_vertex) {
    int a = anchors_.anchor(off);
    if (a >= 0 && a != boundary_vertex) return false;
    if (a < 0) anchors_.set_anchor(off, boundary_vertex);
    return true;
  }

  std::optional<std::size_t> pick() const {
    std::optional<std::size_t> best;
    int best_links = -1;
    for (std::size_t v = 0; v < n_; ++v) {
      if (color_[v] != kUncolored) continue;
      int links = 0;
      for (std::size_t w : adj_[v]) links += color_[w] != kUncolored ? 1 : 0;
      if (links > best_links) {
        best = v;
        best_links = links;
      }
    }
    return best;
  }

  IFColoring snapshot() const {
    IFColoring out;
    for (std::size_t i = 0; i < n_; ++i) out[vertices_[i]] = static_cast<Color>(color_[i]);
    return out;
  }

  bool search(const std::function<bool(const IFColoring&)>& visit) {
    auto v = pick();
    if (!v) return visit(snapshot());
    for (Color c : {Color::F, Color::I}) {
      auto forest_mark = forest_.mark();
      auto anchor_mark = anchors_.mark();
      bool ok = assign(*v, c);
      bool keep_going = true;
      if (ok) keep_going = search(visit);
      forest_.rollback(forest_mark);
      anchors_.rollback(anchor_mark);
      color_[*v] = kUncolored;
      if (!keep_going) return false;
    }
    return true;
  }

  std::vector<Vertex> vertices_;
  std::size_t n_;
  std::map<Vertex, std::size_t> index_;
  std::vector<std::vector<std::size_t>> adj_;
  detail::RollbackUnionFind forest_;
  detail::RollbackUnionFind anchors_;
  std::vector<std::uint8_t> color_;
  std::vector<bool> on_boundary_;
  const CycleRef* boundary_ = nullptr;
  bool consistent_ = true;
};

/// A valid total extension of `partial`, or nothing when none exists.
inline std::optional<IFColoring> solve(const Graph& g, const IFColoring& partial = {}) {
  IFSolver solver(g, partial);
  if (!solver.consistent()) {
    throw Error(ErrorKind::inconsistent_partial, "partial coloring already violates");
  }
  return solver.first();
}

namespace detail {

inline void require_precoloring(const Graph& g, const CycleRef& c, const IFColoring& pre) {
  require_cycle(g, c);
  std::set<Vertex> on_c(c.vertices.begin(), c.vertices.end());
  for (const auto& [v, _] : pre) {
    if (!on_c.count(v)) {
      throw Error(ErrorKind::invalid_precoloring, "vertex " + std::to_string(v) + " is off the cycle");
    }
  }
  Graph sub = induced(g, on_c);
  for (Vertex v : c.vertices) {
    if (!pre.count(v)) {
      throw Error(ErrorKind::invalid_precoloring, "cycle vertex " + std::to_string(v) + " uncolored");
    }
  }
  if (validate(sub, pre)) {
    throw Error(ErrorKind::invalid_precoloring, "not an IF-coloring of the cycle's induced subgraph");
  }
}

}  // namespace detail

/// Extends a precoloring of V(c) to all of g with no violating F-path.
inline std::optional<IFColoring> superextends(const Graph& g, const CycleRef& c,
                                              const IFColoring& pre) {
  detail::require_precoloring(g, c, pre);
  IFSolver solver(g, pre, &c);
  return solver.first();
}

/// Every superextension of `pre` (visit returns false to stop).
inline void enumerate_superextensions(const Graph& g, const CycleRef& c, const IFColoring& pre,
                                      const std::function<bool(const IFColoring&)>& visit) {
  detail::require_precoloring(g, c, pre);
  IFSolver solver(g, pre, &c);
  solver.enumerate(visit);
}

/// Valid IF-colorings of G[V(c)], in binary order over c's vertex sequence
/// (bit set = I).
inline std::vector<IFColoring> cycle_precolorings(const Graph& g, const CycleRef& c) {
  require_cycle(g, c);
  if (c.length() > 24) throw Error(ErrorKind::too_large, "cycle longer than 24");
  Graph sub = induced(g, {c.vertices.begin(), c.vertices.end()});
  std::vector<IFColoring> out;
  const std::uint32_t limit = 1u << c.length();
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    IFColoring pre;
    for (std::size_t i = 0; i < c.length(); ++i) {
      pre[c.vertices[i]] = (mask >> i & 1u) ? Color::I : Color::F;
    }
    if (!validate(sub, pre)) out.push_back(std::move(pre));
  }
  return out;
}

struct SuperextensionReport {
  struct Verdict {
    IFColoring precoloring;
    std::optional<IFColoring> extension;  // nothing: exhaustive search failed
  };
  CycleRef cycle;
  std::vector<Verdict> verdicts;

  bool superextendable() const {
    for (const auto& v : verdicts) {
      if (!v.extension) return false;
    }
    return true;
  }

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& v : verdicts) n += v.extension ? 0 : 1;
    return n;
  }
};

inline SuperextensionReport check_superextendable(const Graph& g, const CycleRef& c) {
  if (c.length() > 14) throw Error(ErrorKind::too_large, "cycle longer than 14");
  SuperextensionReport report{c, {}};
  for (auto& pre : cycle_precolorings(g, c)) {
    auto ext = superextends(g, c, pre);
    report.verdicts.push_back({std::move(pre), std::move(ext)});
  }
  return report;
}

inline std::string format_coloring(const IFColoring& c) {
  std::string out;
  for (const auto& [v, col] : c) {
    out += std::to_string(v);
    out += ' ';
    out += to_char(col);
    out += '\n';
  }
  return out;
}

}  // namespace nbp
