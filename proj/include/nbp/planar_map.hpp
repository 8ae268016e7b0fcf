#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nbp/graph.hpp"

namespace nbp {

/// Cyclic order of neighbors around each vertex.
using Rotation = std::map<Vertex, std::vector<Vertex>>;

struct Dart {
  Vertex tail;
  Vertex head;
  friend auto operator<=>(const Dart&, const Dart&) = default;
};

struct Face {
  int id = 0;
  std::vector<Dart> darts;  // boundary walk, darts[i].head == darts[i+1].tail

  std::size_t degree() const { return darts.size(); }

  std::vector<Vertex> walk() const {
    std::vector<Vertex> out;
    out.reserve(darts.size());
    for (const Dart& d : darts) out.push_back(d.tail);
    return out;
  }

  bool contains(Vertex v) const {
    for (const Dart& d : darts) {
      if (d.tail == v) return true;
    }
    return false;
  }
};

/// Face of `face` at one visit of `vertex`: the walk arrives from `from` and
/// leaves towards `to`.
struct Corner {
  int face;
  Vertex from;
  Vertex vertex;
  Vertex to;
};

struct Sides {
  bool separating = false;
  std::vector<Vertex> inside;
  std::vector<Vertex> outside;
};

/// A connected simple graph with a rotation system describing a sphere
/// embedding, its traced faces and one designated outer face.
///
/// Face tracing: the successor of dart (u,v) is (v,w) with w the cyclic
/// successor of u in the rotation at v.
class PlanarMap {
 public:
  static PlanarMap build(const Rotation& rotation, Dart outer) {
    PlanarMap m;
    m.rotation_ = rotation;
    m.graph_ = graph_from_rotation(rotation);
    if (m.graph_.size() == 0) {
      throw Error(ErrorKind::invalid_rotation, "a map needs at least one edge");
    }
    if (!is_connected(m.graph_)) {
      throw Error(ErrorKind::disconnected, "rotation graph is disconnected");
    }
    m.trace_faces();
    const long long euler = static_cast<long long>(m.graph_.order()) -
                            static_cast<long long>(m.graph_.size()) +
                            static_cast<long long>(m.faces_.size());
    if (euler != 2) {
      throw Error(ErrorKind::euler_violation,
                  "V-E+F = " + std::to_string(euler) + ", expected 2");
    }
    auto it = m.dart_face_.find(outer);
    if (it == m.dart_face_.end()) {
      throw Error(ErrorKind::invalid_rotation, "outer dart " + std::to_string(outer.tail) +
                                                   "->" + std::to_string(outer.head) +
                                                   " is not an edge");
    }
    m.outer_ = it->second;
    return m;
  }

  const Graph& graph() const { return graph_; }
  const Rotation& rotation() const { return rotation_; }
  const std::vector<Vertex>& rotation(Vertex v) const {
    auto it = rotation_.find(v);
    if (it == rotation_.end()) throw Error(ErrorKind::unknown_vertex, std::to_string(v));
    return it->second;
  }

  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(int id) const { return faces_.at(static_cast<std::size_t>(id)); }
  int outer_face() const { return outer_; }
  bool is_outer(int face_id) const { return face_id == outer_; }

  int face_of(Dart d) const {
    auto it = dart_face_.find(d);
    if (it == dart_face_.end()) {
      throw Error(ErrorKind::unknown_vertex, "no dart " + std::to_string(d.tail) + "->" +
                                                 std::to_string(d.head));
    }
    return it->second;
  }

  /// Cyclic successor of `u` in the rotation at `v`.
  Vertex successor(Vertex v, Vertex u) const {
    const auto& rot = rotation(v);
    for (std::size_t i = 0; i < rot.size(); ++i) {
      if (rot[i] == u) return rot[(i + 1) % rot.size()];
    }
    throw Error(ErrorKind::unknown_vertex, std::to_string(u) + " not around " + std::to_string(v));
  }

  /// Corners at v in rotation order: corner i lies between rot[i] and rot[i+1].
  std::vector<Corner> corners(Vertex v) const {
    std::vector<Corner> out;
    const auto& rot = rotation(v);
    for (Vertex u : rot) {
      // The walk arriving along (u,v) leaves along (v, successor(v,u)).
      out.push_back({face_of({u, v}), u, v, successor(v, u)});
    }
    return out;
  }

  /// Distinct faces incident with v, in rotation order of first occurrence.
  std::vector<int> faces_at(Vertex v) const {
    std::vector<int> out;
    for (const Corner& c : corners(v)) {
      if (std::find(out.begin(), out.end(), c.face) == out.end()) out.push_back(c.face);
    }
    return out;
  }

  /// The face on the other side of edge {a,b} from face f; nothing when both
  /// sides of the edge belong to f or the edge is not on f.
  std::optional<int> across(int f, Vertex a, Vertex b) const {
    int ab = face_of({a, b});
    int ba = face_of({b, a});
    if (ab == f && ba != f) return ba;
    if (ba == f && ab != f) return ab;
    return std::nullopt;
  }

  /// True when faces f and g share at least one edge.
  bool share_edge(int f, int g) const {
    if (f == g) return false;
    for (const Dart& d : face(f).darts) {
      if (face_of({d.head, d.tail}) == g) return true;
    }
    return false;
  }

  /// The boundary of face f as a cycle, when its walk visits no vertex twice.
  std::optional<CycleRef> boundary_cycle(int f) const {
    auto walk = face(f).walk();
    std::set<Vertex> distinct(walk.begin(), walk.end());
    if (walk.size() < 3 || distinct.size() != walk.size()) return std::nullopt;
    return CycleRef{walk};
  }

  /// Same embedding, another face designated as outer.
  PlanarMap with_outer(int face_id) const {
    PlanarMap m = *this;
    m.outer_ = face(face_id).id;
    return m;
  }

  /// Which vertices lie on each side of cycle c. The side containing the
  /// outer face is "outside".
  Sides sides_of(const CycleRef& c) const {
    require_cycle(graph_, c);
    const auto& cyc = c.vertices;
    const std::size_t len = cyc.size();
    std::set<Vertex> on_cycle(cyc.begin(), cyc.end());

    // side_a(v, x): x lies strictly inside the rotation arc at v that starts
    // at the cycle successor and ends at the cycle predecessor.
    std::map<Vertex, std::pair<Vertex, Vertex>> pred_succ;
    for (std::size_t i = 0; i < len; ++i) {
      pred_succ[cyc[i]] = {cyc[(i + len - 1) % len], cyc[(i + 1) % len]};
    }
    auto arc_position = [&](Vertex v, Vertex x) {
      const auto& rot = rotation(v);
      const auto succ = pred_succ.at(v).second;
      std::size_t s = 0;
      std::size_t k = 0;
      for (std::size_t i = 0; i < rot.size(); ++i) {
        if (rot[i] == succ) s = i;
        if (rot[i] == x) k = i;
      }
      return (k + rot.size() - s) % rot.size();
    };
    auto on_side_a = [&](Vertex v, Vertex x) {
      return arc_position(v, x) < arc_position(v, pred_succ.at(v).first);
    };

    // Components of G - C; each lies wholly on one side.
    std::map<Vertex, int> component;
    std::vector<bool> component_side_a;
    for (Vertex s : graph_.vertices()) {
      if (on_cycle.count(s) || component.count(s)) continue;
      const int id = static_cast<int>(component_side_a.size());
      component_side_a.push_back(false);
      std::vector<Vertex> stack{s};
      component[s] = id;
      while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : graph_.neighbors(v)) {
          if (on_cycle.count(w)) {
            component_side_a[static_cast<std::size_t>(id)] = on_side_a(w, v);
          } else if (!component.count(w)) {
            component[w] = id;
            stack.push_back(w);
          }
        }
      }
    }

    // Side of the outer face: a corner at a cycle vertex, else any walk
    // vertex off the cycle.
    bool outer_side_a = false;
    bool located = false;
    for (const Dart& d : face(outer_).darts) {
      if (on_cycle.count(d.head)) {
        // Corner at d.head arriving from d.tail; its arc starts at d.tail.
        Vertex v = d.head;
        outer_side_a = arc_position(v, d.tail) < arc_position(v, pred_succ.at(v).first);
        located = true;
        break;
      }
    }
    if (!located) {
      for (const Dart& d : face(outer_).darts) {
        if (!on_cycle.count(d.tail)) {
          outer_side_a = component_side_a[static_cast<std::size_t>(component.at(d.tail))];
          located = true;
          break;
        }
      }
    }

    Sides out;
    for (const auto& [v, id] : component) {
      bool side_a = component_side_a[static_cast<std::size_t>(id)];
      (side_a == outer_side_a ? out.outside : out.inside).push_back(v);
    }
    out.separating = !out.inside.empty() && !out.outside.empty();
    return out;
  }

 private:
  static Graph graph_from_rotation(const Rotation& rotation) {
    Graph g;
    for (const auto& [v, nbrs] : rotation) {
      g.add_vertex(v);
      std::set<Vertex> distinct(nbrs.begin(), nbrs.end());
      if (distinct.size() != nbrs.size()) {
        throw Error(ErrorKind::invalid_rotation, "repeated neighbor around " + std::to_string(v));
      }
    }
    for (const auto& [v, nbrs] : rotation) {
      for (Vertex w : nbrs) {
        if (w == v) throw Error(ErrorKind::invalid_rotation, "self-loop at " + std::to_string(v));
        auto it = rotation.find(w);
        if (it == rotation.end() ||
            std::find(it->second.begin(), it->second.end(), v) == it->second.end()) {
          throw Error(ErrorKind::invalid_rotation,
                      "asymmetric adjacency " + std::to_string(v) + "-" + std::to_string(w));
        }
        if (v < w) g.add_edge(v, w);
      }
    }
    return g;
  }

  void trace_faces() {
    for (const auto& [v, nbrs] : rotation_) {
      for (Vertex w : nbrs) {
        Dart start{v, w};
        if (dart_face_.count(start)) continue;
        Face f;
        f.id = static_cast<int>(faces_.size());
        Dart d = start;
        do {
          dart_face_[d] = f.id;
          f.darts.push_back(d);
          d = Dart{d.head, successor(d.head, d.tail)};
        } while (d != start);
        faces_.push_back(std::move(f));
      }
    }
  }

  Graph graph_;
  Rotation rotation_;
  std::vector<Face> faces_;
  std::map<Dart, int> dart_face_;
  int outer_ = 0;
};

/// Separating-cycle test relative to the embedding.
inline Sides is_separating(const PlanarMap& map, const CycleRef& c) { return map.sides_of(c); }

/// Same embedding with every id v renamed to perm.at(v).
inline PlanarMap relabeled(const PlanarMap& map, const std::map<Vertex, Vertex>& perm) {
  Rotation rot;
  for (const auto& [v, nbrs] : map.rotation()) {
    auto& out = rot[perm.at(v)];
    for (Vertex w : nbrs) out.push_back(perm.at(w));
  }
  const Dart d = map.face(map.outer_face()).darts.front();
  return PlanarMap::build(rot, {perm.at(d.tail), perm.at(d.head)});
}

/// Reflection: every rotation reversed, the same outer face.
inline PlanarMap mirrored(const PlanarMap& map) {
  Rotation rot;
  for (const auto& [v, nbrs] : map.rotation()) rot[v] = {nbrs.rbegin(), nbrs.rend()};
  const Dart d = map.face(map.outer_face()).darts.front();
  return PlanarMap::build(rot, {d.head, d.tail});
}

}  // namespace nbp
