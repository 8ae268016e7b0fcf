#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nbp/planar_map.hpp"
#include "nbp/subgraph.hpp"

namespace nbp {

struct VertexFlags {
  bool internal = false;
  bool bad = false;
  bool willing = false;
  bool content = false;
  int degree = 0;
  int triangles = 0;  // incident internal 3-faces
};

/// Per-vertex and per-(vertex, face) flags relative to an outer cycle C0.
struct VertexClassification {
  std::map<Vertex, VertexFlags> vertex;
  std::set<std::pair<Vertex, int>> poor_to;
  std::set<std::pair<Vertex, int>> special_to;
  std::set<int> fa_faces;

  const VertexFlags& at(Vertex v) const { return vertex.at(v); }
  bool poor(Vertex v, int face) const { return poor_to.count({v, face}) != 0; }
  bool special(Vertex v, int face) const { return special_to.count({v, face}) != 0; }
  bool special_anywhere(Vertex v) const {
    auto it = special_to.lower_bound({v, -1});
    return it != special_to.end() && it->first == v;
  }
};

enum class HitKind { low_degree, tetrad, m_face, mm_face, fa1, fa2, fb_catalog };

inline std::string to_string(HitKind k) {
  switch (k) {
    case HitKind::low_degree: return "low_degree";
    case HitKind::tetrad: return "tetrad";
    case HitKind::m_face: return "m_face";
    case HitKind::mm_face: return "mm_face";
    case HitKind::fa1: return "fa1";
    case HitKind::fa2: return "fa2";
    case HitKind::fb_catalog: return "fb_catalog";
  }
  return "unknown";
}

inline std::optional<HitKind> hit_kind_from(std::string_view s) {
  for (auto k : {HitKind::low_degree, HitKind::tetrad, HitKind::m_face, HitKind::mm_face,
                 HitKind::fa1, HitKind::fa2, HitKind::fb_catalog}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

/// A located configuration. Roles are kept in a fixed per-kind order.
struct ConfigurationHit {
  HitKind kind = HitKind::tetrad;
  std::string name;  // catalog member name for fb hits
  std::optional<int> face;
  std::vector<std::pair<std::string, Vertex>> roles;

  Vertex role(std::string_view label) const {
    for (const auto& [l, v] : roles) {
      if (l == label) return v;
    }
    throw Error(ErrorKind::invalid_hit, "hit has no role " + std::string(label));
  }

  bool has_role(std::string_view label) const {
    for (const auto& [l, v] : roles) {
      if (l == label) return true;
    }
    return false;
  }

  std::vector<Vertex> ids() const {
    std::vector<Vertex> out;
    for (const auto& [_, v] : roles) out.push_back(v);
    return out;
  }

  /// Vertices touched by the hit, as a set; invariant under relabeling of
  /// symmetric role assignments.
  std::set<Vertex> footprint() const {
    std::set<Vertex> out;
    for (const auto& [_, v] : roles) out.insert(v);
    return out;
  }
};

namespace detail {

inline bool is_triangle_face(const PlanarMap& map, int f) {
  return !map.is_outer(f) && map.face(f).degree() == 3;
}

// Apex of the internal 3-face on the far side of edge {a,b} from face f.
inline std::optional<Vertex> triangle_apex(const PlanarMap& map, int f, Vertex a, Vertex b) {
  auto other = map.across(f, a, b);
  if (!other || !is_triangle_face(map, *other)) return std::nullopt;
  for (Vertex w : map.face(*other).walk()) {
    if (w != a && w != b) return w;
  }
  return std::nullopt;
}

inline std::vector<int> incident_triangles(const PlanarMap& map, Vertex v) {
  std::vector<int> out;
  for (int f : map.faces_at(v)) {
    if (is_triangle_face(map, f)) out.push_back(f);
  }
  return out;
}

// All labelings v1..vd of an internal face's walk: every start, both
// directions. Only simple walks qualify.
inline std::vector<std::vector<Vertex>> labelings(const PlanarMap& map, int f) {
  std::vector<std::vector<Vertex>> out;
  auto walk = map.face(f).walk();
  std::set<Vertex> distinct(walk.begin(), walk.end());
  if (distinct.size() != walk.size()) return out;
  const std::size_t d = walk.size();
  for (int dir : {1, -1}) {
    for (std::size_t s = 0; s < d; ++s) {
      std::vector<Vertex> lab;
      for (std::size_t k = 0; k < d; ++k) {
        std::size_t idx = dir == 1 ? (s + k) % d : (s + d - k) % d;
        lab.push_back(walk[idx]);
      }
      out.push_back(std::move(lab));
    }
  }
  return out;
}

inline void keep_canonical(std::vector<ConfigurationHit>& hits, ConfigurationHit candidate,
                           std::map<std::pair<int, std::set<Vertex>>, std::size_t>& index) {
  auto key = std::make_pair(candidate.face.value_or(-1), candidate.footprint());
  auto it = index.find(key);
  if (it == index.end()) {
    index[key] = hits.size();
    hits.push_back(std::move(candidate));
  } else if (candidate.ids() < hits[it->second].ids()) {
    hits[it->second] = std::move(candidate);
  }
}

}  // namespace detail

/// Checks c0 is the boundary of the outer face (as a simple cycle).
inline void require_outer_cycle(const PlanarMap& map, const CycleRef& c0) {
  auto outer = map.boundary_cycle(map.outer_face());
  auto mismatch = [] { return Error(ErrorKind::outer_mismatch, "cycle does not bound the outer face"); };
  if (!outer || outer->length() != c0.length()) throw mismatch();
  std::set<Vertex> a(outer->vertices.begin(), outer->vertices.end());
  std::set<Vertex> b(c0.vertices.begin(), c0.vertices.end());
  if (a != b || !is_cycle(map.graph(), c0)) throw mismatch();
  for (auto e : c0.edges()) {
    if (!outer->has_edge(e.first, e.second)) throw mismatch();
  }
}

inline std::vector<ConfigurationHit> find_fa_faces(const PlanarMap& map, const CycleRef& c0,
                                                   const VertexClassification& cls);

/// Computes internal/bad/willing/content per vertex and poor/special per
/// (vertex, face).
inline VertexClassification classify(const PlanarMap& map, const CycleRef& c0) {
  require_outer_cycle(map, c0);
  const Graph& g = map.graph();
  std::set<Vertex> on_c0(c0.vertices.begin(), c0.vertices.end());
  VertexClassification cls;

  for (Vertex v : g.vertices()) {
    VertexFlags fl;
    fl.internal = !on_c0.count(v);
    fl.degree = static_cast<int>(g.degree(v));
    auto tris = detail::incident_triangles(map, v);
    fl.triangles = static_cast<int>(tris.size());
    fl.bad = fl.internal && fl.degree == 3 && fl.triangles > 0;

    if (fl.internal && fl.degree == 4) {
      for (int f : map.faces_at(v)) {
        if (map.is_outer(f) || detail::is_triangle_face(map, f)) continue;
        bool poor = false;
        if (tris.size() == 2) {
          poor = map.share_edge(tris[0], f) && map.share_edge(tris[1], f);
        } else if (tris.size() == 1) {
          poor = !map.share_edge(tris[0], f);
        }
        if (poor) cls.poor_to.insert({v, f});
      }
    }

    if (!fl.internal && fl.degree == 3) {
      std::vector<int> inner;
      for (const Corner& c : map.corners(v)) {
        if (!map.is_outer(c.face)) inner.push_back(c.face);
      }
      if (inner.size() == 2) {
        auto deg = [&](int f) { return map.face(f).degree(); };
        bool t0 = detail::is_triangle_face(map, inner[0]);
        bool t1 = detail::is_triangle_face(map, inner[1]);
        fl.content = (t0 && deg(inner[1]) >= 8) || (t1 && deg(inner[0]) >= 8);
      }
    }
    cls.vertex[v] = fl;
  }

  for (auto& [v, fl] : cls.vertex) {
    bool poor_somewhere = false;
    auto it = cls.poor_to.lower_bound({v, -1});
    poor_somewhere = it != cls.poor_to.end() && it->first == v;
    fl.willing = (fl.internal && fl.degree == 3 && !fl.bad) || poor_somewhere;
  }

  for (const auto& hit : find_fa_faces(map, c0, cls)) {
    int f = *hit.face;
    cls.fa_faces.insert(f);
    for (Vertex v : map.face(f).walk()) {
      if (cls.vertex.at(v).content) cls.special_to.insert({v, f});
    }
  }
  return cls;
}

/// Internal vertices of degree at most 2.
inline std::vector<ConfigurationHit> find_low_degree(const PlanarMap& map,
                                                     const VertexClassification& cls) {
  std::vector<ConfigurationHit> out;
  for (const auto& [v, fl] : cls.vertex) {
    if (fl.internal && fl.degree <= 2) {
      ConfigurationHit h;
      h.kind = HitKind::low_degree;
      h.roles = {{"v", v}};
      (void)map;
      out.push_back(std::move(h));
    }
  }
  return out;
}

/// Boundary paths x v1 v2 v3 v4 y with v1..v4 bad and v1v2, v3v4 on 3-faces.
inline std::vector<ConfigurationHit> find_tetrads(const PlanarMap& map, const CycleRef& c0,
                                                  const VertexClassification& cls) {
  (void)c0;
  std::vector<ConfigurationHit> hits;
  std::map<std::pair<int, std::set<Vertex>>, std::size_t> index;
  for (const Face& face : map.faces()) {
    if (map.is_outer(face.id) || face.degree() < 6) continue;
    auto walk = face.walk();
    const std::size_t d = walk.size();
    for (int dir : {1, -1}) {
      for (std::size_t s = 0; s < d; ++s) {
        auto at = [&](std::size_t k) {
          return walk[dir == 1 ? (s + k) % d : (s + d * 2 - k) % d];
        };
        // x = at(0), v1..v4 = at(1..4), y = at(5)
        std::vector<Vertex> v{at(1), at(2), at(3), at(4)};
        if (std::set<Vertex>(v.begin(), v.end()).size() != 4) continue;
        bool all_bad = std::all_of(v.begin(), v.end(), [&](Vertex u) { return cls.at(u).bad; });
        if (!all_bad) continue;
        auto t12 = detail::triangle_apex(map, face.id, v[0], v[1]);
        auto t34 = detail::triangle_apex(map, face.id, v[2], v[3]);
        if (!t12 || !t34) continue;
        ConfigurationHit h;
        h.kind = HitKind::tetrad;
        h.face = face.id;
        h.roles = {{"v1", v[0]}, {"v2", v[1]}, {"v3", v[2]}, {"v4", v[3]},
                   {"t12", *t12}, {"t34", *t34}, {"x", at(0)}, {"y", at(5)}};
        detail::keep_canonical(hits, std::move(h), index);
      }
    }
  }
  return hits;
}

namespace detail {

struct EightFacePattern {
  HitKind kind;
  std::vector<std::pair<int, int>> triangles;  // 1-based label pairs
};

using LabelTest = std::function<bool(const std::vector<Vertex>&)>;

inline std::vector<ConfigurationHit> find_eight_faces(
    const PlanarMap& map, const EightFacePattern& pattern, const LabelTest& vertex_test,
    const std::function<bool(const std::map<std::string, Vertex>&)>& apex_test = {}) {
  std::vector<ConfigurationHit> hits;
  std::map<std::pair<int, std::set<Vertex>>, std::size_t> index;
  for (const Face& face : map.faces()) {
    if (map.is_outer(face.id) || face.degree() != 8) continue;
    for (const auto& lab : labelings(map, face.id)) {
      if (!vertex_test(lab)) continue;
      std::map<std::string, Vertex> apexes;
      bool ok = true;
      for (auto [i, j] : pattern.triangles) {
        auto t = triangle_apex(map, face.id, lab[i - 1], lab[j - 1]);
        if (!t) {
          ok = false;
          break;
        }
        apexes["t" + std::to_string(std::min(i, j)) + std::to_string(std::max(i, j))] = *t;
      }
      if (!ok || (apex_test && !apex_test(apexes))) continue;
      ConfigurationHit h;
      h.kind = pattern.kind;
      h.face = face.id;
      for (std::size_t k = 0; k < 8; ++k) h.roles.emplace_back("v" + std::to_string(k + 1), lab[k]);
      for (auto [i, j] : pattern.triangles) {
        std::string label = "t" + std::to_string(std::min(i, j)) + std::to_string(std::max(i, j));
        h.roles.emplace_back(label, apexes.at(label));
      }
      keep_canonical(hits, std::move(h), index);
    }
  }
  return hits;
}

}  // namespace detail

/// 8-faces v1..v8 with v1,v2,v3,v5,v6,v7 bad, v4 not bad, d(v8) = 4 and
/// 3-faces on v1v8, v2v3, v5v6, v7v8.
inline std::vector<ConfigurationHit> find_m_faces(const PlanarMap& map, const CycleRef& c0,
                                                  const VertexClassification& cls) {
  (void)c0;
  auto bad = [&](Vertex v) { return cls.at(v).bad; };
  return detail::find_eight_faces(
      map, {HitKind::m_face, {{1, 8}, {2, 3}, {5, 6}, {7, 8}}}, [&](const std::vector<Vertex>& v) {
        return bad(v[0]) && bad(v[1]) && bad(v[2]) && !bad(v[3]) && bad(v[4]) && bad(v[5]) &&
               bad(v[6]) && cls.at(v[7]).degree == 4;
      });
}

/// 8-faces v1..v8 with v1,v2,v3,v4,v6,v7 bad, d(v5), d(v8) >= 4 and 3-faces on
/// v1v8, v2v3, v4v5, v5v6, v7v8.
inline std::vector<ConfigurationHit> find_mm_faces(const PlanarMap& map, const CycleRef& c0,
                                                   const VertexClassification& cls) {
  (void)c0;
  auto bad = [&](Vertex v) { return cls.at(v).bad; };
  return detail::find_eight_faces(
      map, {HitKind::mm_face, {{1, 8}, {2, 3}, {4, 5}, {5, 6}, {7, 8}}},
      [&](const std::vector<Vertex>& v) {
        return bad(v[0]) && bad(v[1]) && bad(v[2]) && bad(v[3]) && bad(v[5]) && bad(v[6]) &&
               cls.at(v[4]).degree >= 4 && cls.at(v[7]).degree >= 4;
      });
}

/// Fa1- and Fa2-faces. Needs only the content/bad/willing flags, so it can
/// run before special flags exist.
inline std::vector<ConfigurationHit> find_fa_faces(const PlanarMap& map, const CycleRef& c0,
                                                   const VertexClassification& cls) {
  std::set<Vertex> on_c0(c0.vertices.begin(), c0.vertices.end());
  auto apex_on_c0 = [&](const std::map<std::string, Vertex>& t) {
    return on_c0.count(t.at("t34")) && on_c0.count(t.at("t18"));
  };
  auto bad = [&](Vertex v) { return cls.at(v).bad; };
  auto content = [&](Vertex v) { return cls.at(v).content; };
  auto two = [&](Vertex v) { return cls.at(v).degree == 2; };
  auto willing = [&](Vertex v) { return cls.at(v).willing; };
  auto fa1 = detail::find_eight_faces(
      map, {HitKind::fa1, {{1, 8}, {3, 4}, {5, 6}}},
      [&](const std::vector<Vertex>& v) {
        return content(v[0]) && two(v[1]) && content(v[2]) && bad(v[3]) && bad(v[4]) &&
               bad(v[5]) && willing(v[6]) && bad(v[7]);
      },
      apex_on_c0);
  auto fa2 = detail::find_eight_faces(
      map, {HitKind::fa2, {{1, 8}, {3, 4}, {5, 6}, {6, 7}}},
      [&](const std::vector<Vertex>& v) {
        return content(v[0]) && two(v[1]) && content(v[2]) && bad(v[3]) && bad(v[4]) &&
               willing(v[5]) && bad(v[6]) && bad(v[7]);
      },
      apex_on_c0);
  fa1.insert(fa1.end(), fa2.begin(), fa2.end());
  return fa1;
}

/// Number of FA-structures (one per Fa-face).
inline int count_fa_structures(const VertexClassification& cls) {
  return static_cast<int>(cls.fa_faces.size());
}

struct NamedGraph {
  std::string name;
  Graph graph;
};

inline std::vector<ConfigurationHit> match_fb(const Graph& g, const std::vector<NamedGraph>& catalog) {
  std::vector<ConfigurationHit> out;
  for (const auto& member : catalog) {
    if (member.graph.order() > 30) {
      throw Error(ErrorKind::invalid_graph, "catalog member " + member.name + " exceeds 30 vertices");
    }
    if (auto m = subgraph_match(member.graph, g)) {
      ConfigurationHit h;
      h.kind = HitKind::fb_catalog;
      h.name = member.name;
      for (const auto& [from, to] : *m) h.roles.emplace_back(std::to_string(from), to);
      out.push_back(std::move(h));
    }
  }
  return out;
}

/// Every detector over one map, canonical order.
inline std::vector<ConfigurationHit> detect_all(const PlanarMap& map, const CycleRef& c0,
                                                const VertexClassification& cls,
                                                const std::vector<NamedGraph>& catalog = {}) {
  std::vector<ConfigurationHit> out;
  auto append = [&](std::vector<ConfigurationHit> hs) {
    std::sort(hs.begin(), hs.end(),
              [](const ConfigurationHit& a, const ConfigurationHit& b) { return a.ids() < b.ids(); });
    out.insert(out.end(), hs.begin(), hs.end());
  };
  append(find_low_degree(map, cls));
  append(find_tetrads(map, c0, cls));
  append(find_m_faces(map, c0, cls));
  append(find_mm_faces(map, c0, cls));
  append(find_fa_faces(map, c0, cls));
  append(match_fb(map.graph(), catalog));
  return out;
}

}  // namespace nbp
