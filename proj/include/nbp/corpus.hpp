#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "nbp/configuration.hpp"
#include "nbp/cycles.hpp"
#include "nbp/io.hpp"
#include "nbp/planar_map.hpp"

#ifndef NBP_DEFAULT_FIXTURES
#define NBP_DEFAULT_FIXTURES "fixtures"
#endif

namespace nbp {

struct Point {
  double x = 0;
  double y = 0;
};

using Layout = std::map<Vertex, Point>;

namespace detail {

inline double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline bool on_segment(Point p, Point a, Point b) {
  return std::min(a.x, b.x) - 1e-12 <= p.x && p.x <= std::max(a.x, b.x) + 1e-12 &&
         std::min(a.y, b.y) - 1e-12 <= p.y && p.y <= std::max(a.y, b.y) + 1e-12;
}

// Closed-segment intersection; callers exclude pairs sharing an endpoint.
inline bool segments_meet(Point a, Point b, Point c, Point d) {
  const double d1 = cross(c, d, a);
  const double d2 = cross(c, d, b);
  const double d3 = cross(a, b, c);
  const double d4 = cross(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  const double eps = 1e-12;
  return (std::abs(d1) < eps && on_segment(a, c, d)) || (std::abs(d2) < eps && on_segment(b, c, d)) ||
         (std::abs(d3) < eps && on_segment(c, a, b)) || (std::abs(d4) < eps && on_segment(d, a, b));
}

inline bool crosses_any(const Layout& pos, const std::vector<Edge>& edges, Edge e) {
  for (auto [a, b] : edges) {
    if (a == e.first || a == e.second || b == e.first || b == e.second) continue;
    if (segments_meet(pos.at(a), pos.at(b), pos.at(e.first), pos.at(e.second))) return true;
  }
  return false;
}

inline double signed_area(const Layout& pos, const Face& f) {
  double area = 0;
  for (const Dart& d : f.darts) {
    Point p = pos.at(d.tail);
    Point q = pos.at(d.head);
    area += p.x * q.y - q.x * p.y;
  }
  return area / 2;
}

}  // namespace detail

/// Map of a straight-line drawing: rotations sorted counter-clockwise. Faces
/// then lie right of their darts, so inner faces trace clockwise and the
/// outer face is the one with positive area. Throws InvalidGraph on
/// crossing edges.
inline PlanarMap straight_line_map(const Layout& pos, const std::vector<Edge>& edges) {
  std::vector<Edge> placed;
  for (Edge e : edges) {
    if (!pos.count(e.first) || !pos.count(e.second)) {
      throw Error(ErrorKind::unknown_vertex, "edge endpoint without position");
    }
    if (detail::crosses_any(pos, placed, e)) {
      throw Error(ErrorKind::invalid_graph, "edge " + std::to_string(e.first) + "-" +
                                                std::to_string(e.second) + " crosses another edge");
    }
    placed.push_back(e);
  }
  Rotation rot;
  for (const auto& [v, _] : pos) rot[v];
  for (auto [a, b] : edges) {
    rot[a].push_back(b);
    rot[b].push_back(a);
  }
  for (auto& [v, nbrs] : rot) {
    const Point p = pos.at(v);
    std::sort(nbrs.begin(), nbrs.end(), [&](Vertex a, Vertex b) {
      const Point pa = pos.at(a);
      const Point pb = pos.at(b);
      return std::atan2(pa.y - p.y, pa.x - p.x) < std::atan2(pb.y - p.y, pb.x - p.x);
    });
  }
  const Edge first = edges.at(0);
  PlanarMap probe = PlanarMap::build(rot, {first.first, first.second});
  for (const Face& f : probe.faces()) {
    if (detail::signed_area(pos, f) > 0) return probe.with_outer(f.id);
  }
  return probe;
}

// ---------------------------------------------------------------------------
// Classic graphs

inline std::vector<NamedGraph> classics() {
  auto cycle = [](int n) {
    Graph g;
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
  };
  return {
      {"k4", Graph::from_edges({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})},
      {"moser", Graph::from_edges({{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {0, 4}, {0, 5}, {4, 5},
                                   {4, 6}, {5, 6}, {3, 6}})},
      {"c3", cycle(3)},
      {"c5", cycle(5)},
      {"c8", cycle(8)},
      {"bowtie", Graph::from_edges({{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}})},
  };
}

inline Graph classic(const std::string& name) {
  for (auto& g : classics()) {
    if (g.name == name) return g.graph;
  }
  throw Error(ErrorKind::parse_error, "no classic graph named " + name);
}

// ---------------------------------------------------------------------------
// Fixture hosts and gadgets

namespace detail {

inline Point polar(double radius, double degrees) {
  const double a = degrees * std::numbers::pi / 180.0;
  return {radius * std::cos(a), radius * std::sin(a)};
}

// Ring vertices 0..angles.size()-1 at the given angles, joined cyclically.
inline void add_ring(Layout& pos, std::vector<Edge>& edges, double radius,
                     const std::vector<double>& angles) {
  const int n = static_cast<int>(angles.size());
  for (int i = 0; i < n; ++i) pos[i] = polar(radius, angles[static_cast<std::size_t>(i)]);
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
}

inline std::vector<double> even_angles(int n, double start = 0) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(start + 360.0 * i / n);
  return out;
}

inline std::vector<double> spread(double from, double to, int steps) {
  std::vector<double> out;
  for (int i = 0; i < steps; ++i) out.push_back(from + (to - from) * i / steps);
  return out;
}

}  // namespace detail

/// Cycle C_n drawn as a regular polygon.
inline PlanarMap cycle_map(int n) {
  Layout pos;
  std::vector<Edge> edges;
  detail::add_ring(pos, edges, 10, detail::even_angles(n));
  return straight_line_map(pos, edges);
}

/// Ring of n vertices with an internal vertex forming a 3-face on edge r0r1.
inline PlanarMap ring_with_ear(int n) {
  Layout pos;
  std::vector<Edge> edges;
  detail::add_ring(pos, edges, 10, detail::even_angles(n));
  pos[n] = detail::polar(7, 180.0 / n);
  edges.push_back({n, 0});
  edges.push_back({n, 1});
  return straight_line_map(pos, edges);
}

/// Ring of n vertices around a central hub (id n) joined to the listed ring
/// positions.
inline PlanarMap hub_map(int n, const std::vector<int>& spokes) {
  Layout pos;
  std::vector<Edge> edges;
  detail::add_ring(pos, edges, 10, detail::even_angles(n));
  pos[n] = {0, 0};
  for (int s : spokes) edges.push_back({n, s});
  return straight_line_map(pos, edges);
}

/// 14-ring host with a tetrad x v1 v2 v3 v4 y on an 8-face.
inline PlanarMap tetrad_fixture() {
  Layout pos;
  std::vector<Edge> edges;
  detail::add_ring(pos, edges, 10, detail::even_angles(14));
  const Vertex x = 0, y = 3, a = 9;
  const Vertex v1 = 14, v2 = 15, v3 = 16, v4 = 17, t12 = 18, t34 = 19;
  pos[v1] = {7, 1};
  pos[v2] = {6, 3.5};
  pos[v3] = {4.5, 5.5};
  pos[v4] = {2.5, 7};
  pos[t12] = {5, 1.2};
  pos[t34] = {2.8, 5.0};
  for (Edge e : std::vector<Edge>{{x, v1}, {v1, v2}, {v2, v3}, {v3, v4}, {v4, y}, {t12, v1},
                                  {t12, v2}, {t34, v3}, {t34, v4}, {t12, a}}) {
    edges.push_back(e);
  }
  return straight_line_map(pos, edges);
}

namespace detail {

// Octagon v1..v8 (ids base..base+7) at radius 4 with 3-face apexes at radius 6.
inline void add_octagon(Layout& pos, std::vector<Edge>& edges, Vertex base,
                        const std::map<std::string, Vertex>& apex_ids) {
  for (int k = 0; k < 8; ++k) {
    pos[base + k] = polar(4, 22.5 + 45.0 * k);
    edges.push_back({base + k, base + (k + 1) % 8});
  }
  for (const auto& [label, id] : apex_ids) {
    const int i = label[1] - '1';
    const int j = label[2] - '1';
    // t18 sits at angle 0, the others midway between their two octagon vertices.
    const double angle = (i == 0 && j == 7) ? 0.0 : 22.5 + 45.0 * (i + j) / 2.0;
    pos[id] = polar(6, angle);
    edges.push_back({id, base + i});
    edges.push_back({id, base + j});
  }
}

}  // namespace detail

/// 10-ring host around an M-face.
inline PlanarMap m_face_fixture() {
  Layout pos;
  std::vector<Edge> edges;
  auto angles = detail::spread(90, 157.5, 4);
  for (double a : detail::spread(157.5, 225, 4)) angles.push_back(a);
  angles.push_back(225);
  angles.push_back(337.5);
  detail::add_ring(pos, edges, 20, angles);
  const Vertex base = 10;
  const Vertex t18 = 18, t23 = 19, t56 = 20, t78 = 21;
  detail::add_octagon(pos, edges, base, {{"t18", t18}, {"t23", t23}, {"t56", t56}, {"t78", t78}});
  edges.push_back({t23, 0});
  edges.push_back({base + 3, 4});
  edges.push_back({t56, 8});
  return straight_line_map(pos, edges);
}

/// 10-ring host around an MM-face.
inline PlanarMap mm_face_fixture() {
  Layout pos;
  std::vector<Edge> edges;
  detail::add_ring(pos, edges, 20, {90, 112.5, 135, 157.5, 180, 225, 270, 315, 360, 405});
  const Vertex base = 10;
  const Vertex t18 = 18, t23 = 19, t45 = 20, t56 = 21, t78 = 22;
  detail::add_octagon(pos, edges, base,
                      {{"t18", t18}, {"t23", t23}, {"t45", t45}, {"t56", t56}, {"t78", t78}});
  edges.push_back({t23, 0});
  edges.push_back({t45, 4});
  edges.push_back({t78, 7});
  return straight_line_map(pos, edges);
}

/// 12-ring host with one Fa1-face whose v1, v2, v3 lie on the ring.
inline PlanarMap fa1_fixture() {
  Layout pos;
  std::vector<Edge> edges;
  // t18 v1 v2 v3 t34 a1 a2 p b1 b2 b3 b4
  detail::add_ring(pos, edges, 10, {60, 75, 90, 105, 120, 170, 220, 270, 300, 330, 360, 390});
  const Vertex t18 = 0, v1 = 1, v3 = 3, t34 = 4, p = 7;
  const Vertex v4 = 12, v5 = 13, v6 = 14, v7 = 15, v8 = 16, t56 = 17;
  pos[v8] = {3.5, 6.5};
  pos[v4] = {-3.5, 6.5};
  pos[v5] = {-3.5, 3};
  pos[v6] = {-1.5, 1};
  pos[v7] = {1.5, 1.5};
  pos[t56] = {-4, 0.5};
  for (Edge e : std::vector<Edge>{{v3, v4}, {v4, v5}, {v5, v6}, {v6, v7}, {v7, v8}, {v8, v1},
                                  {t18, v8}, {t34, v4}, {t56, v5}, {t56, v6}, {v7, p}}) {
    edges.push_back(e);
  }
  return straight_line_map(pos, edges);
}

/// 8-ring host with one Fa2-face whose v1, v2, v3 lie on the ring.
inline PlanarMap fa2_fixture() {
  Layout pos;
  std::vector<Edge> edges;
  // t18 v1 v2 v3 t34 a b c
  detail::add_ring(pos, edges, 10, {60, 75, 90, 105, 120, 190, 270, 350});
  const Vertex t18 = 0, v1 = 1, v3 = 3, t34 = 4;
  const Vertex v4 = 8, v5 = 9, v6 = 10, v7 = 11, v8 = 12, t56 = 13, t67 = 14;
  pos[v4] = {-3.5, 6.5};
  pos[v5] = {-3.5, 3};
  pos[v6] = {0, 1};
  pos[v7] = {3.5, 3};
  pos[v8] = {3.5, 6.5};
  pos[t56] = {-3, 0.3};
  pos[t67] = {3, 0.3};
  for (Edge e : std::vector<Edge>{{v3, v4}, {v4, v5}, {v5, v6}, {v6, v7}, {v7, v8}, {v8, v1},
                                  {t18, v8}, {t34, v4}, {t56, v5}, {t56, v6}, {t67, v6},
                                  {t67, v7}}) {
    edges.push_back(e);
  }
  return straight_line_map(pos, edges);
}

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"tetrad", "m_face", "mm_face", "fa1", "fa2"};
  return names;
}

/// Builds a fixture host by name.
inline PlanarMap build_fixture(const std::string& name) {
  if (name == "tetrad") return tetrad_fixture();
  if (name == "m_face") return m_face_fixture();
  if (name == "mm_face") return mm_face_fixture();
  if (name == "fa1") return fa1_fixture();
  if (name == "fa2") return fa2_fixture();
  throw Error(ErrorKind::parse_error, "no fixture named " + name);
}

/// $NBP_FIXTURES, else the directory configured at build time.
inline std::string fixtures_dir() {
  if (const char* env = std::getenv("NBP_FIXTURES"); env && *env) return env;
  return NBP_DEFAULT_FIXTURES;
}

inline PlanarMap load_fixture(const std::string& name) {
  return io::load_nbmap(fixtures_dir() + "/" + name + ".nbmap");
}

/// The outer boundary as a cycle; OuterMismatch when it is not simple.
inline CycleRef outer_cycle(const PlanarMap& map) {
  auto c = map.boundary_cycle(map.outer_face());
  if (!c) throw Error(ErrorKind::outer_mismatch, "outer face boundary is not a simple cycle");
  return *c;
}

/// Re-designates the outer face as a 3-face when one exists, else the
/// shortest face bounded by a simple cycle of length at most 14.
inline std::optional<std::pair<PlanarMap, CycleRef>> choose_outer(const PlanarMap& map) {
  std::optional<int> best;
  std::size_t best_len = 15;
  for (const Face& f : map.faces()) {
    auto c = map.boundary_cycle(f.id);
    if (!c || c->length() >= best_len) continue;
    best = f.id;
    best_len = c->length();
  }
  if (!best) return std::nullopt;
  PlanarMap m = map.with_outer(*best);
  CycleRef c = *m.boundary_cycle(*best);
  return std::make_pair(std::move(m), std::move(c));
}

// ---------------------------------------------------------------------------
// Random generation

enum class Strategy { subdivision, triangle_glue };

inline std::string to_string(Strategy s) { return s == Strategy::subdivision ? "sub" : "glue"; }

inline Strategy strategy_from(const std::string& s) {
  if (s == "sub" || s == "subdivision") return Strategy::subdivision;
  if (s == "glue" || s == "triangle_glue") return Strategy::triangle_glue;
  throw Error(ErrorKind::parse_error, "unknown strategy " + s);
}

struct GenParams {
  int target = 12;
  std::uint64_t seed = 1;
  Strategy strategy = Strategy::subdivision;
  double density = 0.5;  // triangle_glue only
};

namespace detail {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

// Greedy non-crossing graph on k random points: shortest pairs first.
inline std::pair<Layout, std::vector<Edge>> skeleton(int k, Rng& rng) {
  Layout pos;
  for (int i = 0; i < k; ++i) pos[i] = {rng.unit() * 100, rng.unit() * 100};
  std::vector<std::pair<double, Edge>> pairs;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      pairs.push_back({std::hypot(pos[i].x - pos[j].x, pos[i].y - pos[j].y), {i, j}});
    }
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<Edge> edges;
  for (const auto& [_, e] : pairs) {
    if (!crosses_any(pos, edges, e)) edges.push_back(e);
  }
  return {pos, edges};
}

inline bool biconnected_without(const std::vector<Edge>& edges, std::size_t skip, int k) {
  Graph g;
  for (int i = 0; i < k; ++i) g.add_vertex(i);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i != skip) g.add_edge(edges[i].first, edges[i].second);
  }
  return is_biconnected(g);
}

// Subdivided skeleton with about `target` vertices; every skeleton edge
// becomes a path with 2 or 3 interior vertices.
inline std::pair<Layout, std::vector<Edge>> subdivided(int target, Rng& rng) {
  const int k = std::max(3, target / 4);
  auto [pos, sk] = skeleton(k, rng);
  // Thin while the total would exceed the target and 2-connectivity survives.
  bool progress = true;
  while (progress && k + 2 * static_cast<int>(sk.size()) > target) {
    progress = false;
    std::vector<std::size_t> order(sk.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    for (std::size_t idx : order) {
      if (biconnected_without(sk, idx, k)) {
        sk.erase(sk.begin() + static_cast<std::ptrdiff_t>(idx));
        progress = true;
        break;
      }
    }
  }
  std::vector<int> interior(sk.size(), 2);
  int total = k + 2 * static_cast<int>(sk.size());
  for (std::size_t tries = 0; total < target && tries < 4 * sk.size(); ++tries) {
    std::size_t i = rng.below(sk.size());
    if (interior[i] == 2) {
      interior[i] = 3;
      ++total;
    }
  }
  std::vector<Edge> edges;
  Vertex next = k;
  for (std::size_t i = 0; i < sk.size(); ++i) {
    auto [a, b] = sk[i];
    Vertex prev = a;
    for (int s = 1; s <= interior[i]; ++s) {
      const double t = static_cast<double>(s) / (interior[i] + 1);
      pos[next] = {pos[a].x + t * (pos[b].x - pos[a].x), pos[a].y + t * (pos[b].y - pos[a].y)};
      edges.push_back({prev, next});
      prev = next++;
    }
    edges.push_back({prev, b});
  }
  return {pos, edges};
}

// Pendant 3-face at v, placed in the widest angular gap around v.
inline bool glue_triangle(Layout& pos, std::vector<Edge>& edges, Vertex v, Vertex next_id) {
  std::vector<double> angles;
  double shortest = 1e18;
  for (auto [a, b] : edges) {
    if (a != v && b != v) continue;
    Vertex w = a == v ? b : a;
    angles.push_back(std::atan2(pos[w].y - pos[v].y, pos[w].x - pos[v].x));
    shortest = std::min(shortest, std::hypot(pos[w].x - pos[v].x, pos[w].y - pos[v].y));
  }
  double mid = 0;
  double gap = 2 * std::numbers::pi;
  if (!angles.empty()) {
    std::sort(angles.begin(), angles.end());
    gap = 0;
    for (std::size_t i = 0; i < angles.size(); ++i) {
      double from = angles[i];
      double to = i + 1 < angles.size() ? angles[i + 1] : angles[0] + 2 * std::numbers::pi;
      if (to - from > gap) {
        gap = to - from;
        mid = from + gap / 2;
      }
    }
  } else {
    shortest = 1;
  }
  const double r = shortest * 0.3;
  const double half = std::min(gap / 4, 0.5);
  pos[next_id] = {pos[v].x + r * std::cos(mid - half), pos[v].y + r * std::sin(mid - half)};
  pos[next_id + 1] = {pos[v].x + r * std::cos(mid + half), pos[v].y + r * std::sin(mid + half)};
  for (Edge e : std::vector<Edge>{{v, next_id}, {v, next_id + 1}, {next_id, next_id + 1}}) {
    if (crosses_any(pos, edges, e)) {
      pos.erase(next_id);
      pos.erase(next_id + 1);
      return false;
    }
  }
  edges.push_back({v, next_id});
  edges.push_back({v, next_id + 1});
  edges.push_back({next_id, next_id + 1});
  return true;
}

inline std::optional<PlanarMap> generate_once(const GenParams& p, Rng& rng) {
  int triangles = 0;
  int base = p.target;
  if (p.strategy == Strategy::triangle_glue) {
    triangles = static_cast<int>(std::floor(std::clamp(p.density, 0.0, 1.0) * p.target / 5.0));
    if (triangles == 0 && p.density > 0) triangles = 1;
    base = p.target - 2 * triangles;
  }
  Layout pos;
  std::vector<Edge> edges;
  if (base >= 9) {
    std::tie(pos, edges) = subdivided(base, rng);
  } else {
    pos = {{0, {0, 0}}, {1, {10, 0}}, {2, {5, 8}}};
    edges = {{0, 1}, {1, 2}, {2, 0}};
    triangles = (p.target - 3) / 2;
  }
  std::vector<Vertex> hosts;
  for (const auto& [v, _] : pos) hosts.push_back(v);
  Vertex next = static_cast<Vertex>(pos.size());
  for (int t = 0; t < triangles && !hosts.empty(); ++t) {
    std::size_t i = rng.below(hosts.size());
    Vertex v = hosts[i];
    hosts.erase(hosts.begin() + static_cast<std::ptrdiff_t>(i));
    if (glue_triangle(pos, edges, v, next)) next += 2;
  }
  PlanarMap map = straight_line_map(pos, edges);
  if (cycles_in_length_range(map.graph(), 4, 7)) return std::nullopt;
  if (p.strategy == Strategy::subdivision) {
    auto g = girth(map.graph());
    if (g && *g < 8) return std::nullopt;
  }
  if (!choose_outer(map)) return std::nullopt;
  return map;
}

}  // namespace detail

/// A random planar map without cycles of length 4 to 7. Deterministic in
/// (params, seed).
inline PlanarMap generate(const GenParams& p) {
  if (p.target < 3) throw Error(ErrorKind::generation_failed, "target must be at least 3");
  if (p.strategy == Strategy::subdivision && p.target < 9) {
    throw Error(ErrorKind::generation_failed, "subdivision needs a target of at least 9");
  }
  detail::Rng rng(p.seed);
  for (int attempt = 0; attempt < 200; ++attempt) {
    try {
      if (auto m = detail::generate_once(p, rng)) return *m;
    } catch (const Error&) {
      // degenerate drawing; resample
    }
  }
  throw Error(ErrorKind::generation_failed, "rejection budget exhausted");
}

}  // namespace nbp
