#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nbp/coloring.hpp"
#include "nbp/configuration.hpp"

namespace nbp {

/// The surgery turning G into G*: delete, add edges, then merge `absorbed`
/// into `kept`.
struct ReductionTrace {
  HitKind kind = HitKind::low_degree;
  std::map<std::string, Vertex> roles;
  std::set<Vertex> deleted;
  std::optional<std::pair<Vertex, Vertex>> identified;  // (kept, absorbed)
  std::vector<Edge> added;

  Vertex role(const std::string& label) const {
    auto it = roles.find(label);
    if (it == roles.end()) throw Error(ErrorKind::invalid_hit, "trace has no role " + label);
    return it->second;
  }

  friend bool operator==(const ReductionTrace&, const ReductionTrace&) = default;
};

inline Graph apply_trace(const Graph& g, const ReductionTrace& t) {
  Graph out = edit(g, t.deleted, t.added);
  if (t.identified) out = identify(out, t.identified->first, t.identified->second);
  return out;
}

namespace detail {

inline void require_hit(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::invalid_hit, what);
}

inline std::map<std::string, Vertex> role_map(const ConfigurationHit& hit,
                                              const std::vector<std::string>& required) {
  std::map<std::string, Vertex> roles;
  for (const auto& [label, v] : hit.roles) roles[label] = v;
  for (const auto& label : required) {
    require_hit(roles.count(label) != 0, to_string(hit.kind) + " hit lacks role " + label);
  }
  return roles;
}

// Checks N(v) is exactly `expected` in g.
inline void require_neighborhood(const Graph& g, Vertex v, std::set<Vertex> expected,
                                 const std::string& label) {
  require_hit(g.has_vertex(v), label + " is not a vertex");
  const auto& nbrs = g.neighbors(v);
  require_hit(std::set<Vertex>(nbrs.begin(), nbrs.end()) == expected &&
                  nbrs.size() == expected.size(),
              label + " does not have the neighborhood the configuration requires");
}

inline std::pair<Vertex, Vertex> choose_kept(Vertex a, Vertex b, const CycleRef* c0) {
  if (c0 && !c0->contains(a) && c0->contains(b)) return {b, a};
  return {a, b};
}

}  // namespace detail

/// Builds G* for a hit. With `c0`, the merged vertex keeps the id of
/// whichever identified vertex lies on C0.
inline std::pair<Graph, ReductionTrace> reduce(const Graph& g, const ConfigurationHit& hit,
                                               const CycleRef* c0 = nullptr) {
  using detail::require_neighborhood;
  ReductionTrace t;
  t.kind = hit.kind;
  switch (hit.kind) {
    case HitKind::low_degree: {
      t.roles = detail::role_map(hit, {"v"});
      Vertex v = t.roles.at("v");
      detail::require_hit(g.has_vertex(v) && g.degree(v) <= 2, "low-degree vertex has degree > 2");
      t.deleted = {v};
      break;
    }
    case HitKind::tetrad: {
      t.roles = detail::role_map(hit, {"v1", "v2", "v3", "v4", "t12", "t34", "x", "y"});
      auto r = [&](const char* l) { return t.roles.at(l); };
      require_neighborhood(g, r("v1"), {r("x"), r("v2"), r("t12")}, "v1");
      require_neighborhood(g, r("v2"), {r("v1"), r("v3"), r("t12")}, "v2");
      require_neighborhood(g, r("v3"), {r("v2"), r("v4"), r("t34")}, "v3");
      require_neighborhood(g, r("v4"), {r("v3"), r("y"), r("t34")}, "v4");
      t.deleted = {r("v1"), r("v2"), r("v3"), r("v4")};
      t.identified = detail::choose_kept(r("x"), r("t34"), c0);
      break;
    }
    case HitKind::m_face: {
      t.roles = detail::role_map(
          hit, {"v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "t18", "t23", "t56", "t78"});
      auto r = [&](const char* l) { return t.roles.at(l); };
      require_neighborhood(g, r("v1"), {r("v8"), r("v2"), r("t18")}, "v1");
      require_neighborhood(g, r("v2"), {r("v1"), r("v3"), r("t23")}, "v2");
      require_neighborhood(g, r("v3"), {r("v2"), r("v4"), r("t23")}, "v3");
      require_neighborhood(g, r("v5"), {r("v4"), r("v6"), r("t56")}, "v5");
      require_neighborhood(g, r("v6"), {r("v5"), r("v7"), r("t56")}, "v6");
      require_neighborhood(g, r("v7"), {r("v6"), r("v8"), r("t78")}, "v7");
      require_neighborhood(g, r("v8"), {r("v1"), r("v7"), r("t18"), r("t78")}, "v8");
      detail::require_hit(g.adjacent(r("v4"), r("v3")) && g.adjacent(r("v4"), r("v5")),
                          "v4 is not between v3 and v5");
      t.deleted = {r("v1"), r("v2"), r("v3"), r("v5"), r("v6"), r("v7")};
      t.added = {{r("t18"), r("t78")}};
      t.identified = detail::choose_kept(r("v4"), r("v8"), c0);
      break;
    }
    case HitKind::mm_face: {
      t.roles = detail::role_map(hit, {"v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "t18",
                                       "t23", "t45", "t56", "t78"});
      auto r = [&](const char* l) { return t.roles.at(l); };
      require_neighborhood(g, r("v1"), {r("v8"), r("v2"), r("t18")}, "v1");
      require_neighborhood(g, r("v2"), {r("v1"), r("v3"), r("t23")}, "v2");
      require_neighborhood(g, r("v3"), {r("v2"), r("v4"), r("t23")}, "v3");
      require_neighborhood(g, r("v4"), {r("v3"), r("v5"), r("t45")}, "v4");
      require_neighborhood(g, r("v6"), {r("v5"), r("v7"), r("t56")}, "v6");
      require_neighborhood(g, r("v7"), {r("v6"), r("v8"), r("t78")}, "v7");
      for (auto [a, b] : {std::pair{"v5", "t45"}, {"v5", "t56"}, {"v8", "t18"}, {"v8", "t78"}}) {
        detail::require_hit(g.adjacent(r(a), r(b)), std::string(a) + " is not adjacent to " + b);
      }
      t.deleted = {r("v1"), r("v2"), r("v3"), r("v4"), r("v6"), r("v7")};
      t.added = {{r("t18"), r("t45")}, {r("t78"), r("t56")}};
      t.identified = detail::choose_kept(r("v5"), r("v8"), c0);
      break;
    }
    default:
      throw Error(ErrorKind::invalid_hit, to_string(hit.kind) + " hits have no reduction");
  }
  Graph star = apply_trace(g, t);
  return {std::move(star), std::move(t)};
}

/// F-connectivity in G minus the deleted vertices, using only edges of G (the
/// identification and added edges are ignored). F-vertices of C0 count as
/// mutually connected, since a new link between two components that both
/// reach C0 would close a forbidden boundary path.
class BoundaryClosedForest {
 public:
  BoundaryClosedForest(const Graph& g, const CycleRef& c0, const std::set<Vertex>& deleted,
                       const IFColoring& coloring) {
    auto is_f = [&](Vertex v) {
      auto it = coloring.find(v);
      return it != coloring.end() && it->second == Color::F;
    };
    for (Vertex v : g.vertices()) {
      if (!deleted.count(v) && is_f(v)) parent_[v] = v;
    }
    for (auto [a, b] : g.edges()) {
      if (parent_.count(a) && parent_.count(b)) unite(a, b);
    }
    std::optional<Vertex> hub;
    for (Vertex v : c0.vertices) {
      if (!parent_.count(v)) continue;
      if (hub) unite(*hub, v);
      hub = v;
    }
  }

  /// The (a,b)-path of the case analysis: both ends F and joined.
  bool path(Vertex a, Vertex b) const {
    if (!parent_.count(a) || !parent_.count(b)) return false;
    return find(a) == find(b);
  }

 private:
  Vertex find(Vertex v) const {
    while (parent_.at(v) != v) v = parent_.at(v);
    return v;
  }
  void unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

  std::map<Vertex, Vertex> parent_;
};

struct LiftResult {
  IFColoring coloring;
  std::string case_label;
};

/// Extends a coloring of G* to G by the configuration's case analysis. No
/// validity check.
inline LiftResult lift_unchecked(const Graph& g, const CycleRef& c0, const ReductionTrace& t,
                                 const IFColoring& star) {
  LiftResult out;
  IFColoring& c = out.coloring;
  for (Vertex v : g.vertices()) {
    if (t.deleted.count(v)) continue;
    if (t.identified && v == t.identified->second) continue;
    auto it = star.find(v);
    if (it == star.end()) {
      throw Error(ErrorKind::lift_failed, "G* coloring misses vertex " + std::to_string(v));
    }
    c[v] = it->second;
  }
  if (t.identified) c[t.identified->second] = c.at(t.identified->first);

  const BoundaryClosedForest forest(g, c0, t.deleted, c);
  auto r = [&](const char* l) { return t.role(l); };
  auto col = [&](const char* l) { return c.at(r(l)); };
  auto set = [&](const char* l, Color x) { c[r(l)] = x; };
  const Color I = Color::I;
  const Color F = Color::F;

  switch (t.kind) {
    case HitKind::low_degree: {
      Vertex v = r("v");
      bool all_f = true;
      for (Vertex w : g.neighbors(v)) all_f = all_f && c.at(w) == F;
      c[v] = all_f ? I : F;
      out.case_label = all_f ? "neighbors-all-F" : "some-neighbor-I";
      break;
    }
    case HitKind::tetrad: {
      if (col("x") == I) {
        set("v1", F);
        set("v3", F);
        set("v4", F);
        set("v2", opposite(col("t12")));
        out.case_label = "case1";
      } else {
        set("v2", F);
        set("v3", col("y"));
        set("v1", opposite(col("t12")));
        set("v4", opposite(col("y")));
        out.case_label = "case2";
        if (col("t12") == F && col("y") == F && forest.path(r("t12"), r("t34"))) {
          set("v1", F);
          set("v2", I);
          out.case_label = "case2-recolored";
        }
      }
      break;
    }
    case HitKind::m_face: {
      if (col("v8") == I) {
        for (const char* l : {"v1", "v3", "v5", "v7"}) set(l, F);
        set("v2", opposite(col("t23")));
        set("v6", opposite(col("t56")));
        out.case_label = "case1";
        break;
      }
      // One of t18, t78 is I. Reflect so that t18 is.
      const bool reflect = col("t18") == F;
      auto m = [&](const char* l) -> const char* {
        if (!reflect) return l;
        static const std::map<std::string, const char*> sigma{
            {"v1", "v7"}, {"v2", "v6"}, {"v3", "v5"}, {"v4", "v4"}, {"v5", "v3"},
            {"v6", "v2"}, {"v7", "v1"}, {"v8", "v8"}, {"t18", "t78"}, {"t78", "t18"},
            {"t23", "t56"}, {"t56", "t23"}};
        return sigma.at(l);
      };
      set(m("v1"), F);
      set(m("v6"), F);
      set(m("v7"), I);
      set(m("v5"), opposite(col(m("t56"))));
      if (col(m("t23")) == I) {
        set(m("v2"), F);
        set(m("v3"), F);
        out.case_label = "case2-t23-I";
      } else if (forest.path(r(m("v4")), r(m("t23")))) {
        set(m("v2"), F);
        set(m("v3"), I);
        out.case_label = "case2-path-v4";
      } else {
        set(m("v2"), I);
        set(m("v3"), F);
        out.case_label = "case2-no-path-v4";
      }
      if (reflect) out.case_label += "-reflected";
      break;
    }
    case HitKind::mm_face: {
      if (col("v5") == I) {
        for (const char* l : {"v1", "v4", "v6", "v7"}) set(l, F);
        if (col("t23") == I) {
          set("v2", F);
          set("v3", F);
          out.case_label = "case1-t23-I";
        } else if (forest.path(r("t18"), r("t23"))) {
          set("v2", I);
          set("v3", F);
          out.case_label = "case1-path-t18";
        } else {
          set("v2", F);
          set("v3", I);
          out.case_label = "case1-no-path-t18";
        }
        break;
      }
      const bool reflect = col("t18") == F;
      auto m = [&](const char* l) -> const char* {
        if (!reflect) return l;
        static const std::map<std::string, const char*> sigma{
            {"v1", "v4"}, {"v2", "v3"}, {"v3", "v2"}, {"v4", "v1"}, {"v5", "v8"},
            {"v6", "v7"}, {"v7", "v6"}, {"v8", "v5"}, {"t18", "t45"}, {"t45", "t18"},
            {"t23", "t23"}, {"t56", "t78"}, {"t78", "t56"}};
        return sigma.at(l);
      };
      set(m("v1"), F);
      set(m("v3"), F);
      set(m("v4"), I);
      set(m("v2"), opposite(col(m("t23"))));
      set(m("v6"), col(m("t78")));
      set(m("v7"), col(m("t56")));
      out.case_label = reflect ? "case2-reflected" : "case2";
      break;
    }
    default:
      throw Error(ErrorKind::invalid_hit, to_string(t.kind) + " traces cannot be lifted");
  }
  return out;
}

/// Why a lifted coloring is not a superextension, or nothing when it is.
inline std::optional<std::string> lift_defect(const Graph& g, const CycleRef& c0,
                                              const IFColoring& lifted) {
  if (lifted.size() != g.order()) return "coloring is not total";
  if (auto v = validate(g, lifted)) {
    std::string w;
    for (Vertex x : v->witness) w += " " + std::to_string(x);
    return std::string(v->kind == Violation::Kind::i_edge ? "I-edge" : "F-cycle") + ":" + w;
  }
  if (auto p = find_violating_path(g, c0, lifted)) {
    std::string w;
    for (Vertex x : *p) w += " " + std::to_string(x);
    return "violating F-path:" + w;
  }
  return std::nullopt;
}

/// lift_unchecked followed by validation; LiftFailed when the case analysis
/// produced an invalid coloring.
inline LiftResult lift(const Graph& g, const CycleRef& c0, const ReductionTrace& t,
                       const IFColoring& star) {
  auto out = lift_unchecked(g, c0, t, star);
  if (auto defect = lift_defect(g, c0, out.coloring)) {
    throw Error(ErrorKind::lift_failed, out.case_label + ": " + *defect);
  }
  return out;
}

using LiftFunction =
    std::function<LiftResult(const Graph&, const CycleRef&, const ReductionTrace&, const IFColoring&)>;

struct LiftFailure {
  IFColoring precoloring;
  IFColoring star_coloring;
  IFColoring lifted;
  std::string case_label;
  std::string defect;
};

struct ReducibilityReport {
  ReductionTrace trace;
  std::size_t star_order = 0;
  std::size_t precolorings = 0;
  std::size_t precolorings_without_extension = 0;
  std::size_t superextensions = 0;
  std::map<std::string, std::size_t> case_counts;
  std::vector<LiftFailure> failures;

  bool ok() const { return failures.empty(); }
};

namespace detail {

inline void require_c0_untouched(const Graph& g, const CycleRef& c0, const ReductionTrace& t) {
  for (Vertex v : c0.vertices) {
    require_hit(!t.deleted.count(v), "reduction deletes C0 vertex " + std::to_string(v));
  }
  if (t.identified) {
    require_hit(!c0.contains(t.identified->second),
                "reduction merges two C0 vertices or absorbs " +
                    std::to_string(t.identified->second));
  }
  Graph star = apply_trace(g, t);
  Graph before = induced(g, {c0.vertices.begin(), c0.vertices.end()});
  Graph after = induced(star, {c0.vertices.begin(), c0.vertices.end()});
  require_hit(before == after, "reduction changes the graph induced on C0");
}

}  // namespace detail

/// For every valid precoloring of C0 and every superextension of it in G*,
/// lifts to G and checks the result independently.
inline ReducibilityReport verify_reducibility(const Graph& g, const CycleRef& c0,
                                              const ConfigurationHit& hit,
                                              const LiftFunction& lift_fn = lift_unchecked) {
  require_cycle(g, c0);
  auto [star, trace] = reduce(g, hit, &c0);
  if (star.order() > 24) {
    throw Error(ErrorKind::too_large,
                "G* has " + std::to_string(star.order()) + " vertices (limit 24)");
  }
  detail::require_c0_untouched(g, c0, trace);

  ReducibilityReport report;
  report.trace = trace;
  report.star_order = star.order();
  for (const auto& pre : cycle_precolorings(g, c0)) {
    ++report.precolorings;
    std::size_t before = report.superextensions;
    enumerate_superextensions(star, c0, pre, [&](const IFColoring& ext) {
      ++report.superextensions;
      LiftResult lifted;
      try {
        lifted = lift_fn(g, c0, trace, ext);
      } catch (const Error& e) {
        report.failures.push_back({pre, ext, {}, "", e.what()});
        return true;
      }
      ++report.case_counts[lifted.case_label];
      if (auto defect = lift_defect(g, c0, lifted.coloring)) {
        report.failures.push_back({pre, ext, lifted.coloring, lifted.case_label, *defect});
      }
      return true;
    });
    if (report.superextensions == before) ++report.precolorings_without_extension;
  }
  return report;
}

}  // namespace nbp
