#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "nbp/configuration.hpp"
#include "nbp/cycles.hpp"

namespace nbp {

/// An exact charge in units of 1/3.
struct ThirdCharge {
  std::int64_t thirds = 0;

  static constexpr ThirdCharge whole(std::int64_t units) { return {units * 3}; }

  friend constexpr ThirdCharge operator+(ThirdCharge a, ThirdCharge b) { return {a.thirds + b.thirds}; }
  friend constexpr ThirdCharge operator-(ThirdCharge a, ThirdCharge b) { return {a.thirds - b.thirds}; }
  constexpr ThirdCharge& operator+=(ThirdCharge o) {
    thirds += o.thirds;
    return *this;
  }
  constexpr ThirdCharge& operator-=(ThirdCharge o) {
    thirds -= o.thirds;
    return *this;
  }
  friend constexpr auto operator<=>(ThirdCharge, ThirdCharge) = default;

  /// "p/3" rendering.
  std::string str() const { return std::to_string(thirds) + "/3"; }
};

inline constexpr ThirdCharge kOneThird{1};
inline constexpr ThirdCharge kTwoThirds{2};
inline constexpr ThirdCharge kOne{3};
inline constexpr ThirdCharge kFourThirds{4};

enum class ElementKind { vertex, face, outer_face };

struct Element {
  ElementKind kind = ElementKind::vertex;
  int id = 0;

  friend auto operator<=>(const Element&, const Element&) = default;

  std::string label() const { return (kind == ElementKind::vertex ? "v" : "f") + std::to_string(id); }
  std::string kind_name() const {
    switch (kind) {
      case ElementKind::vertex: return "vertex";
      case ElementKind::face: return "face";
      case ElementKind::outer_face: return "outer_face";
    }
    return "?";
  }
};

struct ChargeEntry {
  Element element;
  ThirdCharge initial;
  ThirdCharge ch1;
  ThirdCharge final;
};

struct Transfer {
  std::string rule;
  Element from;
  Element to;
  ThirdCharge amount;

  friend bool operator==(const Transfer&, const Transfer&) = default;
};

/// Charges per vertex and face at three stages plus every rule transfer.
class ChargeLedger {
 public:
  const std::vector<ChargeEntry>& entries() const { return entries_; }
  const std::vector<Transfer>& transfers() const { return transfers_; }

  const ChargeEntry& at(Element e) const { return entries_.at(index_.at(e)); }
  const ChargeEntry& vertex(Vertex v) const { return at({ElementKind::vertex, v}); }
  const ChargeEntry& face(int f) const {
    auto it = index_.find({ElementKind::face, f});
    if (it == index_.end()) it = index_.find({ElementKind::outer_face, f});
    return entries_.at(it->second);
  }

  ThirdCharge total_initial() const { return sum(&ChargeEntry::initial); }
  ThirdCharge total_ch1() const { return sum(&ChargeEntry::ch1); }
  ThirdCharge total_final() const { return sum(&ChargeEntry::final); }

  void add(Element e, ThirdCharge initial) {
    index_[e] = entries_.size();
    entries_.push_back({e, initial, initial, initial});
  }

  ChargeEntry& mutable_at(Element e) { return entries_.at(index_.at(e)); }
  void copy_ch1_to_final() {
    for (auto& e : entries_) e.final = e.ch1;
  }
  void log(Transfer t) { transfers_.push_back(std::move(t)); }

 private:
  ThirdCharge sum(ThirdCharge ChargeEntry::*field) const {
    ThirdCharge total;
    for (const auto& e : entries_) total += e.*field;
    return total;
  }

  std::vector<ChargeEntry> entries_;
  std::map<Element, std::size_t> index_;
  std::vector<Transfer> transfers_;
};

inline Element face_element(const PlanarMap& map, int f) {
  return {map.is_outer(f) ? ElementKind::outer_face : ElementKind::face, f};
}

/// ch(v) = d(v) - 4, ch(f) = d(f) - 4, ch(f0) = d(f0) + 4; total must be 0.
inline ChargeLedger initial_charges(const PlanarMap& map) {
  ChargeLedger ledger;
  for (Vertex v : map.graph().vertices()) {
    ledger.add({ElementKind::vertex, v},
               ThirdCharge::whole(static_cast<std::int64_t>(map.graph().degree(v)) - 4));
  }
  for (const Face& f : map.faces()) {
    auto d = static_cast<std::int64_t>(f.degree());
    ledger.add(face_element(map, f.id), ThirdCharge::whole(map.is_outer(f.id) ? d + 4 : d - 4));
  }
  if (ledger.total_initial().thirds != 0) {
    throw Error(ErrorKind::euler_charge_mismatch,
                "initial charges sum to " + ledger.total_initial().str());
  }
  return ledger;
}

namespace detail {

inline std::vector<Vertex> distinct_walk(const Face& f) {
  std::vector<Vertex> out;
  for (Vertex v : f.walk()) {
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

// Internal non-bad 3-vertex, or poor to this face.
inline bool willing_to(const VertexClassification& cls, Vertex v, int f) {
  const auto& fl = cls.at(v);
  return (fl.willing && fl.internal && fl.degree == 3 && !fl.bad) || cls.poor(v, f);
}

inline int triangles_adjacent_to(const PlanarMap& map, Vertex v, int f) {
  int n = 0;
  for (int t : map.faces_at(v)) {
    if (is_triangle_face(map, t) && map.share_edge(t, f)) ++n;
  }
  return n;
}

}  // namespace detail

/// Applies R1-R4 simultaneously from the classification of the original map
/// (stage ch1), then R5 (stage final).
inline ChargeLedger apply_rules(ChargeLedger ledger, const PlanarMap& map, const CycleRef& c0,
                                const VertexClassification& cls) {
  (void)c0;
  auto move = [&](const std::string& rule, Element from, Element to, ThirdCharge amount) {
    ledger.mutable_at(from).ch1 -= amount;
    ledger.mutable_at(to).ch1 += amount;
    ledger.log({rule, from, to, amount});
  };
  auto vtx = [](Vertex v) { return Element{ElementKind::vertex, v}; };

  for (const Face& face : map.faces()) {
    const Element fe = face_element(map, face.id);
    const auto boundary = detail::distinct_walk(face);

    if (detail::is_triangle_face(map, face.id)) {
      for (Vertex v : boundary) move("R1", vtx(v), fe, kOneThird);
      continue;
    }

    if (!map.is_outer(face.id) && face.degree() >= 8) {
      for (Vertex v : boundary) {
        const auto& fl = cls.at(v);
        if (fl.degree == 2 || fl.bad) {
          move("R2.1", fe, vtx(v), kTwoThirds);
        } else if (detail::willing_to(cls, v, face.id) || (fl.content && !cls.special(v, face.id))) {
          move("R2.2", fe, vtx(v), kOneThird);
        }
        if (fl.internal && fl.degree >= 5 && detail::triangles_adjacent_to(map, v, face.id) >= 2) {
          move("R3.1", vtx(v), fe, kOneThird);
        } else if (!fl.internal && fl.degree >= 4) {
          move("R3.2", vtx(v), fe, kOneThird);
        }
      }
      continue;
    }

    if (map.is_outer(face.id)) {
      for (Vertex v : boundary) {
        const auto& fl = cls.at(v);
        if (fl.degree == 2 || cls.special_anywhere(v)) {
          move("R4.1", fe, vtx(v), kFourThirds);
        } else if (fl.degree >= 3) {
          move("R4.2", fe, vtx(v), kOne);
        }
      }
    }
  }

  ledger.copy_ch1_to_final();

  const Element outer = face_element(map, map.outer_face());
  for (const Face& face : map.faces()) {
    if (map.is_outer(face.id)) continue;
    const Element fe = face_element(map, face.id);
    ThirdCharge surplus = ledger.at(fe).ch1;
    if (surplus.thirds > 0) {
      ledger.mutable_at(fe).final -= surplus;
      ledger.mutable_at(outer).final += surplus;
      ledger.log({"R5", fe, outer, surplus});
    }
  }
  return ledger;
}

enum class VerdictKind { reducible_configuration_present, charge_contradiction, bound_violation };

inline std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::reducible_configuration_present: return "ReducibleConfigurationPresent";
    case VerdictKind::charge_contradiction: return "ChargeContradiction";
    case VerdictKind::bound_violation: return "BoundViolation";
  }
  return "?";
}

struct Finding {
  std::string reason;
  std::vector<Vertex> witness;
};

struct BoundFailure {
  Element element;
  ThirdCharge final;
  std::string bound;  // ">= 0" or "> 0"
};

struct AuditVerdict {
  VerdictKind kind = VerdictKind::bound_violation;
  std::vector<Finding> findings;
  std::vector<BoundFailure> bound_failures;
  int fa_structures = 0;
};

namespace detail {

inline std::vector<Finding> precondition_findings(const PlanarMap& map, const CycleRef& c0,
                                                  const VertexClassification& cls,
                                                  const std::vector<ConfigurationHit>& hits) {
  std::vector<Finding> out;
  const Graph& g = map.graph();
  std::set<Vertex> on_c0(c0.vertices.begin(), c0.vertices.end());

  if (c0.length() > 14) out.push_back({"outer-cycle-longer-than-14", c0.vertices});
  if (g.order() == c0.length()) out.push_back({"graph-equals-outer-cycle", c0.vertices});
  if (auto c = cycles_in_length_range(g, 4, 7)) out.push_back({"cycle-of-length-4-to-7", c->vertices});
  if (!is_biconnected(g)) out.push_back({"not-2-connected", articulation_points(g)});
  for (auto [a, b] : g.edges()) {
    if (on_c0.count(a) && on_c0.count(b) && !c0.has_edge(a, b)) {
      out.push_back({"outer-cycle-chord", {a, b}});
      break;
    }
  }
  for_each_cycle(g, 14, [&](const CycleRef& c) {
    if (map.sides_of(c).separating) {
      out.push_back({"separating-cycle-of-length-at-most-14", c.vertices});
      return false;
    }
    return true;
  });

  for (const auto& h : hits) {
    switch (h.kind) {
      case HitKind::low_degree: out.push_back({"internal-vertex-of-degree-at-most-2", h.ids()}); break;
      case HitKind::tetrad: out.push_back({"tetrad", h.ids()}); break;
      case HitKind::m_face: out.push_back({"m-face", h.ids()}); break;
      case HitKind::mm_face: out.push_back({"mm-face", h.ids()}); break;
      case HitKind::fb_catalog: out.push_back({"forbidden-subgraph:" + h.name, h.ids()}); break;
      case HitKind::fa1:
      case HitKind::fa2: break;  // not reducible; they only steer the rules
    }
  }

  // Bad runs along internal faces: no five in a row, and any four in a row
  // v1..v4 between v0 and v5 puts v0v1, v2v3, v4v5 on 3-faces.
  for (const Face& face : map.faces()) {
    if (map.is_outer(face.id)) continue;
    auto walk = face.walk();
    const std::size_t d = walk.size();
    if (d < 6 || std::set<Vertex>(walk.begin(), walk.end()).size() != d) continue;
    auto bad = [&](std::size_t i) { return cls.at(walk[i % d]).bad; };
    auto tri = [&](std::size_t i) {
      return triangle_apex(map, face.id, walk[i % d], walk[(i + 1) % d]).has_value();
    };
    for (std::size_t s = 0; s < d; ++s) {
      if (bad(s) && bad(s + 1) && bad(s + 2) && bad(s + 3) && bad(s + 4)) {
        out.push_back({"five-consecutive-bad-vertices",
                       {walk[s], walk[(s + 1) % d], walk[(s + 2) % d], walk[(s + 3) % d],
                        walk[(s + 4) % d]}});
        break;
      }
      if (bad(s + 1) && bad(s + 2) && bad(s + 3) && bad(s + 4) &&
          !(tri(s) && tri(s + 2) && tri(s + 4))) {
        out.push_back({"four-bad-run-without-alternating-3-faces",
                       {walk[s], walk[(s + 1) % d], walk[(s + 2) % d], walk[(s + 3) % d],
                        walk[(s + 4) % d], walk[(s + 5) % d]}});
        break;
      }
    }
  }
  return out;
}

}  // namespace detail

/// Verdict over one map: a reducible structure, a bound failure, or the
/// alarming case where every bound holds (impossible with total 0).
inline AuditVerdict audit(const PlanarMap& map, const CycleRef& c0, const ChargeLedger& ledger,
                          const VertexClassification& cls,
                          const std::vector<ConfigurationHit>& hits) {
  AuditVerdict verdict;
  verdict.fa_structures = count_fa_structures(cls);
  verdict.findings = detail::precondition_findings(map, c0, cls, hits);

  for (const auto& e : ledger.entries()) {
    if (e.element.kind == ElementKind::outer_face) {
      if (e.final.thirds <= 0) verdict.bound_failures.push_back({e.element, e.final, "> 0"});
    } else if (e.final.thirds < 0) {
      verdict.bound_failures.push_back({e.element, e.final, ">= 0"});
    }
  }
  if (verdict.fa_structures > 3) {
    verdict.bound_failures.push_back(
        {face_element(map, map.outer_face()), ThirdCharge::whole(verdict.fa_structures), "n_Fa <= 3"});
  }

  if (!verdict.findings.empty()) {
    verdict.kind = VerdictKind::reducible_configuration_present;
  } else if (verdict.bound_failures.empty()) {
    verdict.kind = VerdictKind::charge_contradiction;
  } else {
    verdict.kind = VerdictKind::bound_violation;
  }
  return verdict;
}

struct AuditRun {
  VertexClassification classification;
  std::vector<ConfigurationHit> hits;
  ChargeLedger ledger;
  AuditVerdict verdict;
};

/// classify, detect, charge, discharge and audit in one pass.
inline AuditRun run_audit(const PlanarMap& map, const CycleRef& c0,
                          const std::vector<NamedGraph>& catalog = {}) {
  AuditRun run;
  run.classification = classify(map, c0);
  run.hits = detect_all(map, c0, run.classification, catalog);
  run.ledger = apply_rules(initial_charges(map), map, c0, run.classification);
  run.verdict = audit(map, c0, run.ledger, run.classification, run.hits);
  return run;
}

}  // namespace nbp
