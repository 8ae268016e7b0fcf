#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

#include "json.hpp"
#include "nbp/coloring.hpp"
#include "nbp/configuration.hpp"
#include "nbp/discharging.hpp"
#include "nbp/reduction.hpp"

namespace nbp::report {

using json = nlohmann::json;

/// FNV-1a 64-bit, as 16 hex digits.
inline std::string digest(const std::string& canonical) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline json to_json(const IFColoring& c) {
  json out = json::array();
  for (const auto& [v, col] : c) out.push_back({v, std::string(1, to_char(col))});
  return out;
}

inline json to_json(const std::vector<Vertex>& vs) {
  json out = json::array();
  for (Vertex v : vs) out.push_back(v);
  return out;
}

inline json to_json(ThirdCharge c) { return {{"thirds", c.thirds}, {"text", c.str()}}; }

inline json to_json(const Element& e) { return {{"kind", e.kind_name()}, {"id", e.id}}; }

inline json to_json(const ChargeLedger& ledger) {
  json elements = json::array();
  for (const auto& e : ledger.entries()) {
    elements.push_back({{"id", e.element.id},
                        {"kind", e.element.kind_name()},
                        {"initial", to_json(e.initial)},
                        {"ch1", to_json(e.ch1)},
                        {"final", to_json(e.final)}});
  }
  json transfers = json::array();
  for (const auto& t : ledger.transfers()) {
    transfers.push_back(
        {{"rule", t.rule}, {"from", to_json(t.from)}, {"to", to_json(t.to)}, {"thirds", t.amount.thirds}});
  }
  return {{"elements", elements},
          {"transfers", transfers},
          {"totals",
           {{"initial", to_json(ledger.total_initial())},
            {"ch1", to_json(ledger.total_ch1())},
            {"final", to_json(ledger.total_final())}}}};
}

inline json to_json(const ConfigurationHit& h) {
  json roles = json::object();
  json order = json::array();
  for (const auto& [label, v] : h.roles) {
    roles[label] = v;
    order.push_back(label);
  }
  json out = {{"kind", to_string(h.kind)}, {"roles", roles}, {"role_order", order}};
  if (h.face) out["face"] = *h.face;
  if (!h.name.empty()) out["name"] = h.name;
  return out;
}

inline json to_json(const std::vector<ConfigurationHit>& hits) {
  json out = json::array();
  for (const auto& h : hits) out.push_back(to_json(h));
  return out;
}

inline json to_json(const VertexClassification& cls) {
  json vertices = json::array();
  for (const auto& [v, fl] : cls.vertex) {
    vertices.push_back({{"id", v},
                        {"degree", fl.degree},
                        {"internal", fl.internal},
                        {"bad", fl.bad},
                        {"willing", fl.willing},
                        {"content", fl.content},
                        {"special", cls.special_anywhere(v)}});
  }
  json poor = json::array();
  for (auto [v, f] : cls.poor_to) poor.push_back({v, f});
  json special = json::array();
  for (auto [v, f] : cls.special_to) special.push_back({v, f});
  return {{"vertices", vertices}, {"poor_to", poor}, {"special_to", special}};
}

inline json to_json(const ReductionTrace& t) {
  json roles = json::object();
  for (const auto& [label, v] : t.roles) roles[label] = v;
  json deleted = json::array();
  for (Vertex v : t.deleted) deleted.push_back(v);
  json added = json::array();
  for (auto [a, b] : t.added) added.push_back({a, b});
  json out = {{"kind", to_string(t.kind)}, {"roles", roles}, {"deleted", deleted}, {"added", added}};
  out["identified"] =
      t.identified ? json{{"kept", t.identified->first}, {"absorbed", t.identified->second}} : json();
  return out;
}

inline json to_json(const AuditVerdict& v) {
  json findings = json::array();
  for (const auto& f : v.findings) findings.push_back({{"reason", f.reason}, {"witness", to_json(f.witness)}});
  json bounds = json::array();
  for (const auto& b : v.bound_failures) {
    bounds.push_back({{"element", to_json(b.element)}, {"final", to_json(b.final)}, {"bound", b.bound}});
  }
  return {{"verdict", to_string(v.kind)},
          {"findings", findings},
          {"bound_failures", bounds},
          {"fa_structures", v.fa_structures}};
}

inline json to_json(const ReducibilityReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"precoloring", to_json(f.precoloring)},
                        {"star_coloring", to_json(f.star_coloring)},
                        {"lifted", to_json(f.lifted)},
                        {"case", f.case_label},
                        {"defect", f.defect}});
  }
  json cases = json::object();
  for (const auto& [k, n] : r.case_counts) cases[k] = n;
  return {{"trace", to_json(r.trace)},
          {"star_order", r.star_order},
          {"precolorings", r.precolorings},
          {"precolorings_without_extension", r.precolorings_without_extension},
          {"superextensions", r.superextensions},
          {"case_counts", cases},
          {"failures", failures},
          {"ok", r.ok()}};
}

inline json to_json(const SuperextensionReport& r) {
  json verdicts = json::array();
  for (const auto& v : r.verdicts) {
    verdicts.push_back({{"precoloring", to_json(v.precoloring)},
                        {"extension", v.extension ? to_json(*v.extension) : json()}});
  }
  return {{"cycle", to_json(r.cycle.vertices)},
          {"verdicts", verdicts},
          {"failures", r.failures()},
          {"superextendable", r.superextendable()}};
}

/// Stable text form: sorted keys, two-space indent, trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace nbp::report
