#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nbp/corpus.hpp"
#include "nbp/cycles.hpp"
#include "nbp/discharging.hpp"
#include "nbp/reduction.hpp"

namespace {

constexpr double kOracleSeconds = 60.0;
constexpr double kCorpusSeconds = 300.0;
constexpr std::size_t kPoolSize = 240;
constexpr int kGenerated = 500;
constexpr int kRelabelings = 20;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::vector<nbp::Graph> small_pool() {
  std::mt19937_64 rng(20261016);
  std::vector<nbp::Graph> pool;
  while (pool.size() < kPoolSize) {
    const int n = 1 + static_cast<int>(rng() % 10);
    const double p = std::uniform_real_distribution<double>(0.1, 0.8)(rng);
    nbp::Graph g;
    for (nbp::Vertex v = 0; v < n; ++v) g.add_vertex(v);
    for (nbp::Vertex u = 0; u < n; ++u) {
      for (nbp::Vertex v = u + 1; v < n; ++v) {
        if (std::uniform_real_distribution<double>(0, 1)(rng) < p) g.add_edge(u, v);
      }
    }
    pool.push_back(std::move(g));
  }
  for (const auto& c : nbp::classics()) pool.push_back(c.graph);
  return pool;
}

nbp::GenParams corpus_params(int i) {
  nbp::GenParams p;
  p.target = 9 + i % 32;
  p.seed = static_cast<std::uint64_t>(i) + 1;
  p.strategy = i % 2 ? nbp::Strategy::subdivision : nbp::Strategy::triangle_glue;
  p.density = 0.25 + 0.25 * (i % 3);
  return p;
}

struct Corpus {
  std::vector<nbp::PlanarMap> maps;  // every valid map, fixtures first
  std::vector<std::pair<nbp::PlanarMap, nbp::CycleRef>> audited;
  int without_outer_choice = 0;
};

const Corpus& corpus() {
  static const Corpus c = [] {
    Corpus out;
    for (const auto& name : nbp::fixture_names()) {
      auto m = nbp::build_fixture(name);
      out.audited.emplace_back(m, nbp::outer_cycle(m));
      out.maps.push_back(std::move(m));
    }
    for (int i = 0; i < kGenerated; ++i) {
      auto m = nbp::generate(corpus_params(i));
      if (auto chosen = nbp::choose_outer(m)) {
        out.audited.push_back(*chosen);
      } else {
        ++out.without_outer_choice;
      }
      out.maps.push_back(std::move(m));
    }
    return out;
  }();
  return c;
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto pool = small_pool();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const bool solved = nbp::solve(pool[i]).has_value();
    const bool counted = nbp::count_all(pool[i]) > 0;
    if (solved != counted) o.fail("graph " + std::to_string(i) + " disagrees");
  }
  const double s = seconds_since(t0);
  if (s >= kOracleSeconds) o.fail("took " + std::to_string(s) + " s");
  if (o.pass) o.detail = std::to_string(pool.size()) + " graphs in " + std::to_string(s) + " s";
  return o;
}

Outcome known_negatives() {
  Outcome o;
  for (const auto* name : {"k4", "moser"}) {
    if (nbp::solve(nbp::classic(name))) o.fail(std::string(name) + " reported near-bipartite");
  }
  for (const auto* name : {"c3", "c5", "c8", "bowtie"}) {
    const auto g = nbp::classic(name);
    auto c = nbp::solve(g);
    if (!c) {
      o.fail(std::string(name) + " has no coloring");
    } else if (nbp::validate(g, *c)) {
      o.fail(std::string(name) + " certificate invalid");
    }
  }
  return o;
}

Outcome corpus_colorable() {
  Outcome o;
  const auto t0 = Clock::now();
  int checked = 0;
  for (int i = 0; i < kGenerated; ++i) {
    auto m = nbp::generate(corpus_params(i));
    const auto& g = m.graph();
    if (g.order() > 40) o.fail("map " + std::to_string(i) + " has more than 40 vertices");
    if (nbp::cycles_in_length_range(g, 4, 7)) o.fail("map " + std::to_string(i) + " has a 4-7 cycle");
    auto c = nbp::solve(g);
    if (!c || nbp::validate(g, *c)) o.fail("map " + std::to_string(i) + " not colored");
    ++checked;
  }
  const double s = seconds_since(t0);
  if (s >= kCorpusSeconds) o.fail("took " + std::to_string(s) + " s");
  if (o.pass) o.detail = std::to_string(checked) + " maps in " + std::to_string(s) + " s";
  return o;
}

nbp::ChargeLedger discharge(const nbp::PlanarMap& m, const nbp::CycleRef& c0) {
  return nbp::apply_rules(nbp::initial_charges(m), m, c0, nbp::classify(m, c0));
}

Outcome euler_identity() {
  Outcome o;
  for (std::size_t i = 0; i < corpus().maps.size(); ++i) {
    auto total = nbp::initial_charges(corpus().maps[i]).total_initial();
    if (total.thirds != 0) o.fail("map " + std::to_string(i) + " total " + total.str());
  }
  if (o.pass) o.detail = std::to_string(corpus().maps.size()) + " maps";
  return o;
}

Outcome conservation() {
  Outcome o;
  for (std::size_t i = 0; i < corpus().audited.size(); ++i) {
    const auto& [m, c0] = corpus().audited[i];
    auto ledger = discharge(m, c0);
    if (ledger.total_ch1().thirds != 0 || ledger.total_final().thirds != 0) {
      o.fail("map " + std::to_string(i) + " totals drift");
    }
    for (const auto& e : ledger.entries()) {
      if (e.element.kind == nbp::ElementKind::face && e.final.thirds > 0) {
        o.fail("map " + std::to_string(i) + " face " + std::to_string(e.element.id) + " keeps " +
               e.final.str());
      }
    }
  }
  if (o.pass) o.detail = std::to_string(corpus().audited.size()) + " maps";
  return o;
}

Outcome vertex_closed_forms() {
  struct Case {
    std::string label;
    nbp::PlanarMap map;
    nbp::Vertex v;
    std::int64_t expected;  // thirds
  };
  // Each closed form is 3d - 12 plus transfers in thirds.
  const std::vector<Case> cases{
      {"2-vertex on C0 with 8-face", nbp::cycle_map(8), 0, -6 + 2 + 4},
      {"content 3-vertex", nbp::ring_with_ear(10), 0, -3 - 1 + 1 + 3},
      {"special content 3-vertex", nbp::fa1_fixture(), 1, -3 - 1 + 4},
      {"bad 3-vertex", nbp::tetrad_fixture(), 14, -3 - 1 + 2 + 2},
      {"willing 3-vertex", nbp::hub_map(21, {0, 7, 14}), 21, -3 + 1 + 1 + 1},
      {"4-vertex n3=0", nbp::hub_map(24, {0, 6, 12, 18}), 24, 0},
      {"4-vertex n3=1", nbp::hub_map(19, {0, 1, 7, 13}), 19, -1 + 1},
      {"4-vertex n3=2", nbp::hub_map(14, {0, 1, 7, 8}), 14, -1 - 1 + 1 + 1},
      {"5-vertex n3=2", nbp::hub_map(20, {0, 1, 7, 8, 14}), 20, 3 - 1 - 1 - 1},
  };
  Outcome o;
  for (const auto& c : cases) {
    auto final = discharge(c.map, nbp::outer_cycle(c.map)).vertex(c.v).final;
    if (final.thirds != c.expected) {
      o.fail(c.label + ": " + final.str() + " vs " + std::to_string(c.expected) + "/3");
    }
  }
  if (o.pass) o.detail = std::to_string(cases.size()) + " cases";
  return o;
}

Outcome worked_ledger() {
  Outcome o;
  auto m = nbp::cycle_map(8);
  auto ledger = discharge(m, nbp::outer_cycle(m));
  for (const auto& f : m.faces()) {
    const auto& e = ledger.face(f.id);
    if (m.is_outer(f.id)) {
      if (e.final.thirds != 4) o.fail("f0 final " + e.final.str());
    } else if (e.ch1.thirds != -4) {
      o.fail("inner ch1 " + e.ch1.str());
    }
  }
  if (ledger.total_final().thirds != 0) o.fail("total " + ledger.total_final().str());
  return o;
}

nbp::ConfigurationHit first_hit(const nbp::PlanarMap& m, nbp::HitKind kind) {
  auto c0 = nbp::outer_cycle(m);
  for (auto& h : nbp::detect_all(m, c0, nbp::classify(m, c0))) {
    if (h.kind == kind) return h;
  }
  throw nbp::Error(nbp::ErrorKind::invalid_hit, "no " + nbp::to_string(kind) + " hit");
}

Outcome reducibility() {
  Outcome o;
  std::size_t total = 0;
  const std::vector<std::pair<std::string, nbp::HitKind>> hosts{
      {"tetrad", nbp::HitKind::tetrad},
      {"m_face", nbp::HitKind::m_face},
      {"mm_face", nbp::HitKind::mm_face}};
  for (const auto& [name, kind] : hosts) {
    auto m = nbp::build_fixture(name);
    auto rep = nbp::verify_reducibility(m.graph(), nbp::outer_cycle(m), first_hit(m, kind));
    if (!rep.ok()) o.fail(name + ": " + std::to_string(rep.failures.size()) + " failures");
    if (rep.superextensions == 0) o.fail(name + ": nothing checked");
    total += rep.superextensions;
  }
  auto m = nbp::tetrad_fixture();
  auto corrupt = [](const nbp::Graph& g, const nbp::CycleRef& c, const nbp::ReductionTrace& t,
                    const nbp::IFColoring& star) {
    auto out = nbp::lift_unchecked(g, c, t, star);
    const nbp::Vertex v2 = t.role("v2");
    out.coloring[v2] = nbp::opposite(out.coloring.at(v2));
    return out;
  };
  auto control = nbp::verify_reducibility(m.graph(), nbp::outer_cycle(m),
                                          first_hit(m, nbp::HitKind::tetrad), corrupt);
  if (control.failures.empty()) o.fail("corrupted lift not caught");
  if (o.pass) {
    o.detail = std::to_string(total) + " lifts checked, control " +
               std::to_string(control.failures.size()) + " failures";
  }
  return o;
}

Outcome superextension_desk_check() {
  Outcome o;
  const nbp::CycleRef tri{{0, 1, 2}};
  auto c3 = nbp::check_superextendable(nbp::classic("c3"), tri);
  if (c3.verdicts.size() != 3 || !c3.superextendable()) o.fail("C3 does not superextend");
  auto k4 = nbp::check_superextendable(nbp::classic("k4"), tri);
  if (k4.verdicts.empty() || k4.failures() != k4.verdicts.size()) {
    o.fail("K4 has a superextending precoloring");
  }
  return o;
}

Outcome audit_soundness() {
  Outcome o;
  for (std::size_t i = 0; i < corpus().audited.size(); ++i) {
    const auto& [m, c0] = corpus().audited[i];
    auto run = nbp::run_audit(m, c0);
    const auto& v = run.verdict;
    if (v.kind == nbp::VerdictKind::charge_contradiction) {
      o.fail("map " + std::to_string(i) + " reached ChargeContradiction");
    } else if (v.findings.empty() && v.bound_failures.empty()) {
      o.fail("map " + std::to_string(i) + " has no witness");
    }
  }
  if (o.pass) {
    o.detail = std::to_string(corpus().audited.size()) + " maps, " +
               std::to_string(corpus().without_outer_choice) + " without an eligible C0";
  }
  return o;
}

using Signature = std::set<std::pair<std::string, std::set<nbp::Vertex>>>;

Signature signature(const nbp::PlanarMap& m, const std::function<nbp::Vertex(nbp::Vertex)>& back) {
  auto c0 = nbp::outer_cycle(m);
  Signature out;
  for (const auto& h : nbp::detect_all(m, c0, nbp::classify(m, c0))) {
    std::set<nbp::Vertex> fp;
    for (auto v : h.footprint()) fp.insert(back(v));
    out.emplace(nbp::to_string(h.kind), std::move(fp));
  }
  return out;
}

Outcome detector_fidelity() {
  Outcome o;
  std::mt19937_64 rng(7);
  const auto identity = [](nbp::Vertex v) { return v; };
  for (const auto& name : nbp::fixture_names()) {
    const auto m = nbp::build_fixture(name);
    const auto base = signature(m, identity);
    if (signature(nbp::mirrored(m), identity) != base) o.fail(name + " mirrored");
    const auto vs = m.graph().vertices();
    for (int r = 0; r < kRelabelings; ++r) {
      std::vector<nbp::Vertex> image(vs.size());
      std::iota(image.begin(), image.end(), 100);
      std::shuffle(image.begin(), image.end(), rng);
      std::map<nbp::Vertex, nbp::Vertex> perm;
      std::map<nbp::Vertex, nbp::Vertex> inverse;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        perm[vs[i]] = image[i];
        inverse[image[i]] = vs[i];
      }
      auto moved = nbp::relabeled(m, perm);
      if (signature(moved, [&](nbp::Vertex v) { return inverse.at(v); }) != base) {
        o.fail(name + " relabeling " + std::to_string(r));
      }
    }
  }
  if (o.pass) o.detail = std::to_string(kRelabelings) + " relabelings per fixture plus mirror";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"known negatives and certificates", known_negatives},
      {"generated maps are near-bipartite", corpus_colorable},
      {"initial charge total is zero", euler_identity},
      {"rules conserve charge", conservation},
      {"vertex closed forms", vertex_closed_forms},
      {"eight-cycle worked ledger", worked_ledger},
      {"reducibility fixtures", reducibility},
      {"superextension desk check", superextension_desk_check},
      {"audit never reaches charge contradiction", audit_soundness},
      {"detector invariance", detector_fidelity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s %zu %s%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
