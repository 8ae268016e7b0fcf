#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "nbp/configuration.hpp"
#include "nbp/corpus.hpp"
#include "nbp/cycles.hpp"

namespace {

using nbp::ConfigurationHit;
using nbp::HitKind;
using nbp::PlanarMap;
using nbp::Vertex;

std::vector<ConfigurationHit> hits_of(const PlanarMap& m, HitKind kind) {
  auto c0 = nbp::outer_cycle(m);
  auto cls = nbp::classify(m, c0);
  std::vector<ConfigurationHit> out;
  for (auto& h : nbp::detect_all(m, c0, cls)) {
    if (h.kind == kind) out.push_back(std::move(h));
  }
  return out;
}

// (kind, footprint) pairs, the relabeling-invariant view of a hit list.
std::set<std::pair<std::string, std::set<Vertex>>> signature(const PlanarMap& m) {
  auto c0 = nbp::outer_cycle(m);
  auto cls = nbp::classify(m, c0);
  std::set<std::pair<std::string, std::set<Vertex>>> out;
  for (const auto& h : nbp::detect_all(m, c0, cls)) out.insert({nbp::to_string(h.kind), h.footprint()});
  return out;
}

void expect_no_short_cycles(const PlanarMap& m) {
  EXPECT_FALSE(nbp::cycles_in_length_range(m.graph(), 4, 7));
}

TEST(ClassifyTest, EightCycleHasNoSpecialVertices) {
  auto m = nbp::cycle_map(8);
  auto cls = nbp::classify(m, nbp::outer_cycle(m));
  for (const auto& [v, fl] : cls.vertex) {
    EXPECT_FALSE(fl.internal);
    EXPECT_EQ(fl.degree, 2);
    EXPECT_FALSE(fl.bad || fl.willing || fl.content);
  }
  EXPECT_TRUE(cls.poor_to.empty());
  EXPECT_TRUE(cls.special_to.empty());
  EXPECT_TRUE(nbp::detect_all(m, nbp::outer_cycle(m), cls).empty());
}

TEST(ClassifyTest, InternalThreeVertexOnTriangleIsBad) {
  // Hub 14 joined to ring vertices 0, 1, 7: 3-face hub,0,1 and two 8+-faces.
  auto m = nbp::hub_map(14, {0, 1, 7});
  expect_no_short_cycles(m);
  auto cls = nbp::classify(m, nbp::outer_cycle(m));
  EXPECT_TRUE(cls.at(14).internal);
  EXPECT_TRUE(cls.at(14).bad);
  EXPECT_EQ(cls.at(14).triangles, 1);
  EXPECT_FALSE(cls.at(14).willing);
}

TEST(ClassifyTest, InternalThreeVertexWithoutTriangleIsWilling) {
  auto m = nbp::hub_map(21, {0, 7, 14});
  expect_no_short_cycles(m);
  auto cls = nbp::classify(m, nbp::outer_cycle(m));
  EXPECT_FALSE(cls.at(21).bad);
  EXPECT_TRUE(cls.at(21).willing);
}

TEST(ClassifyTest, FourVertexWithOneTriangleIsPoorToTheFarFace) {
  // Hub 19 on 0, 1, 7, 13: 3-face hub,0,1; 8-faces via 1..7, 7..13, 13..0.
  auto m = nbp::hub_map(19, {0, 1, 7, 13});
  expect_no_short_cycles(m);
  auto cls = nbp::classify(m, nbp::outer_cycle(m));
  ASSERT_TRUE(cls.at(19).internal);
  std::vector<int> poor_faces;
  for (auto [v, f] : cls.poor_to) {
    if (v == 19) poor_faces.push_back(f);
  }
  ASSERT_EQ(poor_faces.size(), 1u);
  const auto& far = m.face(poor_faces[0]);
  EXPECT_TRUE(far.contains(7));
  EXPECT_TRUE(far.contains(13));
  EXPECT_FALSE(far.contains(0));
  EXPECT_TRUE(cls.at(19).willing);
}

TEST(ClassifyTest, FourVertexWithTwoTrianglesIsPoorToFacesTouchingBoth) {
  auto m = nbp::hub_map(14, {0, 1, 7, 8});
  expect_no_short_cycles(m);
  auto cls = nbp::classify(m, nbp::outer_cycle(m));
  int count = 0;
  for (auto [v, f] : cls.poor_to) count += v == 14;
  EXPECT_EQ(count, 2);
}

TEST(ClassifyTest, FourVertexWithoutTrianglesIsNotPoor) {
  auto m = nbp::hub_map(24, {0, 6, 12, 18});
  expect_no_short_cycles(m);
  auto cls = nbp::classify(m, nbp::outer_cycle(m));
  EXPECT_TRUE(cls.poor_to.empty());
  EXPECT_FALSE(cls.at(24).willing);
}

TEST(ClassifyTest, ContentVertexOnRing) {
  // Ring vertices 1 and 3 of the Fa1 host each see one 3-face and one 8-face.
  auto m = nbp::fa1_fixture();
  auto cls = nbp::classify(m, nbp::outer_cycle(m));
  EXPECT_TRUE(cls.at(1).content);
  EXPECT_TRUE(cls.at(3).content);
  EXPECT_FALSE(cls.at(2).content);
  EXPECT_EQ(cls.at(2).degree, 2);
}

TEST(DetectorTest, FixturesAreFreeOfShortCycles) {
  for (const auto& name : nbp::fixture_names()) {
    SCOPED_TRACE(name);
    expect_no_short_cycles(nbp::build_fixture(name));
  }
}

TEST(DetectorTest, TetradFixtureHasOneTetrad) {
  auto m = nbp::tetrad_fixture();
  auto hits = hits_of(m, HitKind::tetrad);
  ASSERT_EQ(hits.size(), 1u);
  const auto& h = hits[0];
  std::set<Vertex> run{h.role("v1"), h.role("v2"), h.role("v3"), h.role("v4")};
  EXPECT_EQ(run, (std::set<Vertex>{14, 15, 16, 17}));
  std::set<Vertex> ends{h.role("x"), h.role("y")};
  EXPECT_EQ(ends, (std::set<Vertex>{0, 3}));
  std::set<Vertex> apexes{h.role("t12"), h.role("t34")};
  EXPECT_EQ(apexes, (std::set<Vertex>{18, 19}));
  EXPECT_TRUE(m.graph().adjacent(h.role("t12"), h.role("v1")));
  EXPECT_TRUE(m.graph().adjacent(h.role("t12"), h.role("v2")));
}

TEST(DetectorTest, NoTetradWithoutInternalThreeVertices) {
  EXPECT_TRUE(hits_of(nbp::cycle_map(14), HitKind::tetrad).empty());
  EXPECT_TRUE(hits_of(nbp::hub_map(24, {0, 6, 12, 18}), HitKind::tetrad).empty());
}

TEST(DetectorTest, MFaceFixture) {
  auto m = nbp::m_face_fixture();
  EXPECT_TRUE(hits_of(m, HitKind::tetrad).empty());
  auto hits = hits_of(m, HitKind::m_face);
  ASSERT_EQ(hits.size(), 1u);
  const auto& h = hits[0];
  EXPECT_EQ(h.role("v4"), 13);
  EXPECT_EQ(h.role("v8"), 17);
  EXPECT_EQ(m.graph().degree(h.role("v8")), 4u);
  EXPECT_TRUE(hits_of(m, HitKind::mm_face).empty());
}

TEST(DetectorTest, MMFaceFixture) {
  auto m = nbp::mm_face_fixture();
  ASSERT_EQ(hits_of(m, HitKind::mm_face).size(), 1u);
  EXPECT_TRUE(hits_of(m, HitKind::m_face).empty());
  auto h = hits_of(m, HitKind::mm_face)[0];
  EXPECT_GE(m.graph().degree(h.role("v5")), 4u);
  EXPECT_GE(m.graph().degree(h.role("v8")), 4u);
}

TEST(DetectorTest, NoEightFaceHitsOnEightCycle) {
  auto m = nbp::cycle_map(8);
  EXPECT_TRUE(hits_of(m, HitKind::m_face).empty());
  EXPECT_TRUE(hits_of(m, HitKind::mm_face).empty());
  EXPECT_TRUE(hits_of(m, HitKind::fa1).empty());
  EXPECT_TRUE(hits_of(m, HitKind::fa2).empty());
}

TEST(DetectorTest, Fa1FixtureMakesContentVerticesSpecial) {
  auto m = nbp::fa1_fixture();
  auto c0 = nbp::outer_cycle(m);
  auto cls = nbp::classify(m, c0);
  auto hits = hits_of(m, HitKind::fa1);
  ASSERT_EQ(hits.size(), 1u);
  const int f = *hits[0].face;
  EXPECT_EQ(std::set<Vertex>({hits[0].role("v1"), hits[0].role("v3")}), (std::set<Vertex>{1, 3}));
  EXPECT_EQ(hits[0].role("v2"), 2);
  EXPECT_TRUE(cls.special(1, f));
  EXPECT_TRUE(cls.special(3, f));
  EXPECT_EQ(nbp::count_fa_structures(cls), 1);
  EXPECT_TRUE(hits_of(m, HitKind::fa2).empty());
}

TEST(DetectorTest, Fa2Fixture) {
  auto m = nbp::fa2_fixture();
  auto cls = nbp::classify(m, nbp::outer_cycle(m));
  ASSERT_EQ(hits_of(m, HitKind::fa2).size(), 1u);
  EXPECT_TRUE(hits_of(m, HitKind::fa1).empty());
  EXPECT_TRUE(cls.special_anywhere(1));
  EXPECT_TRUE(cls.special_anywhere(3));
}

TEST(DetectorTest, NoFaWithoutTwoVertices) {
  // K4 has no 2-vertex at all.
  auto k4 = nbp::straight_line_map({{0, {0, 0}}, {1, {10, 0}}, {2, {5, 9}}, {3, {5, 3}}},
                                   {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}});
  EXPECT_TRUE(hits_of(k4, HitKind::fa1).empty());
  EXPECT_TRUE(hits_of(k4, HitKind::fa2).empty());
}

TEST(DetectorTest, MatchFbCatalog) {
  std::vector<nbp::NamedGraph> catalog{{"triangle", nbp::classic("c3")}};
  auto hits = nbp::match_fb(nbp::classic("k4"), catalog);
  ASSERT_EQ(hits.size(), 1u);
  EXPECT_EQ(hits[0].name, "triangle");
  EXPECT_EQ(hits[0].footprint().size(), 3u);
  EXPECT_TRUE(nbp::match_fb(nbp::classic("k4"), {}).empty());
  std::vector<nbp::NamedGraph> big{{"c8", nbp::classic("c8")}};
  EXPECT_TRUE(nbp::match_fb(nbp::classic("k4"), big).empty());
}

TEST(DetectorTest, HitRolesSatisfyDefinitions) {
  // Re-check every role condition of every hit directly against the map.
  for (const auto& name : nbp::fixture_names()) {
    SCOPED_TRACE(name);
    auto m = nbp::build_fixture(name);
    auto c0 = nbp::outer_cycle(m);
    auto cls = nbp::classify(m, c0);
    const auto& g = m.graph();
    auto bad = [&](Vertex v) {
      int tris = 0;
      for (int f : m.faces_at(v)) tris += !m.is_outer(f) && m.face(f).degree() == 3;
      return !c0.contains(v) && g.degree(v) == 3 && tris > 0;
    };
    for (const auto& h : nbp::detect_all(m, c0, cls)) {
      if (h.kind == HitKind::tetrad) {
        for (auto r : {"v1", "v2", "v3", "v4"}) EXPECT_TRUE(bad(h.role(r)));
        std::vector<Vertex> walk{h.role("x"), h.role("v1"), h.role("v2"), h.role("v3"),
                                 h.role("v4"), h.role("y")};
        for (std::size_t i = 0; i + 1 < walk.size(); ++i) EXPECT_TRUE(g.adjacent(walk[i], walk[i + 1]));
        for (auto [t, a, b] : {std::tuple{"t12", "v1", "v2"}, std::tuple{"t34", "v3", "v4"}}) {
          EXPECT_TRUE(g.adjacent(h.role(t), h.role(a)));
          EXPECT_TRUE(g.adjacent(h.role(t), h.role(b)));
        }
      }
      if (h.kind == HitKind::m_face || h.kind == HitKind::mm_face) {
        const auto& face = m.face(*h.face);
        EXPECT_EQ(face.degree(), 8u);
        for (int k = 1; k <= 8; ++k) {
          Vertex a = h.role("v" + std::to_string(k));
          Vertex b = h.role("v" + std::to_string(k % 8 + 1));
          EXPECT_TRUE(g.adjacent(a, b));
          EXPECT_TRUE(face.contains(a));
        }
        std::vector<int> bad_labels = h.kind == HitKind::m_face ? std::vector<int>{1, 2, 3, 5, 6, 7}
                                                                : std::vector<int>{1, 2, 3, 4, 6, 7};
        for (int k : bad_labels) EXPECT_TRUE(bad(h.role("v" + std::to_string(k))));
        if (h.kind == HitKind::m_face) {
          EXPECT_FALSE(bad(h.role("v4")));
          EXPECT_EQ(g.degree(h.role("v8")), 4u);
        }
      }
    }
  }
}

std::map<Vertex, Vertex> random_perm(const PlanarMap& m, std::mt19937& rng) {
  auto vs = m.graph().vertices();
  std::vector<Vertex> ids(vs.size());
  std::iota(ids.begin(), ids.end(), 100);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::map<Vertex, Vertex> perm;
  for (std::size_t i = 0; i < vs.size(); ++i) perm[vs[i]] = ids[i];
  return perm;
}

TEST(DetectorTest, HitsAreInvariantUnderRelabelingAndReflection) {
  std::mt19937 rng(17);
  for (const auto& name : nbp::fixture_names()) {
    SCOPED_TRACE(name);
    auto m = nbp::build_fixture(name);
    const auto base = signature(m);
    ASSERT_FALSE(base.empty());
    EXPECT_EQ(signature(nbp::mirrored(m)), base);
    for (int trial = 0; trial < 20; ++trial) {
      auto perm = random_perm(m, rng);
      std::set<std::pair<std::string, std::set<Vertex>>> mapped;
      for (const auto& [kind, fp] : base) {
        std::set<Vertex> image;
        for (Vertex v : fp) image.insert(perm.at(v));
        mapped.insert({kind, image});
      }
      EXPECT_EQ(signature(nbp::relabeled(m, perm)), mapped);
    }
  }
}

TEST(DetectorTest, DetectionIsIdempotent) {
  for (const auto& name : nbp::fixture_names()) {
    auto m = nbp::build_fixture(name);
    auto c0 = nbp::outer_cycle(m);
    auto cls = nbp::classify(m, c0);
    auto a = nbp::detect_all(m, c0, cls);
    auto b = nbp::detect_all(m, c0, nbp::classify(m, c0));
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].roles, b[i].roles);
  }
}

TEST(DetectorTest, WrongOuterCycleIsRejected) {
  auto m = nbp::tetrad_fixture();
  try {
    nbp::classify(m, nbp::CycleRef{{14, 15, 18}});
    FAIL();
  } catch (const nbp::Error& e) {
    EXPECT_EQ(e.kind(), nbp::ErrorKind::outer_mismatch);
  }
}

}  // namespace
