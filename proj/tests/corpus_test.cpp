#include <gtest/gtest.h>

#include <filesystem>

#include "nbp/corpus.hpp"
#include "nbp/cycles.hpp"
#include "nbp/io.hpp"

namespace {

nbp::GenParams params(int target, std::uint64_t seed, nbp::Strategy s, double density = 0.5) {
  nbp::GenParams p;
  p.target = target;
  p.seed = seed;
  p.strategy = s;
  p.density = density;
  return p;
}

TEST(GeneratorTest, DeterministicInSeed) {
  for (auto s : {nbp::Strategy::subdivision, nbp::Strategy::triangle_glue}) {
    auto a = nbp::io::write_nbmap(nbp::generate(params(20, 7, s)));
    auto b = nbp::io::write_nbmap(nbp::generate(params(20, 7, s)));
    EXPECT_EQ(a, b);
    auto c = nbp::io::write_nbmap(nbp::generate(params(20, 8, s)));
    EXPECT_NE(a, c);
  }
}

TEST(GeneratorTest, SubdivisionHasGirthAtLeastEight) {
  auto m = nbp::generate(params(12, 1, nbp::Strategy::subdivision));
  auto g = nbp::girth(m.graph());
  ASSERT_TRUE(g);
  EXPECT_GE(*g, 8);
}

TEST(GeneratorTest, FullDensityGlueHasTrianglesOnly) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto m = nbp::generate(params(24, seed, nbp::Strategy::triangle_glue, 1.0));
    EXPECT_TRUE(nbp::cycles_in_length_range(m.graph(), 3, 3));
    EXPECT_FALSE(nbp::cycles_in_length_range(m.graph(), 4, 7));
  }
}

TEST(GeneratorTest, FiveHundredSeedsPassTheFilter) {
  int made = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    auto s = seed % 2 ? nbp::Strategy::subdivision : nbp::Strategy::triangle_glue;
    auto m = nbp::generate(params(9 + static_cast<int>(seed % 32), seed, s));
    ASSERT_LE(m.graph().order(), 40u) << "seed " << seed;
    EXPECT_FALSE(nbp::cycles_in_length_range(m.graph(), 4, 7)) << "seed " << seed;
    EXPECT_TRUE(nbp::is_connected(m.graph()));
    EXPECT_TRUE(nbp::choose_outer(m));
    ++made;
  }
  EXPECT_EQ(made, 500);
}

TEST(GeneratorTest, RejectsImpossibleTargets) {
  try {
    nbp::generate(params(6, 1, nbp::Strategy::subdivision));
    FAIL();
  } catch (const nbp::Error& e) {
    EXPECT_EQ(e.kind(), nbp::ErrorKind::generation_failed);
  }
  EXPECT_THROW(nbp::generate(params(2, 1, nbp::Strategy::triangle_glue)), nbp::Error);
  EXPECT_THROW(nbp::strategy_from("spiral"), nbp::Error);
  EXPECT_EQ(nbp::strategy_from("glue"), nbp::Strategy::triangle_glue);
}

TEST(ClassicsTest, Sizes) {
  EXPECT_EQ(nbp::classic("k4").order(), 4u);
  EXPECT_EQ(nbp::classic("k4").size(), 6u);
  EXPECT_EQ(nbp::classic("moser").order(), 7u);
  EXPECT_EQ(nbp::classic("moser").size(), 11u);
  EXPECT_EQ(nbp::classic("c8").order(), 8u);
  EXPECT_EQ(nbp::classic("c8").size(), 8u);
  EXPECT_EQ(nbp::classic("bowtie").order(), 5u);
  EXPECT_THROW(nbp::classic("petersen"), nbp::Error);
}

TEST(ClassicsTest, MoserSpindleIsTwoRhombiPlusAnEdge) {
  // Every vertex has degree 3 or 4, and the unit-distance graph has exactly
  // four triangles.
  const auto g = nbp::classic("moser");
  int triangles = 0;
  for (auto [a, b] : g.edges()) {
    for (nbp::Vertex c : g.vertices()) {
      if (c > b && g.adjacent(a, c) && g.adjacent(b, c)) ++triangles;
    }
  }
  EXPECT_EQ(triangles, 4);
  for (nbp::Vertex v : g.vertices()) {
    EXPECT_GE(g.degree(v), 3u);
    EXPECT_LE(g.degree(v), 4u);
  }
}

TEST(FixtureTest, ShippedFilesMatchBuilders) {
  for (const auto& name : nbp::fixture_names()) {
    SCOPED_TRACE(name);
    const std::string path = nbp::fixtures_dir() + "/" + name + ".nbmap";
    ASSERT_TRUE(std::filesystem::exists(path)) << path;
    EXPECT_EQ(nbp::io::slurp(path), nbp::io::write_nbmap(nbp::build_fixture(name)));
  }
  for (const auto& c : nbp::classics()) {
    const std::string path = nbp::fixtures_dir() + "/classics/" + c.name + ".nbg";
    ASSERT_TRUE(std::filesystem::exists(path)) << path;
    EXPECT_EQ(nbp::io::load_graph(path), c.graph);
  }
}

TEST(FixtureTest, OuterCycleLengths) {
  EXPECT_EQ(nbp::outer_cycle(nbp::tetrad_fixture()).length(), 14u);
  EXPECT_EQ(nbp::outer_cycle(nbp::m_face_fixture()).length(), 10u);
  EXPECT_EQ(nbp::outer_cycle(nbp::mm_face_fixture()).length(), 10u);
  EXPECT_EQ(nbp::outer_cycle(nbp::fa1_fixture()).length(), 12u);
  EXPECT_EQ(nbp::outer_cycle(nbp::fa2_fixture()).length(), 8u);
  EXPECT_THROW(nbp::build_fixture("nope"), nbp::Error);
}

TEST(FixtureTest, ChooseOuterPrefersTriangles) {
  auto m = nbp::generate(params(20, 3, nbp::Strategy::triangle_glue, 1.0));
  auto chosen = nbp::choose_outer(m);
  ASSERT_TRUE(chosen);
  EXPECT_EQ(chosen->second.length(), 3u);
  EXPECT_EQ(nbp::outer_cycle(chosen->first).length(), 3u);
}

TEST(LayoutTest, CrossingEdgesAreRejected) {
  try {
    nbp::straight_line_map({{0, {0, 0}}, {1, {10, 10}}, {2, {0, 10}}, {3, {10, 0}}},
                           {{0, 1}, {2, 3}, {0, 2}});
    FAIL();
  } catch (const nbp::Error& e) {
    EXPECT_EQ(e.kind(), nbp::ErrorKind::invalid_graph);
  }
}

}  // namespace
