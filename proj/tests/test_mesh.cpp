#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "limitfrac/error.hpp"
#include "limitfrac/mesh.hpp"

using namespace limitfrac;

namespace {

Mesh two_triangle_square() {
  return Mesh::from_arrays({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{0, 1, 2}, {0, 2, 3}});
}

double signed_area(const Mesh& m, int t) {
  const auto& tri = m.triangles()[t];
  const auto a = m.vertices()[tri[0]], b = m.vertices()[tri[1]], c = m.vertices()[tri[2]];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

}  // namespace

TEST(BuildSlitSquare, UnslitCounts) {
  const Mesh m = build_slit_square(2);
  EXPECT_EQ(m.num_vertices(), 9u);
  EXPECT_EQ(m.num_triangles(), 8u);
  EXPECT_EQ(m.edges().size(), 16u);
  EXPECT_EQ(m.generation(), 0);
  EXPECT_TRUE(check_mesh(m).ok());
}

TEST(BuildSlitSquare, SlitDuplicatesMouthAndSeparatesFaces) {
  const Mesh m = build_slit_square(2, Slit{0.5, 0.5});
  EXPECT_EQ(m.num_vertices(), 10u);
  EXPECT_EQ(m.num_triangles(), 8u);
  int crack_edges = 0;
  for (const auto& e : m.edges()) {
    if (e.tag == EdgeClass::Crack) {
      ++crack_edges;
      EXPECT_TRUE(e.boundary());
    }
  }
  EXPECT_EQ(crack_edges, 2);  // one per face
  int at_mouth = 0;
  for (const auto& p : m.vertices()) at_mouth += (p.x == 0.5 && p.y == 1.0);
  EXPECT_EQ(at_mouth, 2);
  EXPECT_TRUE(check_mesh(m).ok());
}

TEST(BuildSlitSquare, DirichletHalvesAreSeparate) {
  const Mesh m = build_slit_square(4, Slit{});
  for (const auto& e : m.edges()) {
    if (e.tag != EdgeClass::Dirichlet) continue;
    const double mid = 0.5 * (m.vertices()[e.v[0]].x + m.vertices()[e.v[1]].x);
    EXPECT_EQ(e.side, mid < 0.5 ? DirichletSide::Left : DirichletSide::Right);
  }
  for (std::size_t i = 0; i < m.num_vertices(); ++i) {
    EXPECT_NE(m.dirichlet_sides(static_cast<int>(i)), 3u) << "slit mouth copies stay one-sided";
  }
}

TEST(BuildSlitSquare, RejectsBadInput) {
  EXPECT_THROW(build_slit_square(0), GeometryError);
  EXPECT_THROW(build_slit_square(3, Slit{0.5, 0.5}), GeometryError);
  EXPECT_THROW(build_slit_square(4, Slit{0.3, 0.5}), GeometryError);
  EXPECT_THROW(build_slit_square(4, Slit{0.5, 1.0}), GeometryError);
}

TEST(FromArrays, RejectsDegenerateAndBadIndex) {
  EXPECT_THROW(Mesh::from_arrays({{0, 0}, {1, 0}, {2, 0}}, {{0, 1, 2}}), GeometryError);
  EXPECT_THROW(Mesh::from_arrays({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 5}}), GeometryError);
}

TEST(FromArrays, ReordersCounterClockwiseLongestEdgeFirst) {
  const Mesh m = Mesh::from_arrays({{0, 0}, {1, 0}, {0, 1}}, {{0, 2, 1}});
  EXPECT_GT(signed_area(m, 0), 0.0);
  const auto& t = m.triangles()[0];
  const auto a = m.vertices()[t[0]], b = m.vertices()[t[1]];
  EXPECT_DOUBLE_EQ(std::hypot(a.x - b.x, a.y - b.y), std::sqrt(2.0));
}

TEST(GeometryTables, RightTriangle) {
  const Mesh m = Mesh::from_arrays({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
  const auto g = geometry_tables(m);
  EXPECT_DOUBLE_EQ(g.elements[0].area, 0.5);
  EXPECT_DOUBLE_EQ(g.elements[0].diameter, std::sqrt(2.0));
  const std::vector<double> x1 = {0.0, 1.0, 0.0};
  const Vec2 grad = element_gradient(m, 0, x1);
  EXPECT_NEAR(grad.x, 1.0, 1e-15);
  EXPECT_NEAR(grad.y, 0.0, 1e-15);
}

TEST(GeometryTables, TwoTriangleEdgeLengths) {
  const Mesh m = two_triangle_square();
  for (const auto& eg : geometry_tables(m).edges) {
    const bool ok = std::abs(eg.length - 1.0) < 1e-15 || std::abs(eg.length - std::sqrt(2.0)) < 1e-15;
    EXPECT_TRUE(ok) << eg.length;
    EXPECT_NEAR(std::hypot(eg.normal.x, eg.normal.y), 1.0, 1e-15);
  }
}

TEST(GeometryTables, BoundaryNormalsPointOutward) {
  const Mesh m = build_slit_square(4, Slit{});
  for (std::size_t e = 0; e < m.edges().size(); ++e) {
    const auto& edge = m.edges()[e];
    const auto& n = m.edge_geometry()[e].normal;
    const auto c = m.element_geometry()[edge.tri[0]].centroid;
    const auto a = m.vertices()[edge.v[0]];
    EXPECT_LT(n.x * (c.x - a.x) + n.y * (c.y - a.y), 0.0) << "normal leaves tri[0]";
    if (!edge.boundary()) EXPECT_LT(edge.tri[0], edge.tri[1]);
  }
}

TEST(Bisect, ClosureOnTwoTriangleSquare) {
  const Mesh m = two_triangle_square();
  const std::vector<int> marked = {0};
  const Mesh r = bisect(m, marked);
  EXPECT_EQ(r.num_triangles(), 4u);
  EXPECT_EQ(r.num_vertices(), 5u);
  EXPECT_EQ(r.generation(), 1);
  EXPECT_TRUE(check_mesh(r).ok());
}

TEST(Bisect, EmptyMarkIsIdentity) {
  const Mesh m = build_slit_square(4, Slit{});
  const Mesh r = bisect(m, {});
  EXPECT_EQ(r.id(), m.id());
  EXPECT_EQ(r.generation(), m.generation());
  EXPECT_EQ(r.triangles(), m.triangles());
}

TEST(Bisect, InvalidIndexThrows) {
  const Mesh m = two_triangle_square();
  const std::vector<int> bad = {7};
  EXPECT_THROW(bisect(m, bad), GeometryError);
}

TEST(Bisect, MarkAllBisectsEverything) {
  const Mesh m = build_slit_square(4, Slit{});
  std::vector<int> all(m.num_triangles());
  std::iota(all.begin(), all.end(), 0);
  const Mesh r = bisect(m, all);
  EXPECT_GE(r.num_triangles(), 2 * m.num_triangles());
  std::vector<int> children(m.num_triangles(), 0);
  for (int p : r.parents()) ++children[p];
  for (int c : children) EXPECT_GE(c, 2);
  EXPECT_TRUE(check_mesh(r).ok());
}

TEST(Bisect, ChildrenPartitionParentArea) {
  std::mt19937_64 rng(7);
  Mesh m = build_slit_square(8, Slit{});
  for (int round = 0; round < 5; ++round) {
    std::vector<int> marked;
    for (std::size_t t = 0; t < m.num_triangles(); ++t) {
      if (rng() % 4 == 0) marked.push_back(static_cast<int>(t));
    }
    const Mesh r = bisect(m, marked);
    std::vector<double> sum(m.num_triangles(), 0.0);
    for (std::size_t t = 0; t < r.num_triangles(); ++t) {
      sum[r.parents()[t]] += r.element_geometry()[t].area;
    }
    for (std::size_t t = 0; t < m.num_triangles(); ++t) {
      const double a = m.element_geometry()[t].area;
      EXPECT_NEAR(sum[t], a, 1e-14 * a);
    }
    m = r;
  }
}

TEST(Bisect, NewVerticesAreEdgeMidpoints) {
  const Mesh m = build_slit_square(4, Slit{});
  const Mesh r = refine_uniform(m);
  for (std::size_t i = m.num_vertices(); i < r.num_vertices(); ++i) {
    const auto [a, b] = r.vertex_parents()[i];
    ASSERT_GE(a, 0);
    EXPECT_DOUBLE_EQ(r.vertices()[i].x, 0.5 * (r.vertices()[a].x + r.vertices()[b].x));
    EXPECT_DOUBLE_EQ(r.vertices()[i].y, 0.5 * (r.vertices()[a].y + r.vertices()[b].y));
  }
}

TEST(Bisect, ShapeRatioStabilizes) {
  Mesh m = build_slit_square(8, Slit{});
  double round2 = 0.0;
  for (int round = 1; round <= 10; ++round) {
    m = refine_uniform(m);
    if (round == 2) round2 = check_mesh(m).max_shape_ratio;
  }
  EXPECT_NEAR(check_mesh(m).max_shape_ratio, round2, 1e-12 * round2);
}

TEST(Bisect, RandomRoundsKeepIntegrity) {
  std::mt19937_64 rng(11);
  Mesh m = build_slit_square(8, Slit{});
  for (int round = 0; round < 10; ++round) {
    std::vector<int> marked;
    for (std::size_t t = 0; t < m.num_triangles(); ++t) {
      if (rng() % 5 == 0) marked.push_back(static_cast<int>(t));
    }
    m = bisect(m, marked);
    const auto rep = check_mesh(m);
    ASSERT_TRUE(rep.ok()) << "round " << round;
    for (std::size_t t = 0; t < m.num_triangles(); ++t) EXPECT_GT(signed_area(m, static_cast<int>(t)), 0.0);
  }
}

TEST(Bisect, AncestryTracksGenerations) {
  const Mesh m0 = build_slit_square(2);
  const Mesh m1 = refine_uniform(m0);
  const Mesh m2 = refine_uniform(m1);
  ASSERT_EQ(m2.ancestry().size(), 3u);
  EXPECT_EQ(m2.ancestry()[0], m0.id());
  EXPECT_EQ(m2.ancestry()[1], m1.id());
  EXPECT_NE(m2.id(), m1.id());
}

TEST(MeshDump, ListsEverything) {
  const Mesh m = two_triangle_square();
  std::ostringstream out;
  write_mesh_dump(m, out);
  const std::string s = out.str();
  EXPECT_NE(s.find("vertices 4"), std::string::npos);
  EXPECT_NE(s.find("triangles 2"), std::string::npos);
  EXPECT_NE(s.find("edges 5"), std::string::npos);
}
