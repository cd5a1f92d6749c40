#include <gtest/gtest.h>

#include <cmath>

#include "jcurve/offset.hpp"
#include "jcurve/separation.hpp"
#include "support/fixtures.hpp"

namespace jcurve {
namespace {

const TolerancePolicy kTol{};

void expect_equidistant(const OffsetBoundary& ob) {
  for (const ArcCycle& c : ob.cycles) {
    for (const Arc& a : c.arcs) {
      for (int k = 0; k < 256; ++k) {
        const Point p = a.point_at(k / 255.0);
        EXPECT_LE(std::abs(distance_to_set(p, ob.source.points()) - ob.epsilon), kTol.dist_slack(ob.epsilon));
      }
    }
  }
}

TEST(OffsetBoundary, SinglePointIsCircle) {
  const auto ob = offset_boundary(PointSet({{0, 0}}), 1.0);
  ASSERT_EQ(ob.cycles.size(), 1u);
  ASSERT_EQ(ob.cycles[0].arcs.size(), 1u);
  EXPECT_TRUE(ob.cycles[0].arcs[0].full_circle);
  EXPECT_EQ(ob.cycles[0].kind, CycleKind::Outer);
}

TEST(OffsetBoundary, Peanut) {
  const auto ob = offset_boundary(PointSet({{0, 0}, {1, 0}}), 1.0);
  ASSERT_EQ(ob.cycles.size(), 1u);
  const ArcCycle& c = ob.cycles[0];
  EXPECT_EQ(c.kind, CycleKind::Outer);
  ASSERT_EQ(c.arcs.size(), 2u);
  for (const Arc& a : c.arcs) {
    // Frozen from a sampled-band measurement: 4.1911 rad, analytically 4pi/3.
    EXPECT_NEAR(a.sweep(), 4 * kPi / 3, 1e-12);
    EXPECT_NEAR(a.start_point.x, 0.5, 1e-15);
    EXPECT_NEAR(std::abs(a.start_point.y), 0.8660254037844386, 1e-15);
  }
  EXPECT_TRUE(cycle_is_simple(c, kTol).simple);
  expect_equidistant(ob);
}

TEST(OffsetBoundary, TwelveGonHasHole) {
  const auto ob = offset_boundary(PointSet(testing::regular_polygon(12, 3.0)), 1.0);
  ASSERT_EQ(ob.cycles.size(), 2u);
  int outer = 0, hole = 0;
  for (const ArcCycle& c : ob.cycles) {
    (c.kind == CycleKind::Outer ? outer : hole)++;
    EXPECT_TRUE(cycle_is_simple(c, kTol).simple);
    if (c.kind == CycleKind::Hole) EXPECT_EQ(point_in_cycle({0, 0}, c, kTol), Side::Inside);
  }
  EXPECT_EQ(outer, 1);
  EXPECT_EQ(hole, 1);
  expect_equidistant(ob);
}

TEST(OffsetBoundary, TangentPairSplitsIntoTwoCircles) {
  const auto ob = offset_boundary(PointSet(testing::tangent_pair()), 1.0);
  ASSERT_EQ(ob.cycles.size(), 2u);
  for (const ArcCycle& c : ob.cycles) {
    EXPECT_EQ(c.kind, CycleKind::Outer);
    EXPECT_TRUE(cycle_is_simple(c, kTol).simple);
  }
}

TEST(OffsetBoundary, EmptyInputRejected) {
  try {
    offset_boundary(PointSet{}, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyInput);
  }
}

TEST(OffsetBoundary, Completeness) {
  testing::Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const double eps = testing::uniform(rng, 0.3, 1.5);
    const auto pts = testing::chained_cluster(rng, 20, eps, 0.0, {5, 5});
    ASSERT_FALSE(pts.empty());
    const PointSet A(pts);
    const auto ob = offset_boundary(A, eps);
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (ob.arcs_per_source[i] > 0) continue;
      for (int k = 0; k < 64; ++k) {
        const double t = kTwoPi * k / 64.0;
        const Point p{A[i].x + eps * std::cos(t), A[i].y + eps * std::sin(t)};
        double others = 1e300;
        for (std::size_t j = 0; j < A.size(); ++j) {
          if (j != i) others = std::min(others, distance(p, A[j]));
        }
        EXPECT_LT(others, eps + kTol.dist_slack(eps));
      }
    }
    expect_equidistant(ob);
  }
}

TEST(OffsetBoundary, RigidMotionAndScaling) {
  testing::Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const double eps = 1.0;
    const auto pts = testing::chained_cluster(rng, 15, eps, 0.05, {5, 5});
    ASSERT_FALSE(pts.empty());
    const auto base = offset_boundary(PointSet(pts), eps);

    const double t = testing::uniform(rng, 0, kTwoPi);
    const Point shift{testing::uniform(rng, -3, 3), testing::uniform(rng, -3, 3)};
    auto move = [&](Point p) {
      return Point{std::cos(t) * p.x - std::sin(t) * p.y + shift.x, std::sin(t) * p.x + std::cos(t) * p.y + shift.y};
    };
    std::vector<Point> moved_pts;
    for (const Point& p : pts) moved_pts.push_back(move(p));
    const auto moved = offset_boundary(PointSet(moved_pts), eps);
    ASSERT_EQ(moved.cycles.size(), base.cycles.size());
    std::size_t arcs_base = 0, arcs_moved = 0;
    for (const auto& c : base.cycles) arcs_base += c.arcs.size();
    for (const auto& c : moved.cycles) arcs_moved += c.arcs.size();
    EXPECT_EQ(arcs_base, arcs_moved);
    for (const auto& c : base.cycles) {
      for (const Arc& a : c.arcs) {
        const Point w = move(a.start_point);
        double best = 1e300;
        for (const auto& mc : moved.cycles) {
          for (const Arc& b : mc.arcs) best = std::min(best, distance(w, b.start_point));
        }
        EXPECT_LE(best, 1e-9);
      }
    }

    const double s = testing::uniform(rng, 0.2, 5.0);
    std::vector<Point> scaled_pts;
    for (const Point& p : pts) scaled_pts.push_back(s * p);
    const auto scaled = offset_boundary(PointSet(scaled_pts), eps * s);
    ASSERT_EQ(scaled.cycles.size(), base.cycles.size());
    for (std::size_t c = 0; c < base.cycles.size(); ++c) {
      ASSERT_EQ(scaled.cycles[c].arcs.size(), base.cycles[c].arcs.size());
      for (std::size_t k = 0; k < base.cycles[c].arcs.size(); ++k) {
        const Arc& a = base.cycles[c].arcs[k];
        const Arc& b = scaled.cycles[c].arcs[k];
        EXPECT_NEAR(b.radius, a.radius * s, 1e-9 * s);
        EXPECT_LE(distance(b.center, s * a.center), 1e-9 * s * (1 + norm(a.center)));
        EXPECT_LE(distance(b.start_point, s * a.start_point), 1e-9 * s * (1 + norm(a.start_point)));
      }
    }
  }
}

TEST(FaceGraph, SingleCircle) {
  const auto ob = offset_boundary(PointSet({{0, 0}}), 1.0);
  const auto fg = face_graph(ob);
  ASSERT_EQ(fg.faces.size(), 1u);
  EXPECT_FALSE(fg.faces[0].bounded);
}

TEST(FaceGraph, TwelveGon) {
  const auto ob = offset_boundary(PointSet(testing::regular_polygon(12, 3.0)), 1.0);
  const auto fg = face_graph(ob);
  ASSERT_EQ(fg.faces.size(), 2u);
  EXPECT_FALSE(fg.faces[0].bounded);
  EXPECT_TRUE(fg.faces[1].bounded);
  const std::size_t face = face_of_point({0, 0}, fg, ob);
  EXPECT_EQ(face, 1u);
  EXPECT_EQ(face_of_point({100, 100}, fg, ob), FaceGraph::kUnbounded);
  const std::size_t hole = *fg.faces[1].boundary;
  EXPECT_EQ(ob.cycles[hole].kind, CycleKind::Hole);
  EXPECT_FALSE(fg.parent[hole] == std::nullopt);
}

TEST(FaceGraph, FarApartDisks) {
  const auto ob = offset_boundary(PointSet({{0, 0}, {10, 0}}), 1.0);
  const auto fg = face_graph(ob);
  ASSERT_EQ(fg.faces.size(), 1u);
  EXPECT_EQ(fg.faces[0].inner.size(), 2u);
  for (std::size_t c = 0; c < ob.cycles.size(); ++c) EXPECT_FALSE(fg.parent[c].has_value());
}

TEST(FaceOfPoint, InsideDiskRejected) {
  const auto ob = offset_boundary(PointSet({{0, 0}}), 1.0);
  const auto fg = face_graph(ob);
  try {
    face_of_point({0.5, 0}, fg, ob);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInComplement);
  }
}

}  // namespace
}  // namespace jcurve
