#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gtest/gtest.h"

#include "camsa/error.hpp"
#include "camsa/geometry.hpp"
#include "oracles.hpp"

using namespace camsa;

namespace {

Point rotate(Point p, double a) {
  return {p.x * std::cos(a) - p.y * std::sin(a), p.x * std::sin(a) + p.y * std::cos(a)};
}

const Polygon kSquare{{0, 0}, {4, 0}, {4, 4}, {0, 4}};

}  // namespace

TEST(Geometry, SignedAreaAndCentroid) {
  EXPECT_DOUBLE_EQ(signed_area(kSquare), 16.0);
  Polygon cw(kSquare.rbegin(), kSquare.rend());
  EXPECT_DOUBLE_EQ(signed_area(cw), -16.0);
  const Point c = centroid(kSquare);
  EXPECT_NEAR(c.x, 2.0, 1e-12);
  EXPECT_NEAR(c.y, 2.0, 1e-12);
  EXPECT_TRUE(is_convex(kSquare));
  EXPECT_FALSE(is_convex(Polygon{{0, 0}, {4, 0}, {1, 1}, {0, 4}}));
}

TEST(Geometry, PointInSquare) {
  EXPECT_EQ(point_in_polygon({2, 2}, kSquare), Containment::Inside);
  EXPECT_EQ(point_in_polygon({5, 2}, kSquare), Containment::Outside);
  EXPECT_EQ(point_in_polygon({4, 2}, kSquare), Containment::OnBoundary);
  EXPECT_EQ(point_in_polygon({0, 0}, kSquare), Containment::OnBoundary);
  EXPECT_EQ(point_in_polygon({2, 4 + 1e-12}, kSquare), Containment::OnBoundary);
}

TEST(Geometry, RayThroughVertexIsCountedOnce) {
  const Polygon diamond{{0, -2}, {2, 0}, {0, 2}, {-2, 0}};
  EXPECT_EQ(point_in_polygon({-1, 0}, diamond), Containment::Inside);
  EXPECT_EQ(point_in_polygon({-3, 0}, diamond), Containment::Outside);
  EXPECT_EQ(point_in_polygon({-3, 2}, diamond), Containment::Outside);
}

TEST(Geometry, DegeneratePolygonThrows) {
  try {
    point_in_polygon({0, 0}, Polygon{{0, 0}, {1, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegeneratePolygon);
  }
  EXPECT_THROW(point_in_polygon({0, 0}, Polygon{{0, 0}, {1, 1}, {2, 2}}), Error);
}

TEST(Geometry, CircleContainment) {
  EXPECT_EQ(point_in_circle({0.5, 0}, {0, 0}, 1), Containment::Inside);
  EXPECT_EQ(point_in_circle({1, 0}, {0, 0}, 1), Containment::OnBoundary);
  EXPECT_EQ(point_in_circle({1.5, 0}, {0, 0}, 1), Containment::Outside);
  try {
    point_in_circle({0, 0}, {0, 0}, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveRadius);
  }
}

TEST(Geometry, PointInPolygonMatchesRasterOracle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coord(-11.0, 11.0);
  const oracle::Raster raster;
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    const Polygon poly = oracle::random_star_polygon(rng);
    for (int j = 0; j < 10; ++j) {
      const Point p{coord(rng), coord(rng)};
      if (oracle::boundary_distance(p, poly) <= raster.margin()) continue;
      const bool inside = raster.filled(p, poly);
      EXPECT_EQ(point_in_polygon(p, poly), inside ? Containment::Inside : Containment::Outside)
          << "polygon " << i << " point (" << p.x << ", " << p.y << ")";
      ++checked;
    }
  }
  EXPECT_GT(checked, 2500);
}

TEST(Geometry, ContainmentInvariantUnderReversalAndRotation) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-11.0, 11.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int i = 0; i < 200; ++i) {
    const Polygon poly = oracle::random_star_polygon(rng);
    const Point p{coord(rng), coord(rng)};
    if (oracle::boundary_distance(p, poly) < 1e-6) continue;
    const auto base = point_in_polygon(p, poly);
    const Polygon reversed(poly.rbegin(), poly.rend());
    EXPECT_EQ(point_in_polygon(p, reversed), base);
    const double a = angle(rng);
    Polygon rotated;
    for (const auto& v : poly) rotated.push_back(rotate(v, a));
    EXPECT_EQ(point_in_polygon(rotate(p, a), rotated), base);
  }
}

TEST(Geometry, SegmentsIntersectSpecialCases) {
  EXPECT_TRUE(segments_intersect({0, 0}, {2, 2}, {0, 2}, {2, 0}));
  EXPECT_FALSE(segments_intersect({0, 0}, {1, 0}, {0, 1}, {1, 1}));
  EXPECT_TRUE(segments_intersect({0, 0}, {1, 0}, {1, 0}, {2, 5}));
  EXPECT_TRUE(segments_intersect({0, 0}, {2, 0}, {1, 0}, {3, 0}));
  EXPECT_FALSE(segments_intersect({0, 0}, {1, 0}, {2, 0}, {3, 0}));
  EXPECT_TRUE(segments_intersect({0, 0}, {2, 0}, {1, 0}, {1, 3}));
  EXPECT_FALSE(segments_intersect({0, 0}, {2, 0}, {1, 1e-6}, {1, 3}));
  EXPECT_TRUE(segments_intersect({1, 1}, {1, 1}, {0, 0}, {2, 2}));
}

TEST(Geometry, SegmentsIntersectMatchesSamplingOracle) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  int hits = 0;
  for (int i = 0; i < 2000; ++i) {
    const Point a1{coord(rng), coord(rng)}, a2{coord(rng), coord(rng)};
    const Point b1{coord(rng), coord(rng)}, b2{coord(rng), coord(rng)};
    const double gap = oracle::sampled_segment_gap(a1, a2, b1, b2);
    if (gap > 1e-12 && gap < 1e-7) continue;
    const bool expected = gap <= 1e-12;
    hits += expected;
    EXPECT_EQ(segments_intersect(a1, a2, b1, b2), expected) << "pair " << i;
    EXPECT_EQ(segments_intersect(b2, b1, a1, a2), expected) << "pair " << i << " swapped";
  }
  EXPECT_GT(hits, 100);
}

TEST(Geometry, DistancesAndCircumradius) {
  EXPECT_DOUBLE_EQ(distance_to_segment({0, 3}, {-1, 0}, {1, 0}), 3.0);
  EXPECT_DOUBLE_EQ(distance_to_segment({4, 0}, {-1, 0}, {1, 0}), 3.0);
  EXPECT_DOUBLE_EQ(distance_to_polygon({2, 2}, kSquare), 0.0);
  EXPECT_DOUBLE_EQ(distance_to_polygon({6, 2}, kSquare), 2.0);
  EXPECT_NEAR(circumradius({1, 0}, {-1, 0}, {0, 1}), 1.0, 1e-12);
  EXPECT_TRUE(std::isinf(circumradius({0, 0}, {1, 1}, {2, 2})));
}

TEST(Geometry, RollingMedian) {
  const std::vector<double> v{1, 9, 2, 8, 3};
  const auto m = rolling_median(v, 3);
  ASSERT_EQ(m.size(), v.size());
  EXPECT_EQ(m, (std::vector<double>{1, 2, 8, 3, 3}));
  EXPECT_THROW(rolling_median(v, 4), Error);
}

TEST(Geometry, JumpDetectorFindsTwoHops) {
  std::vector<double> y(60, 500.0);
  for (int k = 0; k < 5; ++k) {
    const double lift = std::vector<double>{20, 35, 40, 35, 20}[static_cast<std::size_t>(k)];
    y[static_cast<std::size_t>(10 + k)] -= lift;
    y[static_cast<std::size_t>(35 + k)] -= lift;
  }
  std::vector<int> frames(y.size());
  for (std::size_t i = 0; i < frames.size(); ++i) frames[i] = static_cast<int>(i) + 100;
  const auto events = detect_jump_events(y, frames, 15.0, 3);
  ASSERT_EQ(events.size(), 2u);
  EXPECT_EQ(events[0].takeoff_frame, 109);
  EXPECT_EQ(events[0].landing_frame, 115);
  EXPECT_NEAR(events[0].peak_rise, 40.0, 1e-9);
  EXPECT_EQ(events[1].landing_frame, 140);
}

TEST(Geometry, JumpDetectorIgnoresShallowBumps) {
  std::vector<double> y(40, 300.0);
  y[20] -= 30;
  y[21] -= 30;
  y[25] -= 5;
  y[26] -= 5;
  y[27] -= 5;
  std::vector<int> frames(y.size());
  for (std::size_t i = 0; i < frames.size(); ++i) frames[i] = static_cast<int>(i);
  EXPECT_TRUE(detect_jump_events(y, frames, 10.0, 3).empty());
}
