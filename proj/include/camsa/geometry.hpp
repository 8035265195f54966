#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace camsa {

// Image-space point. y grows downward, so "upward" means decreasing y.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(Point a, double s) { return {a.x * s, a.y * s}; }
  friend Point operator*(double s, Point a) { return {a.x * s, a.y * s}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline Point midpoint(Point a, Point b) { return {(a.x + b.x) * 0.5, (a.y + b.y) * 0.5}; }

using Polygon = std::vector<Point>;

enum class Containment { Inside, OnBoundary, Outside };

inline constexpr double kBoundaryTolerance = 1e-9;

// Shoelace area; positive when the vertex order is counterclockwise in the
// (x, y) coordinate frame as given.
double signed_area(std::span<const Point> poly);
Point centroid(std::span<const Point> poly);
bool is_convex(std::span<const Point> poly);

double distance_to_segment(Point p, Point a, Point b);
// Zero when p is inside or on the polygon.
double distance_to_polygon(Point p, std::span<const Point> poly);

// Even-odd ray casting with an explicit boundary band. Throws DegeneratePolygon
// for fewer than three vertices or zero area.
Containment point_in_polygon(Point p, std::span<const Point> poly);

// Throws NonPositiveRadius when r <= 0.
Containment point_in_circle(Point p, Point center, double r);

// Closed-segment intersection, including touching endpoints and collinear
// overlap.
bool segments_intersect(Point a1, Point a2, Point b1, Point b2);

// Triangle circumradius; infinite for collinear vertices.
double circumradius(Point a, Point b, Point c);

struct JumpEvent {
  int takeoff_frame = 0;
  int landing_frame = 0;
  double peak_rise = 0.0;   // max (baseline - y) over the event, pixels
  Point landing_point;      // ankle position at landing_frame
};

// Centered rolling median with endpoint replication; window must be odd.
std::vector<double> rolling_median(std::span<const double> values, int window);

// Airborne-interval detector for an ankle y series.
//
// baseline = rolling median (15 frames) of y; rise = baseline - y. A candidate
// is a maximal run with rise > 0; it becomes an event when it holds a run of at
// least k_min consecutive samples with rise >= theta. takeoff/landing are the
// samples bracketing the candidate. `frames` maps sample positions to frame
// indices; `x` (optional, same length) fills landing_point.x.
std::vector<JumpEvent> detect_jump_events(std::span<const double> y,
                                          std::span<const int> frames,
                                          double theta, int k_min,
                                          std::span<const double> x = {},
                                          int baseline_window = 15);

}  // namespace camsa
