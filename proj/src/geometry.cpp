#include "camsa/geometry.hpp"

#include <algorithm>
#include <limits>

#include "camsa/error.hpp"

namespace camsa {

double signed_area(std::span<const Point> poly) {
  double twice = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    twice += cross(poly[i], poly[(i + 1) % n]);
  }
  return 0.5 * twice;
}

Point centroid(std::span<const Point> poly) {
  Point sum;
  for (const auto& p : poly) sum = sum + p;
  return poly.empty() ? sum : sum * (1.0 / static_cast<double>(poly.size()));
}

bool is_convex(std::span<const Point> poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  int sign = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = poly[i];
    const Point b = poly[(i + 1) % n];
    const Point c = poly[(i + 2) % n];
    const double z = cross(b - a, c - b);
    if (z == 0.0) continue;
    const int s = z > 0 ? 1 : -1;
    if (sign == 0) {
      sign = s;
    } else if (s != sign) {
      return false;
    }
  }
  return sign != 0;
}

double distance_to_segment(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

namespace {

void require_polygon(std::span<const Point> poly) {
  if (poly.size() < 3) {
    throw Error(ErrorCode::DegeneratePolygon, "polygon needs at least 3 vertices");
  }
  if (signed_area(poly) == 0.0) {
    throw Error(ErrorCode::DegeneratePolygon, "polygon has zero area");
  }
}

double boundary_distance(Point p, std::span<const Point> poly) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, distance_to_segment(p, poly[i], poly[(i + 1) % n]));
  }
  return best;
}

bool crossing_parity(Point p, std::span<const Point> poly) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = poly[i];
    const Point b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_at = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_at) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

double distance_to_polygon(Point p, std::span<const Point> poly) {
  if (poly.size() >= 3 && crossing_parity(p, poly)) return 0.0;
  return boundary_distance(p, poly);
}

Containment point_in_polygon(Point p, std::span<const Point> poly) {
  require_polygon(poly);
  if (boundary_distance(p, poly) < kBoundaryTolerance) return Containment::OnBoundary;
  return crossing_parity(p, poly) ? Containment::Inside : Containment::Outside;
}

Containment point_in_circle(Point p, Point center, double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::NonPositiveRadius, "circle radius must be positive");
  const double d = distance(p, center) - r;
  if (std::abs(d) < kBoundaryTolerance) return Containment::OnBoundary;
  return d < 0.0 ? Containment::Inside : Containment::Outside;
}

namespace {

int orientation(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

// c is collinear with a-b; true when it lies within the segment's box.
bool on_segment(Point a, Point b, Point c) {
  return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
}

}  // namespace

bool segments_intersect(Point a1, Point a2, Point b1, Point b2) {
  const int o1 = orientation(a1, a2, b1);
  const int o2 = orientation(a1, a2, b2);
  const int o3 = orientation(b1, b2, a1);
  const int o4 = orientation(b1, b2, a2);

  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a1, a2, b1)) return true;
  if (o2 == 0 && on_segment(a1, a2, b2)) return true;
  if (o3 == 0 && on_segment(b1, b2, a1)) return true;
  if (o4 == 0 && on_segment(b1, b2, a2)) return true;
  return false;
}

double circumradius(Point a, Point b, Point c) {
  const double ab = distance(a, b);
  const double bc = distance(b, c);
  const double ca = distance(c, a);
  const double twice_area = std::abs(cross(b - a, c - a));
  if (twice_area == 0.0) return std::numeric_limits<double>::infinity();
  return ab * bc * ca / (2.0 * twice_area);
}

std::vector<double> rolling_median(std::span<const double> values, int window) {
  if (window < 1 || window % 2 == 0) {
    throw Error(ErrorCode::InvalidArgument, "rolling median window must be odd and positive");
  }
  const int n = static_cast<int>(values.size());
  const int half = window / 2;
  std::vector<double> out(values.size());
  std::vector<double> buf(static_cast<std::size_t>(window));
  for (int i = 0; i < n; ++i) {
    for (int k = -half; k <= half; ++k) {
      buf[static_cast<std::size_t>(k + half)] = values[static_cast<std::size_t>(std::clamp(i + k, 0, n - 1))];
    }
    auto mid = buf.begin() + half;
    std::nth_element(buf.begin(), mid, buf.end());
    out[static_cast<std::size_t>(i)] = *mid;
  }
  return out;
}

std::vector<JumpEvent> detect_jump_events(std::span<const double> y, std::span<const int> frames,
                                          double theta, int k_min, std::span<const double> x,
                                          int baseline_window) {
  if (y.size() < 3) throw Error(ErrorCode::SeriesTooShort, "jump detection needs at least 3 samples");
  if (frames.size() != y.size()) {
    throw Error(ErrorCode::InvalidArgument, "frames and series lengths differ");
  }
  if (!x.empty() && x.size() != y.size()) {
    throw Error(ErrorCode::InvalidArgument, "x and y series lengths differ");
  }
  if (!(theta > 0.0)) throw Error(ErrorCode::InvalidArgument, "theta_jump must be positive");
  if (k_min < 1) throw Error(ErrorCode::InvalidArgument, "k_min must be at least 1");

  const std::vector<double> baseline = rolling_median(y, baseline_window);
  const std::size_t n = y.size();
  std::vector<double> rise(n);
  for (std::size_t i = 0; i < n; ++i) rise[i] = baseline[i] - y[i];

  std::vector<JumpEvent> events;
  std::size_t i = 0;
  while (i < n) {
    if (!(rise[i] > 0.0)) {
      ++i;
      continue;
    }
    std::size_t end = i;
    while (end + 1 < n && rise[end + 1] > 0.0) ++end;

    int longest = 0;
    int run = 0;
    double peak = 0.0;
    for (std::size_t k = i; k <= end; ++k) {
      peak = std::max(peak, rise[k]);
      run = rise[k] >= theta ? run + 1 : 0;
      longest = std::max(longest, run);
    }
    if (longest >= k_min) {
      const std::size_t takeoff = i > 0 ? i - 1 : 0;
      const std::size_t landing = end + 1 < n ? end + 1 : end;
      JumpEvent ev;
      ev.takeoff_frame = frames[takeoff];
      ev.landing_frame = frames[landing];
      ev.peak_rise = peak;
      ev.landing_point = {x.empty() ? 0.0 : x[landing], y[landing]};
      if (ev.takeoff_frame < ev.landing_frame) events.push_back(ev);
    }
    i = end + 1;
  }
  return events;
}

}  // namespace camsa
