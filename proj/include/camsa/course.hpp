#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "camsa/geometry.hpp"
#include "camsa/trajectory.hpp"

namespace camsa {

// Course actions in run order: 1 two-foot jumps, 2 side slide, 3 catch,
// 4 throw, 5 step-hop, 6 one-foot hops, 7 kick.
using ActionId = int;
inline constexpr int kActionCount = 7;

struct Hoop {
  int id = 0;
  Point center;
  double radius = 0.0;
};

struct Cone {
  int id = 0;
  Point apex;
  std::array<Point, 3> base{};

  double circumradius() const { return camsa::circumradius(base[0], base[1], base[2]); }
};

struct RectTarget {
  std::array<Point, 4> corners{};
  Polygon polygon() const { return {corners.begin(), corners.end()}; }
};

struct CourseLayout {
  View view = View::Front;
  std::vector<Hoop> hoops;
  std::vector<Cone> cones;
  std::optional<RectTarget> rect;
  Polygon start_region;
  std::map<ActionId, Polygon> zones;

  const Hoop* hoop(int id) const;
  const Cone* cone(int id) const;
  const Polygon* zone(ActionId a) const;
};

// Actions each camera is responsible for.
std::vector<ActionId> actions_for_view(View v);
View view_for_action(ActionId a);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Landmark counts and ordering for one camera view.
ValidationReport validate_layout(const CourseLayout& layout);
// Both views; violations are prefixed with the view name.
ValidationReport validate_layout(const CourseLayout& front, const CourseLayout& rear);

// Lowest action whose zone contains p (boundary counts as inside).
std::optional<ActionId> zone_of_point(const CourseLayout& layout, Point p);

// Touch target radius around a cone apex.
double touch_radius(const Cone& cone, double r_touch_scale);

CourseLayout parse_layout(std::string_view text);
std::string write_layout(const CourseLayout& layout);

}  // namespace camsa
