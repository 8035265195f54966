#include "camsa/course.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "camsa/error.hpp"

namespace camsa {

using nlohmann::json;
using nlohmann::ordered_json;

const Hoop* CourseLayout::hoop(int id) const {
  auto it = std::find_if(hoops.begin(), hoops.end(), [id](const Hoop& h) { return h.id == id; });
  return it == hoops.end() ? nullptr : &*it;
}

const Cone* CourseLayout::cone(int id) const {
  auto it = std::find_if(cones.begin(), cones.end(), [id](const Cone& c) { return c.id == id; });
  return it == cones.end() ? nullptr : &*it;
}

const Polygon* CourseLayout::zone(ActionId a) const {
  auto it = zones.find(a);
  return it == zones.end() ? nullptr : &it->second;
}

std::vector<ActionId> actions_for_view(View v) {
  if (v == View::Front) return {1, 2, 3, 5, 6};
  return {4, 7};
}

View view_for_action(ActionId a) { return (a == 4 || a == 7) ? View::Rear : View::Front; }

double touch_radius(const Cone& cone, double r_touch_scale) {
  return r_touch_scale * cone.circumradius();
}

namespace {

bool usable_polygon(const Polygon& p) { return p.size() >= 3 && signed_area(p) != 0.0; }

// Cones of a pair must project on either side of the corridor centre along the
// line joining them.
bool opposite_sides(const Cone& a, const Cone& b, const Polygon& corridor) {
  const Point c = centroid(corridor);
  const Point u = b.apex - a.apex;
  return dot(a.apex - c, u) < 0.0 && dot(b.apex - c, u) > 0.0;
}

std::string count_message(const char* what, std::size_t got, std::size_t want) {
  return std::string(what) + " count " + std::to_string(got) + " ≠ " + std::to_string(want);
}

}  // namespace

ValidationReport validate_layout(const CourseLayout& layout) {
  ValidationReport rep;
  auto& v = rep.violations;
  const bool front = layout.view == View::Front;

  // Hoops.
  std::set<int> hoop_ids;
  for (const auto& h : layout.hoops) hoop_ids.insert(h.id);
  if (front && layout.hoops.size() != 6) v.push_back(count_message("hoop", layout.hoops.size(), 6));
  if (hoop_ids.size() != layout.hoops.size()) v.push_back("hoop ids not unique");
  for (int id : hoop_ids) {
    if (id < 1 || id > 6) v.push_back("hoop id " + std::to_string(id) + " outside 1..6");
  }
  std::vector<Hoop> hoops = layout.hoops;
  std::sort(hoops.begin(), hoops.end(), [](const Hoop& a, const Hoop& b) { return a.id < b.id; });
  for (const auto& h : hoops) {
    if (!(h.radius > 0.0)) v.push_back("hoop " + std::to_string(h.id) + " radius must be positive");
  }

  // Cones.
  std::set<int> cone_ids;
  for (const auto& c : layout.cones) cone_ids.insert(c.id);
  if (cone_ids.size() != layout.cones.size()) v.push_back("cone ids not unique");
  for (int id : cone_ids) {
    if (id < 1 || id > 6) v.push_back("cone id " + std::to_string(id) + " outside 1..6");
  }
  const std::vector<int> need_cones = front ? std::vector<int>{1, 2, 3, 4} : std::vector<int>{2, 5, 6};
  for (int id : need_cones) {
    if (!cone_ids.count(id)) v.push_back("cone " + std::to_string(id) + " absent");
  }
  std::vector<Cone> cones = layout.cones;
  std::sort(cones.begin(), cones.end(), [](const Cone& a, const Cone& b) { return a.id < b.id; });
  for (const auto& c : cones) {
    if (signed_area(c.base) == 0.0) v.push_back("cone " + std::to_string(c.id) + " base degenerate");
  }

  // Rectangle target.
  if (!front && !layout.rect) v.push_back("rect target absent");
  if (layout.rect) {
    const Polygon p = layout.rect->polygon();
    if (!is_convex(p) || signed_area(p) <= 0.0) v.push_back("rect target not convex counterclockwise");
  }

  if (!usable_polygon(layout.start_region)) v.push_back("start region degenerate");

  // Zones.
  const auto expected = actions_for_view(layout.view);
  for (ActionId a : expected) {
    if (!layout.zone(a)) v.push_back("zone " + std::to_string(a) + " absent");
  }
  for (const auto& [a, poly] : layout.zones) {
    if (std::find(expected.begin(), expected.end(), a) == expected.end()) {
      v.push_back("zone " + std::to_string(a) + " not used in " + std::string(to_string(layout.view)) +
                  " view");
    } else if (!usable_polygon(poly) || !is_convex(poly)) {
      v.push_back("zone " + std::to_string(a) + " not a convex polygon");
    }
  }

  // Ordering.
  const Hoop* h1 = layout.hoop(1);
  const Hoop* h2 = layout.hoop(2);
  const Hoop* h3 = layout.hoop(3);
  if (h1 && h2 && h3) {
    const Point axis = h3->center - h1->center;
    if (!(dot(h2->center - h1->center, axis) > 0.0 && dot(h3->center - h2->center, axis) > 0.0)) {
      v.push_back("hoops 1-3 not monotone along the course");
    }
  }
  const std::array<std::array<int, 3>, 3> pairs{{{1, 2, 2}, {3, 4, 5}, {5, 6, 7}}};
  for (const auto& [a, b, zone] : pairs) {
    const Cone* ca = layout.cone(a);
    const Cone* cb = layout.cone(b);
    const Polygon* corridor = layout.zone(zone);
    if (ca && cb && corridor && !corridor->empty() && !opposite_sides(*ca, *cb, *corridor)) {
      v.push_back("cones " + std::to_string(a) + "," + std::to_string(b) +
                  " not on opposite sides of their corridor");
    }
  }
  return rep;
}

ValidationReport validate_layout(const CourseLayout& front, const CourseLayout& rear) {
  ValidationReport rep;
  if (front.view != View::Front) rep.violations.push_back("front: layout view is rear");
  if (rear.view != View::Rear) rep.violations.push_back("rear: layout view is front");
  for (const auto& msg : validate_layout(front).violations) rep.violations.push_back("front: " + msg);
  for (const auto& msg : validate_layout(rear).violations) rep.violations.push_back("rear: " + msg);
  return rep;
}

std::optional<ActionId> zone_of_point(const CourseLayout& layout, Point p) {
  for (const auto& [a, poly] : layout.zones) {  // std::map iterates in ascending id
    if (!usable_polygon(poly)) continue;
    if (point_in_polygon(p, poly) != Containment::Outside) return a;
  }
  return std::nullopt;
}

namespace {

Point read_point(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorCode::MalformedFile, "point must be [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Polygon read_polygon(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::MalformedFile, "polygon must be an array of points");
  Polygon p;
  for (const auto& jp : j) p.push_back(read_point(jp));
  return p;
}

double read_number(const json& obj, const char* key) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    throw Error(ErrorCode::MalformedFile, std::string("layout field ") + key + " must be a number");
  }
  return obj[key].get<double>();
}

ordered_json point_json(Point p) { return ordered_json::array({quantize(p.x), quantize(p.y)}); }

ordered_json polygon_json(std::span<const Point> poly) {
  ordered_json a = ordered_json::array();
  for (const auto& p : poly) a.push_back(point_json(p));
  return a;
}

}  // namespace

CourseLayout parse_layout(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedFile, std::string("layout JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("view") || !doc["view"].is_string()) {
    throw Error(ErrorCode::MalformedFile, "layout needs a view");
  }
  CourseLayout l;
  l.view = parse_view(doc["view"].get<std::string>());
  for (const auto& jh : doc.value("hoops", json::array())) {
    if (!jh.is_object() || !jh.contains("id") || !jh["id"].is_number_integer()) {
      throw Error(ErrorCode::MalformedFile, "hoop needs an integer id");
    }
    l.hoops.push_back({jh["id"].get<int>(), {read_number(jh, "cx"), read_number(jh, "cy")}, read_number(jh, "r")});
  }
  for (const auto& jc : doc.value("cones", json::array())) {
    if (!jc.is_object() || !jc.contains("id") || !jc["id"].is_number_integer() || !jc.contains("apex") ||
        !jc.contains("base")) {
      throw Error(ErrorCode::MalformedFile, "cone needs id, apex and base");
    }
    Cone c;
    c.id = jc["id"].get<int>();
    c.apex = read_point(jc["apex"]);
    const Polygon base = read_polygon(jc["base"]);
    if (base.size() != 3) throw Error(ErrorCode::MalformedFile, "cone base must have 3 vertices");
    std::copy(base.begin(), base.end(), c.base.begin());
    l.cones.push_back(c);
  }
  if (doc.contains("rect") && !doc["rect"].is_null()) {
    const Polygon corners = read_polygon(doc["rect"]);
    if (corners.size() != 4) throw Error(ErrorCode::MalformedFile, "rect must have 4 corners");
    RectTarget r;
    std::copy(corners.begin(), corners.end(), r.corners.begin());
    l.rect = r;
  }
  if (doc.contains("start")) l.start_region = read_polygon(doc["start"]);
  if (doc.contains("zones")) {
    if (!doc["zones"].is_object()) throw Error(ErrorCode::MalformedFile, "zones must be an object");
    for (const auto& [key, poly] : doc["zones"].items()) {
      int a = 0;
      try {
        a = std::stoi(key);
      } catch (const std::exception&) {
        throw Error(ErrorCode::MalformedFile, "zone key must be an action id");
      }
      if (a < 1 || a > kActionCount) throw Error(ErrorCode::MalformedFile, "zone key outside 1..7");
      l.zones[a] = read_polygon(poly);
    }
  }
  return l;
}

std::string write_layout(const CourseLayout& l) {
  ordered_json doc;
  doc["view"] = to_string(l.view);
  ordered_json hoops = ordered_json::array();
  for (const auto& h : l.hoops) {
    hoops.push_back({{"id", h.id}, {"cx", quantize(h.center.x)}, {"cy", quantize(h.center.y)}, {"r", quantize(h.radius)}});
  }
  doc["hoops"] = hoops;
  ordered_json cones = ordered_json::array();
  for (const auto& c : l.cones) {
    cones.push_back({{"id", c.id}, {"apex", point_json(c.apex)}, {"base", polygon_json(c.base)}});
  }
  doc["cones"] = cones;
  if (l.rect) doc["rect"] = polygon_json(l.rect->corners);
  doc["start"] = polygon_json(l.start_region);
  ordered_json zones = ordered_json::object();
  for (const auto& [a, poly] : l.zones) zones[std::to_string(a)] = polygon_json(poly);
  doc["zones"] = zones;
  return doc.dump(1) + "\n";
}

}  // namespace camsa
