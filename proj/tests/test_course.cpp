#include <algorithm>
#include <string>

#include "gtest/gtest.h"

#include "camsa/course.hpp"
#include "camsa/synth.hpp"

using namespace camsa;

namespace {

const RunBundle& reference_bundle() {
  static const RunBundle b = generate_run(RunScript{}).bundle;
  return b;
}

bool mentions(const ValidationReport& r, const std::string& text) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const std::string& v) { return v.find(text) != std::string::npos; });
}

}  // namespace

TEST(Course, ReferenceLayoutsAreValid) {
  const auto& b = reference_bundle();
  EXPECT_TRUE(validate_layout(b.front_layout).ok());
  EXPECT_TRUE(validate_layout(b.rear_layout).ok());
  EXPECT_TRUE(validate_layout(b.front_layout, b.rear_layout).ok());
}

TEST(Course, FiveHoopsAreReported) {
  auto layout = reference_bundle().front_layout;
  layout.hoops.pop_back();
  const auto r = validate_layout(layout);
  EXPECT_FALSE(r.ok());
  EXPECT_TRUE(mentions(r, "hoop count 5 ≠ 6")) << r.violations.front();
}

TEST(Course, MissingRectIsReported) {
  auto layout = reference_bundle().rear_layout;
  layout.rect.reset();
  const auto r = validate_layout(layout);
  EXPECT_TRUE(mentions(r, "rect target absent"));
}

TEST(Course, ClockwiseRectIsReported) {
  auto layout = reference_bundle().rear_layout;
  std::reverse(layout.rect->corners.begin(), layout.rect->corners.end());
  EXPECT_TRUE(mentions(validate_layout(layout), "rect target not convex counterclockwise"));
}

TEST(Course, ConesOnOneSideOfCorridorAreReported) {
  auto layout = reference_bundle().front_layout;
  Cone* c2 = nullptr;
  for (auto& c : layout.cones) {
    if (c.id == 2) c2 = &c;
  }
  ASSERT_NE(c2, nullptr);
  const Cone* c1 = layout.cone(1);
  const Point shift = c1->apex - c2->apex;
  c2->apex = c2->apex + shift * 1.0;
  for (auto& p : c2->base) p = p + shift * 1.0;
  EXPECT_TRUE(mentions(validate_layout(layout), "cones 1,2"));
}

TEST(Course, SwappedViewsAreReported) {
  const auto& b = reference_bundle();
  const auto r = validate_layout(b.rear_layout, b.front_layout);
  EXPECT_TRUE(mentions(r, "front: layout view is rear"));
  EXPECT_TRUE(mentions(r, "rear: layout view is front"));
}

TEST(Course, ViewsOwnTheirActions) {
  EXPECT_EQ(actions_for_view(View::Front), (std::vector<ActionId>{1, 2, 3, 5, 6}));
  EXPECT_EQ(actions_for_view(View::Rear), (std::vector<ActionId>{4, 7}));
  EXPECT_EQ(view_for_action(4), View::Rear);
  EXPECT_EQ(view_for_action(6), View::Front);
}

TEST(Course, ZoneOfPoint) {
  const auto& layout = reference_bundle().front_layout;
  EXPECT_EQ(zone_of_point(layout, {300, 800}), std::optional<ActionId>(1));
  EXPECT_EQ(zone_of_point(layout, {1100, 800}), std::optional<ActionId>(2));
  EXPECT_EQ(zone_of_point(layout, {700, 800}), std::optional<ActionId>(6));
  EXPECT_EQ(zone_of_point(layout, {1000, 320}), std::optional<ActionId>(5));
  EXPECT_FALSE(zone_of_point(layout, {1700, 100}).has_value());
  const Polygon& z2 = *layout.zone(2);
  EXPECT_EQ(zone_of_point(layout, z2.front()), std::optional<ActionId>(2));
}

TEST(Course, TouchRadiusScalesCircumradius) {
  Cone c;
  c.base = {Point{-1, 0}, Point{1, 0}, Point{0, 1}};
  EXPECT_NEAR(touch_radius(c, 1.5), 1.5, 1e-12);
}

TEST(Course, LayoutRoundTrip) {
  const auto& layout = reference_bundle().rear_layout;
  const auto text = write_layout(layout);
  const auto back = parse_layout(text);
  EXPECT_EQ(write_layout(back), text);
  EXPECT_EQ(back.view, View::Rear);
  EXPECT_TRUE(back.rect.has_value());
}
