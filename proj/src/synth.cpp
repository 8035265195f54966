#include "camsa/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <random>

#include <nlohmann/json.hpp>

#include "camsa/error.hpp"
#include "camsa/scoring.hpp"

namespace camsa {

using nlohmann::json;
using nlohmann::ordered_json;

double RunScript::total_seconds() const {
  double t = 0.0;
  for (double d : action_durations) t += d;
  return t;
}

namespace {

// World coordinates are the front camera's image; the rear camera sees the
// same scene mirrored about x = kMirror and kRearOffset frames late.
constexpr double kMirror = 1900.0;
constexpr int kRearOffset = 5;
constexpr int kPreRoll = 15;
constexpr int kPostRoll = 20;
constexpr double kMaxWalk = 45.0;  // px per frame
constexpr double kBallRadius = 17.0;
constexpr double kVisibility = 0.95;

constexpr double kLane1 = 800.0;
constexpr double kLane2 = 560.0;
constexpr double kLane3 = 320.0;

constexpr std::array<double, 5> kJumpProfile{0.55, 0.9, 1.0, 0.9, 0.55};
constexpr int kAir = 5;
constexpr int kGround = 8;
constexpr int kHop = kAir + kGround;

constexpr std::array<double, 6> kHoopX{250, 350, 450, 550, 650, 750};
constexpr double kHoopRadius = 45.0;

double depth_scale(double gy) { return 0.8 + gy / 4000.0; }
double jump_height(double gy) { return 1.4 * 60.0 * depth_scale(gy); }

struct Band {
  double lo, hi;
};
constexpr Band kBand1{660, 900};
constexpr Band kBand2{440, 660};
constexpr Band kBand3{220, 420};

Polygon box(double x0, double x1, Band b) { return {{x0, b.lo}, {x1, b.lo}, {x1, b.hi}, {x0, b.hi}}; }

Point mirror(Point p) { return {kMirror - p.x, p.y}; }

Polygon mirror(const Polygon& poly) {
  Polygon out;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) out.push_back(mirror(*it));
  return out;
}

Cone make_cone(int id, double cx, double gy) {
  const double s = depth_scale(gy);
  Cone c;
  c.id = id;
  c.apex = {cx, gy - 40.0 * s};
  c.base = {Point{cx - 15.0 * s, gy}, Point{cx + 15.0 * s, gy}, c.apex};
  return c;
}

Cone mirror(const Cone& c) {
  Cone m;
  m.id = c.id;
  m.apex = mirror(c.apex);
  m.base = {mirror(c.base[1]), mirror(c.base[0]), mirror(c.base[2])};
  return m;
}

const std::array<Cone, 6>& world_cones() {
  static const std::array<Cone, 6> cones{make_cone(1, 950, kLane1), make_cone(2, 1250, kLane1),
                                         make_cone(3, 1350, kLane3), make_cone(4, 650, kLane3),
                                         make_cone(5, 1000, 490),    make_cone(6, 1000, 630)};
  return cones;
}

const Polygon kStartRegion = box(0, 150, kBand1);
const Polygon kRect{{1800, 480}, {1900, 480}, {1900, 380}, {1800, 380}};

std::map<ActionId, Polygon> world_zones() {
  return {{1, box(200, 500, kBand1)},  {2, box(900, 1300, kBand1)}, {3, box(1000, 1250, kBand2)},
          {4, box(1330, 1480, kBand2)}, {5, box(600, 1400, kBand3)}, {6, box(200, 800, kBand1)},
          {7, box(450, 850, kBand2)}};
}

CourseLayout front_layout() {
  CourseLayout l;
  l.view = View::Front;
  for (std::size_t i = 0; i < kHoopX.size(); ++i) {
    l.hoops.push_back({static_cast<int>(i + 1), {kHoopX[i], kLane1}, kHoopRadius});
  }
  for (const auto& c : world_cones()) l.cones.push_back(c);
  l.start_region = kStartRegion;
  for (auto& [a, poly] : world_zones()) {
    if (view_for_action(a) == View::Front) l.zones[a] = poly;
  }
  return l;
}

CourseLayout rear_layout() {
  CourseLayout l;
  l.view = View::Rear;
  for (const auto& c : world_cones()) {
    if (c.id == 2 || c.id == 5 || c.id == 6) l.cones.push_back(mirror(c));
  }
  RectTarget rect;
  const Polygon r = mirror(kRect);
  std::copy(r.begin(), r.end(), rect.corners.begin());
  if (signed_area(rect.polygon()) < 0.0) std::reverse(rect.corners.begin(), rect.corners.end());
  l.rect = rect;
  l.start_region = mirror(kStartRegion);
  for (auto& [a, poly] : world_zones()) {
    if (view_for_action(a) == View::Rear) l.zones[a] = mirror(poly);
  }
  return l;
}

// Body placement for one frame: ground point under the ankles, facing along
// x, vertical lift, and optional explicit ankle/wrist positions.
struct Pose {
  Pose(double x_, double gy_, double facing_ = 1.0, double lift_ = 0.0)
      : x(x_), gy(gy_), facing(facing_), lift(lift_) {}

  double x;
  double gy;
  double facing;
  double lift;
  std::optional<Point> left_ankle, right_ankle, left_wrist, right_wrist;
};

void set(PoseFrame& f, Kp k, Point p) {
  auto& kp = f.keypoints[static_cast<std::size_t>(idx(k))];
  kp.x = p.x;
  kp.y = p.y;
}

Point hand_offset(Kp k, double s) {
  switch (k) {
    case Kp::LeftPinky: return {-3 * s, 7 * s};
    case Kp::RightPinky: return {3 * s, 7 * s};
    case Kp::LeftIndex:
    case Kp::RightIndex: return {0, 9 * s};
    case Kp::LeftThumb: return {3 * s, 6 * s};
    case Kp::RightThumb: return {-3 * s, 6 * s};
    default: return {};
  }
}

PoseFrame render(const Pose& p) {
  const double s = depth_scale(p.gy);
  const double x = p.x;
  const double y = p.gy - p.lift;
  const double f = p.facing;
  PoseFrame fr;
  for (auto& kp : fr.keypoints) kp.visibility = kVisibility;

  const Point nose{x + f * 12 * s, y - 280 * s};
  set(fr, Kp::Nose, nose);
  for (int i = 1; i <= 3; ++i) {
    fr.keypoints[static_cast<std::size_t>(i)].x = nose.x - 2 * i * s;
    fr.keypoints[static_cast<std::size_t>(i)].y = nose.y - 6 * s;
    fr.keypoints[static_cast<std::size_t>(i + 3)].x = nose.x + 2 * i * s;
    fr.keypoints[static_cast<std::size_t>(i + 3)].y = nose.y - 6 * s;
  }
  fr.keypoints[7].x = x - 10 * s;
  fr.keypoints[7].y = y - 282 * s;
  fr.keypoints[8].x = x + 10 * s;
  fr.keypoints[8].y = y - 282 * s;
  fr.keypoints[9].x = nose.x - 3 * s;
  fr.keypoints[9].y = nose.y + 8 * s;
  fr.keypoints[10].x = nose.x + 3 * s;
  fr.keypoints[10].y = nose.y + 8 * s;

  set(fr, Kp::LeftShoulder, {x - 40 * s, y - 230 * s});
  set(fr, Kp::RightShoulder, {x + 40 * s, y - 230 * s});
  set(fr, Kp::LeftElbow, {x - 42 * s, y - 170 * s});
  set(fr, Kp::RightElbow, {x + 42 * s, y - 170 * s});
  set(fr, Kp::LeftHip, {x - 20 * s, y - 120 * s});
  set(fr, Kp::RightHip, {x + 20 * s, y - 120 * s});

  const Point lw = p.left_wrist.value_or(Point{x - 40 * s, y - 110 * s});
  const Point rw = p.right_wrist.value_or(Point{x + 40 * s, y - 110 * s});
  set(fr, Kp::LeftWrist, lw);
  set(fr, Kp::RightWrist, rw);
  for (Kp k : {Kp::LeftPinky, Kp::LeftIndex, Kp::LeftThumb}) set(fr, k, lw + hand_offset(k, s));
  for (Kp k : {Kp::RightPinky, Kp::RightIndex, Kp::RightThumb}) set(fr, k, rw + hand_offset(k, s));

  const Point la = p.left_ankle.value_or(Point{x - 10 * s, y});
  const Point ra = p.right_ankle.value_or(Point{x + 10 * s, y});
  for (auto [ankle, knee, heel, toe, a] :
       {std::tuple{Kp::LeftAnkle, Kp::LeftKnee, Kp::LeftHeel, Kp::LeftFootIndex, la},
        std::tuple{Kp::RightAnkle, Kp::RightKnee, Kp::RightHeel, Kp::RightFootIndex, ra}}) {
    set(fr, ankle, a);
    set(fr, knee, a + Point{0, -60 * s});
    set(fr, heel, a + Point{-f * 8 * s, 4 * s});
    set(fr, toe, a + Point{f * 18 * s, 6 * s});
  }
  return fr;
}

Point ankle_mid(const PoseFrame& f) { return midpoint(f.at(Kp::LeftAnkle), f.at(Kp::RightAnkle)); }

Point lerp(Point a, Point b, double t) { return a + (b - a) * t; }

bool has(const std::set<int>& faults, int f) { return faults.count(f) > 0; }

class Scene {
 public:
  explicit Scene(const std::set<int>& faults) : faults_(faults) {}

  int size() const { return static_cast<int>(frames_.size()); }

  void push(const Pose& p) {
    PoseFrame f = render(p);
    f.frame_index = size();
    frames_.push_back(f);
    at_ = {p.x, p.gy};
    facing_ = p.facing;
  }

  PoseFrame& frame(int i) { return frames_[static_cast<std::size_t>(i)]; }
  const std::vector<PoseFrame>& frames() const { return frames_; }
  Point position() const { return at_; }
  void place(Point p) { at_ = p; }

  // Constant-speed glide along the waypoints in `n` frames.
  void walk(const std::vector<Point>& waypoints, int n) {
    std::vector<Point> path{at_};
    path.insert(path.end(), waypoints.begin(), waypoints.end());
    const double total = path_length(path);
    for (int j = 1; j <= n; ++j) {
      double d = total * j / n;
      std::size_t seg = 0;
      while (seg + 2 < path.size() && d > norm(path[seg + 1] - path[seg])) {
        d -= norm(path[seg + 1] - path[seg]);
        ++seg;
      }
      const Point a = path[seg];
      const Point b = path[seg + 1];
      const double len = norm(b - a);
      const Point p = len > 0 ? lerp(a, b, std::min(1.0, d / len)) : b;
      double facing = facing_;
      if (b.x > a.x) facing = 1.0;
      if (b.x < a.x) facing = -1.0;
      push(Pose{p.x, p.y, facing});
    }
  }

  static double path_length(const std::vector<Point>& path) {
    double total = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) total += norm(path[i] - path[i - 1]);
    return total;
  }

  void pre_roll() {
    for (int i = 0; i < kPreRoll; ++i) push(Pose{140, kLane1, 1.0});
    at_ = {151, kLane1};
  }

  // Two-footed jumps into hoops 1-3.
  void action1() {
    std::vector<double> targets(kHoopX.begin(), kHoopX.begin() + 3);
    if (has(faults_, 2)) targets.push_back(kHoopX[2]);
    double x = at_.x;
    for (std::size_t j = 0; j < targets.size(); ++j) {
      for (int k = 0; k < kAir; ++k) {
        push(Pose{x + (targets[j] - x) * (k + 1) / (kAir + 1), kLane1, 1.0, kJumpProfile[k] * jump_height(kLane1)});
      }
      x = targets[j];
      for (int k = 0; k < kGround; ++k) {
        push(Pose{x, kLane1, 1.0});
        if (j == 1 && has(faults_, 1)) {
          const double dy = 4.0 * depth_scale(kLane1);
          set(frame(size() - 1), Kp::LeftHeel, {x - std::sqrt(50.0 * 50.0 - dy * dy), kLane1 + dy});
        }
      }
    }
  }

  // Side slide out to cone 2 and back to cone 1, touching each apex.
  void action2() {
    const double s = depth_scale(kLane1);
    const Cone& c1 = world_cones()[0];
    const Cone& c2 = world_cones()[1];
    const Point reach{0, -15 * s};
    auto slide = [&](double from, double to, int n, bool swap_legs) {
      for (int j = 0; j < n; ++j) {
        const double x = from + (to - from) * (j + 1) / n;
        const double spread = 6 * s * (1 - std::cos(2 * std::numbers::pi * j / 8)) / 2;
        Pose p{x, kLane1, 1.0};
        p.left_ankle = Point{x - 10 * s - spread, kLane1};
        p.right_ankle = Point{x + 10 * s + spread, kLane1};
        push(p);
        if (swap_legs && j >= 6 && j < 14) {
          PoseFrame& f = frame(size() - 1);
          std::swap(f.keypoints[static_cast<std::size_t>(idx(Kp::LeftAnkle))].x,
                    f.keypoints[static_cast<std::size_t>(idx(Kp::RightAnkle))].x);
        }
      }
    };
    auto touch = [&](double x, const Cone& cone, bool right_hand) {
      for (int j = 0; j < 4; ++j) {
        Pose p{x, kLane1, 1.0};
        if (!has(faults_, 5)) (right_hand ? p.right_wrist : p.left_wrist) = cone.apex + reach;
        push(p);
      }
    };
    slide(at_.x, 1230, 24, has(faults_, 3));
    touch(1230, c2, true);
    slide(1230, 970, 18, has(faults_, 4));
    touch(970, c1, false);
  }

  // Ball tossed in from the right and caught with extended arms.
  void action3() {
    const double x = at_.x;
    const double gy = at_.y;
    const double s = depth_scale(gy);
    Pose p{x, gy, 1.0};
    p.left_wrist = Point{x + 48 * s, gy - 168 * s};
    p.right_wrist = Point{x + 52 * s, gy - 160 * s};
    const Point catch_at =
        midpoint(*p.left_wrist + hand_offset(Kp::LeftIndex, s), *p.right_wrist + hand_offset(Kp::RightIndex, s)) +
        Point{10, 0};
    constexpr int kToss = 13;
    for (int i = 0; i < kToss + 11; ++i) {
      push(p);
      const int k = i - kToss;
      Point ball = catch_at;
      if (k < 0) ball = catch_at + Point{35, -8} * static_cast<double>(-k);
      if (k > 0 && has(faults_, 6)) ball = catch_at + Point{-10, 30} * static_cast<double>(k);
      ball_front[size() - 1] = ball;
    }
  }

  // Overarm throw at the wall target.
  void action4() {
    const double x = at_.x;
    const double gy = at_.y;
    const double s = depth_scale(gy);
    const double nose = x + 12 * s;
    const Point rest{x + 40 * s, gy - 110 * s};
    const Point back = has(faults_, 8) ? Point{x + 45 * s, gy - 170 * s} : Point{nose - 35 * s, gy - 250 * s};
    const Point release{nose + 70 * s, gy - 200 * s};
    const Point target = has(faults_, 7) ? Point{1850, 320} : Point{1850, 430};
    const Point grip = hand_offset(Kp::RightIndex, s);

    auto frame_with = [&](Point wrist, std::optional<Point> ball) {
      Pose p{x, gy, 1.0};
      p.right_wrist = wrist;
      push(p);
      thrown[size() - 1] = ball.value_or(wrist + grip);
    };
    for (int j = 0; j < 2; ++j) frame_with(rest, std::nullopt);
    for (int j = 0; j < 6; ++j) frame_with(lerp(rest, back, (j + 1) / 6.0), std::nullopt);
    for (int j = 0; j < 4; ++j) frame_with(lerp(back, release, (j + 1) / 4.0), std::nullopt);
    const Point launch = release + grip;
    for (int j = 0; j < 13; ++j) {
      const Point wrist = lerp(release, rest, std::min(1.0, (j + 1) / 4.0));
      frame_with(wrist, lerp(launch, target, std::min(1.0, (j + 1) / 10.0)));
    }
  }

  // Step-hops along the cone 3-4 corridor with alternating arm swing.
  void action5() {
    const double gy = at_.y;
    const double s = depth_scale(gy);
    const double x0 = at_.x;
    for (int i = 0; i < 3 * kHop; ++i) {
      const int k = i % kHop;
      const double lift = (k < kAir && !has(faults_, 9)) ? kJumpProfile[static_cast<std::size_t>(k)] * jump_height(gy) : 0.0;
      Pose p{x0 - 20.0 * (i + 1), gy, -1.0, lift};
      if (!has(faults_, 10)) {
        const double nose = p.x - 12 * s;
        const double swing = 40 * s * std::sin(2 * std::numbers::pi * (i + 1) / 16.0);
        p.left_wrist = Point{nose + swing, gy - lift - 130 * s};
        p.right_wrist = Point{nose - swing, gy - lift - 130 * s};
      }
      push(p);
    }
  }

  // One-foot hops through hoops 1-6 on the right foot.
  void action6() {
    const double gy = kLane1;
    const double s = depth_scale(gy);
    auto pose = [&](double x, double lift, bool both_down) {
      Pose p{x, gy, 1.0, lift};
      const Point hop{x + 10 * s, gy - lift};
      p.right_ankle = hop;
      p.left_ankle = both_down ? Point{hop.x - 20 * s, gy} : hop + Point{-35 * s, -65 * s};
      return p;
    };
    double x = at_.x;
    for (int j = 0; j < 3; ++j) push(pose(x, 0, false));
    std::vector<int> hoops{1, 2, 3, 4, 5, 6};
    if (has(faults_, 12)) hoops.insert(hoops.begin() + 3, 3);
    for (int h : hoops) {
      const double target = kHoopX[static_cast<std::size_t>(h - 1)] - 15 * s;
      for (int k = 0; k < kAir; ++k) {
        push(pose(x + (target - x) * (k + 1) / (kAir + 1), kJumpProfile[static_cast<std::size_t>(k)] * jump_height(gy), false));
      }
      x = target;
      for (int k = 0; k < kGround; ++k) push(pose(x, 0, h == 4 && has(faults_, 11)));
    }
  }

  // Run-up and kick; the last frame is ball contact.
  void action7() {
    const double gy = at_.y;
    const double x0 = at_.x;
    const double plant = 770;
    const Point support = has(faults_, 14) ? Point{815, 575} : Point{plant, 548};
    const Point strike{792, gy + 2};
    for (int j = 0; j < 6; ++j) push(Pose{x0 + (plant - x0) * (j + 1) / 6.0, gy, 1.0});
    for (int j = 0; j < 6; ++j) {
      Pose p{plant, gy, 1.0};
      p.left_ankle = support;
      p.right_ankle = lerp(Point{support.x - 45, gy}, strike, j / 5.0);
      push(p);
    }
    contact = size() - 1;
    kick_direction = has(faults_, 13) ? Point{std::cos(50 * std::numbers::pi / 180), -std::sin(50 * std::numbers::pi / 180)}
                                      : Point{1, 0};
    const std::array<double, 3> follow = has(faults_, 14) ? std::array{3.0, 6.0, 6.0} : std::array{18.0, 33.0, 43.0};
    for (int j = 0; j < kPostRoll; ++j) {
      Pose p{plant, gy, 1.0};
      p.left_ankle = support;
      p.right_ankle = strike + Point{follow[static_cast<std::size_t>(std::min(j, 2))], 0};
      push(p);
    }
  }

  Point kick_ball(int frame) const {
    const Point rest{800, kLane2 - kBallRadius};
    if (frame <= contact) return rest;
    return rest + kick_direction * (20.0 * (frame - contact));
  }

  std::map<int, Point> ball_front;
  std::map<int, Point> thrown;
  int contact = -1;
  Point kick_direction{1, 0};

 private:
  const std::set<int>& faults_;
  std::vector<PoseFrame> frames_;
  Point at_{140, kLane1};
  double facing_ = 1.0;
};

int core_frames(ActionId a, const std::set<int>& faults) {
  switch (a) {
    case 1: return kHop * (has(faults, 2) ? 4 : 3);
    case 2: return 24 + 4 + 18 + 4;
    case 3: return 24;
    case 4: return 25;
    case 5: return 3 * kHop;
    case 6: return 3 + kHop * (has(faults, 12) ? 7 : 6);
    default: return 12;
  }
}

// Where each action's motion begins, reached by walking from the previous one.
std::vector<Point> approach(ActionId a) {
  switch (a) {
    case 1: return {{180, kLane1}};
    case 2: return {{880, kLane1}};
    case 3: return {{1100, kLane2}};
    case 4: return {{1400, kLane2}};
    case 5: return {{1420, kLane3}};
    case 6: return {{150, kLane3}, {170, kLane1}};
    default: return {{690, kLane2}};
  }
}

// Frames per action slot from cumulative rounding of the scripted durations.
std::array<int, kActionCount> slot_frames(const RunScript& script) {
  std::array<int, kActionCount> out{};
  double cum = 0.0;
  int prev = 0;
  for (std::size_t i = 0; i < kActionCount; ++i) {
    cum += script.action_durations[i];
    const int edge = static_cast<int>(std::lround(cum * script.fps));
    out[i] = edge - prev + (i == 0 ? 1 : 0);
    prev = edge;
  }
  return out;
}

struct Plan {
  std::array<int, kActionCount> slots{};
};

Plan plan(const RunScript& script) {
  Plan p;
  p.slots = slot_frames(script);
  for (ActionId a = 1; a <= kActionCount; ++a) {
    if (p.slots[static_cast<std::size_t>(a - 1)] - core_frames(a, script.fault_set) < 1) {
      throw Error(ErrorCode::InvalidScript, "duration of action " + std::to_string(a) + " too short for its motion");
    }
  }
  return p;
}

bool in_world_zone(ActionId a, Point p) {
  static const auto zones = world_zones();
  return point_in_polygon(p, zones.at(a)) != Containment::Outside;
}

// Zone dwell intervals read off the noiseless motion.
std::array<std::pair<int, int>, kActionCount> scripted_phases(const std::vector<PoseFrame>& world, int start,
                                                              int contact) {
  std::array<std::pair<int, int>, kActionCount> out{};
  const int n = static_cast<int>(world.size());
  auto inside = [&](ActionId a, int f) { return in_world_zone(a, ankle_mid(world[static_cast<std::size_t>(f)])); };
  int cursor = start;
  for (ActionId a = 1; a <= kActionCount; ++a) {
    int open = cursor;
    while (open < n && !inside(a, open)) ++open;
    int end = open;
    if (a == kActionCount) {
      end = contact;
    } else {
      int next = open;
      while (next < n && !inside(a + 1, next)) ++next;
      for (int f = open; f < next; ++f) {
        if (inside(a, f)) end = f;
      }
    }
    const int shift = view_for_action(a) == View::Rear ? kRearOffset : 0;
    out[static_cast<std::size_t>(a - 1)] = {open - shift, end - shift};
    cursor = end + 1;
  }
  return out;
}

Trajectory observe(const std::vector<PoseFrame>& world, View view, double fps, double sigma, std::mt19937_64& rng) {
  Trajectory t;
  t.view = view;
  t.fps = fps;
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int shift = view == View::Rear ? kRearOffset : 0;
  for (std::size_t i = static_cast<std::size_t>(shift); i < world.size(); ++i) {
    PoseFrame f = world[i];
    f.frame_index = static_cast<int>(i) - shift;
    for (auto& kp : f.keypoints) {
      double x = kp.x + sigma * gauss(rng);
      const double y = kp.y + sigma * gauss(rng);
      if (view == View::Rear) x = kMirror - x;
      kp.x = quantize(x);
      kp.y = quantize(y);
    }
    t.frames.push_back(f);
  }
  return t;
}

Point quantize_point(Point p) { return {quantize(p.x), quantize(p.y)}; }

}  // namespace

void validate(const RunScript& script) {
  if (!(script.fps > 0.0) || !std::isfinite(script.fps)) throw Error(ErrorCode::InvalidScript, "fps must be positive");
  for (double d : script.action_durations) {
    if (!(d > 0.0) || !std::isfinite(d)) throw Error(ErrorCode::InvalidScript, "durations must be positive");
  }
  for (int f : script.fault_set) {
    if (f < 1 || f > kCriterionCount) throw Error(ErrorCode::InvalidScript, "unknown fault F" + std::to_string(f));
  }
  if (!(script.noise >= 0.0) || !std::isfinite(script.noise)) {
    throw Error(ErrorCode::InvalidScript, "noise must be non-negative");
  }
  plan(script);
}

SyntheticRun generate_run(const RunScript& script) {
  validate(script);
  const Plan p = plan(script);
  Scene scene(script.fault_set);
  scene.pre_roll();
  const int start = scene.size();
  using Core = void (Scene::*)();
  constexpr std::array<Core, kActionCount> cores{&Scene::action1, &Scene::action2, &Scene::action3,
                                                 &Scene::action4, &Scene::action5, &Scene::action6,
                                                 &Scene::action7};
  for (ActionId a = 1; a <= kActionCount; ++a) {
    const int walk = p.slots[static_cast<std::size_t>(a - 1)] - core_frames(a, script.fault_set);
    const auto waypoints = approach(a);
    std::vector<Point> path{scene.position()};
    path.insert(path.end(), waypoints.begin(), waypoints.end());
    if (Scene::path_length(path) / walk > kMaxWalk) {
      throw Error(ErrorCode::InvalidScript, "duration of action " + std::to_string(a) + " too short to reach it");
    }
    scene.walk(waypoints, walk);
    (scene.*cores[static_cast<std::size_t>(a - 1)])();
  }

  const auto& world = scene.frames();
  SyntheticRun run;
  RunBundle& b = run.bundle;
  std::mt19937_64 rng(script.seed);
  b.front = observe(world, View::Front, script.fps, script.noise, rng);
  b.rear = observe(world, View::Rear, script.fps, script.noise, rng);
  b.rear_frame_offset = kRearOffset;
  b.front_layout = parse_layout(write_layout(front_layout()));
  b.rear_layout = parse_layout(write_layout(rear_layout()));

  BallTrack front_ball;
  for (const auto& [f, pt] : scene.ball_front) front_ball.samples[f] = quantize_point(pt);
  front_ball.radius = kBallRadius;
  BallTrack rear_ball;
  for (int f = kRearOffset; f < static_cast<int>(world.size()); ++f) {
    const auto thrown = scene.thrown.find(f);
    const Point pt = thrown != scene.thrown.end() ? thrown->second : scene.kick_ball(f);
    rear_ball.samples[f - kRearOffset] = quantize_point(mirror(pt));
  }
  rear_ball.radius = kBallRadius;
  b.ball_front = front_ball;
  b.ball_rear = rear_ball;

  GroundTruth& gt = run.truth;
  gt.expected_failed_criteria = script.fault_set;
  gt.run_start_frame = start;
  gt.kick_frame = scene.contact;
  gt.completion_seconds = (scene.contact - start) / script.fps;
  gt.phases = scripted_phases(world, start, scene.contact);
  return run;
}

namespace {

int parse_fault(const json& j) {
  if (j.is_number_integer()) return j.get<int>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.size() >= 2 && (s[0] == 'F' || s[0] == 'f')) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(s.substr(1), &used);
        if (used == s.size() - 1) return v;
      } catch (const std::exception&) {
      }
    }
  }
  throw Error(ErrorCode::InvalidScript, "fault ids look like \"F5\"");
}

}  // namespace

RunScript parse_script(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidScript, std::string("script JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::InvalidScript, "script must be an object");
  static const std::set<std::string> known{"seed", "action_durations", "fault_set", "noise", "fps"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.count(key)) throw Error(ErrorCode::InvalidScript, "unknown script key " + key);
  }
  RunScript s;
  try {
    if (doc.contains("seed")) s.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("noise")) s.noise = doc["noise"].get<double>();
    if (doc.contains("fps")) s.fps = doc["fps"].get<double>();
    if (doc.contains("action_durations")) {
      const auto& d = doc["action_durations"];
      if (!d.is_array() || d.size() != kActionCount) {
        throw Error(ErrorCode::InvalidScript, "action_durations needs 7 values");
      }
      for (std::size_t i = 0; i < kActionCount; ++i) s.action_durations[i] = d[i].get<double>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidScript, std::string("script: ") + e.what());
  }
  if (doc.contains("fault_set")) {
    const auto& fs = doc["fault_set"];
    if (!fs.is_array()) throw Error(ErrorCode::InvalidScript, "fault_set must be a list");
    for (const auto& f : fs) {
      if (!s.fault_set.insert(parse_fault(f)).second) throw Error(ErrorCode::InvalidScript, "duplicate fault id");
    }
  }
  validate(s);
  return s;
}

std::string write_script(const RunScript& s) {
  ordered_json doc;
  doc["seed"] = s.seed;
  doc["action_durations"] = s.action_durations;
  ordered_json faults = ordered_json::array();
  for (int f : s.fault_set) faults.push_back("F" + std::to_string(f));
  doc["fault_set"] = faults;
  doc["noise"] = s.noise;
  doc["fps"] = s.fps;
  return doc.dump(2) + "\n";
}

std::string write_ground_truth(const GroundTruth& gt) {
  ordered_json doc;
  doc["expected_failed_criteria"] = gt.expected_failed_criteria;
  ordered_json phases = ordered_json::array();
  for (std::size_t i = 0; i < gt.phases.size(); ++i) {
    const ActionId a = static_cast<ActionId>(i + 1);
    phases.push_back({{"action", a},
                      {"view", std::string(to_string(view_for_action(a)))},
                      {"start", gt.phases[i].first},
                      {"end", gt.phases[i].second}});
  }
  doc["phases"] = phases;
  doc["completion_seconds"] = quantize(gt.completion_seconds);
  doc["run_start_frame"] = gt.run_start_frame;
  doc["kick_frame"] = gt.kick_frame;
  return doc.dump(2) + "\n";
}

GroundTruth parse_ground_truth(std::string_view text) {
  GroundTruth gt;
  try {
    const json doc = json::parse(text);
    gt.expected_failed_criteria = doc.at("expected_failed_criteria").get<std::set<int>>();
    const auto& phases = doc.at("phases");
    if (!phases.is_array() || phases.size() != kActionCount) {
      throw Error(ErrorCode::MalformedFile, "ground truth needs 7 phases");
    }
    for (std::size_t i = 0; i < kActionCount; ++i) {
      gt.phases[i] = {phases[i].at("start").get<int>(), phases[i].at("end").get<int>()};
    }
    gt.completion_seconds = doc.at("completion_seconds").get<double>();
    gt.run_start_frame = doc.value("run_start_frame", 0);
    gt.kick_frame = doc.value("kick_frame", 0);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedFile, std::string("ground truth: ") + e.what());
  }
  return gt;
}

std::vector<FrameGrid> generate_ball_grids(std::span<const Point> path, int width, int height, double blob_radius,
                                           std::uint64_t seed) {
  if (width <= 0 || height <= 0) throw Error(ErrorCode::InvalidArgument, "grid size must be positive");
  if (!(blob_radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "blob radius must be positive");
  for (const Point& p : path) {
    if (!(p.x >= 0.0 && p.y >= 0.0 && p.x <= width - 1 && p.y <= height - 1)) {
      throw Error(ErrorCode::PathOutOfBounds, "ball path leaves the grid");
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> noise(0, 5);
  std::vector<FrameGrid> grids;
  for (const Point& c : path) {
    FrameGrid g{width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height)};
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        const double d2 = (x - c.x) * (x - c.x) + (y - c.y) * (y - c.y);
        const double blob = 180.0 * std::exp(-0.5 * d2 / (blob_radius * blob_radius));
        const int v = 20 + static_cast<int>(std::lround(blob)) + noise(rng);
        g.values[static_cast<std::size_t>(y) * width + x] = static_cast<std::uint8_t>(std::min(v, 255));
      }
    }
    grids.push_back(std::move(g));
  }
  return grids;
}

}  // namespace camsa
