// Rule evaluators for the fourteen skill criteria.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "camsa/error.hpp"
#include "camsa/scoring.hpp"

namespace camsa {

namespace {

void require_action(const ActionPhase& phase, ActionId want) {
  if (phase.action != want) {
    throw Error(ErrorCode::PhaseMismatch,
                "phase for action " + std::to_string(phase.action) + " given to action " + std::to_string(want));
  }
}

CriterionResult result(int id, bool passed, std::string evidence) { return {id, passed, std::move(evidence)}; }

std::string at_frame(int f) { return " at frame " + std::to_string(f); }

// Frames of `traj` inside [start, end].
std::vector<const PoseFrame*> phase_frames(const Trajectory& traj, const ActionPhase& phase) {
  std::vector<const PoseFrame*> out;
  for (const auto& f : traj.frames) {
    if (f.frame_index >= phase.start_frame && f.frame_index <= phase.end_frame) out.push_back(&f);
  }
  return out;
}

const PoseFrame* frame_at(const Trajectory& traj, int frame) {
  auto pos = traj.find(frame);
  return pos ? &traj.frames[*pos] : nullptr;
}

enum class Series { AnkleMean, LeftAnkle, RightAnkle };

// Jump events over the whole trajectory whose landing falls inside the phase.
std::vector<JumpEvent> phase_jumps(const Trajectory& traj, const ActionPhase& phase, Series which,
                                   const ScoringConfig& cfg) {
  if (traj.frames.size() < 3) return {};
  std::vector<double> xs, ys;
  std::vector<int> frames;
  for (const auto& f : traj.frames) {
    Point p;
    switch (which) {
      case Series::AnkleMean: p = midpoint(f.at(Kp::LeftAnkle), f.at(Kp::RightAnkle)); break;
      case Series::LeftAnkle: p = f.at(Kp::LeftAnkle); break;
      case Series::RightAnkle: p = f.at(Kp::RightAnkle); break;
    }
    xs.push_back(p.x);
    ys.push_back(p.y);
    frames.push_back(f.frame_index);
  }
  const double theta = cfg.theta_jump_scale * median_shank_length(traj);
  if (!(theta > 0.0)) return {};
  auto events = detect_jump_events(ys, frames, theta, cfg.k_min, xs, cfg.baseline_window);
  std::erase_if(events, [&](const JumpEvent& e) {
    return e.landing_frame < phase.start_frame || e.landing_frame > phase.end_frame;
  });
  return events;
}

constexpr std::array<Kp, 4> kFootKps{Kp::LeftHeel, Kp::RightHeel, Kp::LeftFootIndex, Kp::RightFootIndex};

// A foot keypoint lying within the touch band of any hoop edge.
std::optional<std::string> hoop_touch(const PoseFrame& f, const CourseLayout& layout, const ScoringConfig& cfg) {
  for (Kp k : kFootKps) {
    const Point p = f.at(k);
    for (const auto& h : layout.hoops) {
      if (std::abs(distance(p, h.center) - h.radius) <= cfg.hoop_touch_band * h.radius) {
        return "keypoint " + std::to_string(idx(k)) + " touches hoop " + std::to_string(h.id) +
               at_frame(f.frame_index);
      }
    }
  }
  return std::nullopt;
}

bool all_inside(const PoseFrame& f, std::span<const Kp> kps, const Hoop& h) {
  return std::all_of(kps.begin(), kps.end(),
                     [&](Kp k) { return point_in_circle(f.at(k), h.center, h.radius) == Containment::Inside; });
}

bool none_inside(const PoseFrame& f, std::span<const Kp> kps, const Hoop& h) {
  return std::none_of(kps.begin(), kps.end(),
                      [&](Kp k) { return point_in_circle(f.at(k), h.center, h.radius) == Containment::Inside; });
}

Point ankle_mid(const PoseFrame& f) { return midpoint(f.at(Kp::LeftAnkle), f.at(Kp::RightAnkle)); }

double sign_with_deadband(double v, double band) {
  if (v > band) return 1.0;
  if (v < -band) return -1.0;
  return 0.0;
}

// Monotone-chain hull, counterclockwise.
Polygon convex_hull(Polygon pts) {
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  if (pts.size() < 3) return pts;
  Polygon hull(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i - 1] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

double nearest_hand(const PoseFrame& f, Point p) {
  return std::min(distance(f.at(Kp::LeftIndex), p), distance(f.at(Kp::RightIndex), p));
}

// True when the signal dips below -band and later rises above +band.
bool back_then_forward(std::span<const double> v, double band) {
  bool back = false;
  for (double x : v) {
    if (x < -band) back = true;
    else if (back && x > band) return true;
  }
  return false;
}

const Hoop& need_hoop(const CourseLayout& layout, int id) {
  const Hoop* h = layout.hoop(id);
  if (!h) throw Error(ErrorCode::MalformedFile, "hoop " + std::to_string(id) + " absent");
  return *h;
}

const Cone& need_cone(const CourseLayout& layout, int id) {
  const Cone* c = layout.cone(id);
  if (!c) throw Error(ErrorCode::MalformedFile, "cone " + std::to_string(id) + " absent");
  return *c;
}

std::map<int, Point> ball_in_phase(const BallTrack& ball, const ActionPhase& phase) {
  std::map<int, Point> out;
  for (auto it = ball.samples.lower_bound(phase.start_frame);
       it != ball.samples.end() && it->first <= phase.end_frame; ++it) {
    out.insert(*it);
  }
  if (out.empty()) {
    throw Error(ErrorCode::NoBallObservations,
                "no ball samples in frames " + std::to_string(phase.start_frame) + "-" +
                    std::to_string(phase.end_frame));
  }
  return out;
}

}  // namespace

std::array<CriterionResult, 2> score_action1(const ActionPhase& phase, const Trajectory& traj,
                                             const CourseLayout& layout, const ScoringConfig& cfg) {
  require_action(phase, 1);
  const auto events = phase_jumps(traj, phase, Series::AnkleMean, cfg);

  int next_hoop = 1;
  std::string c1_evidence;
  for (const auto& e : events) {
    if (next_hoop > 3) break;
    const PoseFrame* f = frame_at(traj, e.landing_frame);
    if (f && all_inside(*f, kFootKps, need_hoop(layout, next_hoop))) {
      c1_evidence += (c1_evidence.empty() ? "landed in hoop " : ", hoop ") + std::to_string(next_hoop) +
                     at_frame(e.landing_frame);
      ++next_hoop;
    }
  }
  CriterionResult c1 = next_hoop > 3
                           ? result(1, true, c1_evidence)
                           : result(1, false, "no two-foot landing inside hoop " + std::to_string(next_hoop) +
                                                  " (" + std::to_string(events.size()) + " jumps found)");

  CriterionResult c2 = result(2, true, "three jumps without touching a hoop");
  if (events.size() != 3) {
    c2 = result(2, false, std::to_string(events.size()) + " jumps instead of 3");
  } else {
    for (const auto& e : events) {
      const PoseFrame* f = frame_at(traj, e.landing_frame);
      if (!f) continue;
      if (auto touch = hoop_touch(*f, layout, cfg)) {
        c2 = result(2, false, *touch);
        break;
      }
    }
  }
  return {c1, c2};
}

std::array<CriterionResult, 3> score_action2(const ActionPhase& phase, const Trajectory& traj,
                                             const CourseLayout& layout, const ScoringConfig& cfg) {
  require_action(phase, 2);
  const auto frames = phase_frames(traj, phase);

  std::string touched;
  bool all_touched = true;
  for (int id : {1, 2}) {
    const Cone& cone = need_cone(layout, id);
    const double reach = touch_radius(cone, cfg.r_touch_scale);
    std::optional<int> hit;
    for (const PoseFrame* f : frames) {
      if (nearest_hand(*f, cone.apex) <= reach) {
        hit = f->frame_index;
        break;
      }
    }
    if (hit) {
      touched += (touched.empty() ? "" : ", ") + std::string("cone ") + std::to_string(id) + at_frame(*hit);
    } else {
      all_touched = false;
      touched = "cone " + std::to_string(id) + " never touched";
      break;
    }
  }
  const CriterionResult c5 = result(5, all_touched, all_touched ? "touched " + touched : touched);

  // Turn = farthest ankle-midpoint excursion from the phase start.
  const double shank = median_shank_length(traj);
  std::size_t r = 0;
  double excursion = 0.0;
  double back = 0.0;
  if (!frames.empty()) {
    const double x0 = ankle_mid(*frames.front()).x;
    for (std::size_t i = 0; i < frames.size(); ++i) {
      const double d = std::abs(ankle_mid(*frames[i]).x - x0);
      if (d > excursion) {
        excursion = d;
        r = i;
      }
    }
    back = std::abs(ankle_mid(*frames.back()).x - ankle_mid(*frames[r]).x);
  }
  if (frames.empty() || excursion < shank || back < 0.5 * excursion) {
    const std::string why = std::string(to_string(ErrorCode::NoReversalFound)) + ": no turn in the slide";
    return {result(3, false, why), result(4, false, why), c5};
  }

  auto crossing = [&](std::size_t from, std::size_t to) -> std::optional<int> {
    for (std::size_t i = from; i <= to; ++i) {
      const PoseFrame& f = *frames[i];
      if (segments_intersect(f.at(Kp::RightKnee), f.at(Kp::RightAnkle), f.at(Kp::LeftKnee), f.at(Kp::LeftAnkle))) {
        return f.frame_index;
      }
    }
    return std::nullopt;
  };
  const int turn = frames[r]->frame_index;
  const auto out_cross = crossing(0, r);
  const auto back_cross = crossing(r, frames.size() - 1);
  CriterionResult c3 = out_cross ? result(3, false, "legs crossed" + at_frame(*out_cross))
                                 : result(3, true, "legs apart up to the turn" + at_frame(turn));
  CriterionResult c4 = back_cross ? result(4, false, "legs crossed" + at_frame(*back_cross))
                                  : result(4, true, "legs apart after the turn" + at_frame(turn));
  return {c3, c4, c5};
}

std::array<CriterionResult, 1> score_action3(const ActionPhase& phase, const Trajectory& traj,
                                             const CourseLayout& /*layout*/, const BallTrack& ball,
                                             const ScoringConfig& cfg) {
  require_action(phase, 3);
  const auto samples = ball_in_phase(ball, phase);
  const double rb = ball_radius(ball, traj, cfg);
  const double r_contact = cfg.r_contact_scale * rb;
  const double r_hold = cfg.r_hold_scale * rb;

  std::optional<int> contact;
  for (const auto& [t, b] : samples) {
    const PoseFrame* f = frame_at(traj, t);
    if (!f) continue;
    if (nearest_hand(*f, b) <= r_contact) {
      contact = t;
      break;
    }
    const Polygon torso = convex_hull({f->at(Kp::LeftShoulder), f->at(Kp::RightShoulder), f->at(Kp::LeftHip),
                                       f->at(Kp::RightHip)});
    if (distance_to_polygon(b, torso) <= r_contact) {
      return {result(6, false, "ball trapped against the body" + at_frame(t))};
    }
  }
  if (!contact) return {result(6, false, "ball never reached the hands")};

  for (int k = 0; k < cfg.hold_frames; ++k) {
    const int t = *contact + k;
    const auto b = ball.at(t);
    const PoseFrame* f = frame_at(traj, t);
    if (!b || !f || nearest_hand(*f, *b) > r_hold) {
      return {result(6, false, "ball left the hands" + at_frame(t))};
    }
  }
  return {result(6, true, "caught" + at_frame(*contact))};
}

std::array<CriterionResult, 2> score_action4(const ActionPhase& phase, const Trajectory& traj,
                                             const CourseLayout& layout, const BallTrack& ball,
                                             const ScoringConfig& /*cfg*/) {
  require_action(phase, 4);
  if (!layout.rect) throw Error(ErrorCode::MissingRect, "layout has no rectangular target");
  const auto samples = ball_in_phase(ball, phase);
  const Polygon rect = layout.rect->polygon();

  CriterionResult c7 = result(7, false, "ball never inside the target");
  for (const auto& [t, b] : samples) {
    if (point_in_polygon(b, rect) == Containment::Inside) {
      c7 = result(7, true, "ball inside the target" + at_frame(t));
      break;
    }
  }

  const auto frames = phase_frames(traj, phase);
  if (frames.empty()) return {c7, result(8, false, "no pose frames in the phase")};
  double mean_x = 0.0;
  for (const PoseFrame* f : frames) mean_x += ankle_mid(*f).x;
  mean_x /= static_cast<double>(frames.size());
  const double axis = centroid(rect).x >= mean_x ? 1.0 : -1.0;

  std::array<std::vector<double>, 2> rel;
  const std::array<Kp, 2> wrists{Kp::LeftWrist, Kp::RightWrist};
  for (const PoseFrame* f : frames) {
    for (std::size_t w = 0; w < 2; ++w) rel[w].push_back((f->at(wrists[w]).x - f->at(Kp::Nose).x) * axis);
  }
  auto range = [](const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
  };
  const std::size_t arm = range(rel[1]) > range(rel[0]) ? 1 : 0;
  const double band = 0.05 * median_shank_length(traj);
  const std::string side = arm == 0 ? "left" : "right";
  CriterionResult c8 = back_then_forward(rel[arm], band)
                           ? result(8, true, side + " arm swung back then through")
                           : result(8, false, side + " arm never drawn back behind the head");
  return {c7, c8};
}

std::array<CriterionResult, 2> score_action5(const ActionPhase& phase, const Trajectory& traj,
                                             const CourseLayout& /*layout*/, const ScoringConfig& cfg) {
  require_action(phase, 5);
  auto events = phase_jumps(traj, phase, Series::LeftAnkle, cfg);
  const auto right = phase_jumps(traj, phase, Series::RightAnkle, cfg);
  events.insert(events.end(), right.begin(), right.end());
  std::sort(events.begin(), events.end(),
            [](const JumpEvent& a, const JumpEvent& b) { return a.takeoff_frame < b.takeoff_frame; });
  int hops = 0;
  int reach = std::numeric_limits<int>::min();
  for (const auto& e : events) {
    if (e.takeoff_frame > reach) ++hops;
    reach = std::max(reach, e.landing_frame);
  }
  CriterionResult c9 = result(9, hops >= 2, std::to_string(hops) + " hops detected");

  const auto frames = phase_frames(traj, phase);
  if (frames.size() < 2) return {c9, result(10, false, "too few frames for arm swing")};
  const double travel = ankle_mid(*frames.back()).x - ankle_mid(*frames.front()).x;
  const double axis = travel >= 0.0 ? 1.0 : -1.0;
  const double band = 0.05 * median_shank_length(traj);

  std::array<int, 2> changes{0, 0};
  std::array<double, 2> last{0.0, 0.0};
  int both = 0;
  int opposite = 0;
  for (const PoseFrame* f : frames) {
    const double nose = f->at(Kp::Nose).x;
    const std::array<double, 2> sg{sign_with_deadband((f->at(Kp::LeftWrist).x - nose) * axis, band),
                                   sign_with_deadband((f->at(Kp::RightWrist).x - nose) * axis, band)};
    for (std::size_t w = 0; w < 2; ++w) {
      if (sg[w] == 0.0) continue;
      if (last[w] != 0.0 && sg[w] != last[w]) ++changes[w];
      last[w] = sg[w];
    }
    if (sg[0] != 0.0 && sg[1] != 0.0) {
      ++both;
      if (sg[0] != sg[1]) ++opposite;
    }
  }
  const bool swings = changes[0] >= 2 && changes[1] >= 2;
  const bool alternating = both > 0 && opposite >= 0.6 * both;
  std::string ev = "arm swings " + std::to_string(changes[0]) + "/" + std::to_string(changes[1]) + ", opposed in " +
                   std::to_string(opposite) + " of " + std::to_string(both) + " frames";
  return {c9, result(10, swings && alternating, ev)};
}

std::array<CriterionResult, 2> score_action6(const ActionPhase& phase, const Trajectory& traj,
                                             const CourseLayout& layout, const ScoringConfig& cfg) {
  require_action(phase, 6);
  const auto frames = phase_frames(traj, phase);
  double left_y = 0.0;
  double right_y = 0.0;
  for (const PoseFrame* f : frames) {
    left_y += f->at(Kp::LeftAnkle).y;
    right_y += f->at(Kp::RightAnkle).y;
  }
  const bool left_hop = left_y >= right_y;
  const auto events = phase_jumps(traj, phase, left_hop ? Series::LeftAnkle : Series::RightAnkle, cfg);
  const std::array<Kp, 2> hop_foot = left_hop ? std::array{Kp::LeftHeel, Kp::LeftFootIndex}
                                              : std::array{Kp::RightHeel, Kp::RightFootIndex};
  const std::array<Kp, 2> free_foot = left_hop ? std::array{Kp::RightHeel, Kp::RightFootIndex}
                                               : std::array{Kp::LeftHeel, Kp::LeftFootIndex};
  const double split = cfg.theta_split_scale * median_shank_length(traj);

  std::array<int, 7> landings{};
  int next_hoop = 1;
  std::optional<std::string> touch;
  for (const auto& e : events) {
    const PoseFrame* f = frame_at(traj, e.landing_frame);
    if (!f) continue;
    const Point foot = midpoint(f->at(hop_foot[0]), f->at(hop_foot[1]));
    for (int id = 1; id <= 6; ++id) {
      const Hoop& h = need_hoop(layout, id);
      if (point_in_circle(foot, h.center, h.radius) == Containment::Inside) {
        ++landings[static_cast<std::size_t>(id)];
        break;
      }
    }
    if (!touch) touch = hoop_touch(*f, layout, cfg);
    if (next_hoop <= 6) {
      const Hoop& h = need_hoop(layout, next_hoop);
      const bool one_foot = distance(f->at(Kp::LeftAnkle), f->at(Kp::RightAnkle)) >= split;
      if (one_foot && all_inside(*f, hop_foot, h) && none_inside(*f, free_foot, h)) ++next_hoop;
    }
  }
  const std::string foot_name = left_hop ? "left" : "right";
  CriterionResult c11 = next_hoop > 6
                            ? result(11, true, "one-foot landings on the " + foot_name + " foot in hoops 1-6")
                            : result(11, false, "no one-foot landing in hoop " + std::to_string(next_hoop));

  CriterionResult c12 = result(12, true, "one hop per hoop without touching");
  for (int id = 1; id <= 6; ++id) {
    const int n = landings[static_cast<std::size_t>(id)];
    if (n != 1) {
      c12 = result(12, false, std::to_string(n) + " landings in hoop " + std::to_string(id));
      break;
    }
  }
  if (c12.passed && touch) c12 = result(12, false, *touch);
  return {c11, c12};
}

std::array<CriterionResult, 2> score_action7(const ActionPhase& phase, const Trajectory& traj,
                                             const CourseLayout& layout, const BallTrack& ball,
                                             const ScoringConfig& cfg) {
  require_action(phase, 7);
  ball_in_phase(ball, phase);
  const double rb = ball_radius(ball, traj, cfg);
  const auto contact = find_kick_contact(ball, layout.zone(7), cfg.v_ball_scale * rb, phase.start_frame);
  if (!contact) throw Error(ErrorCode::NoKickDetected, "ball never launched from the kick zone", 7);
  const int t = *contact;
  const Point b0 = *ball.at(t);

  std::optional<Point> later;
  for (int k = cfg.kick_window; k >= 1 && !later; --k) later = ball.at(t + k);
  const Point dv = *later - b0;  // the launch guarantees a sample at t + 1
  const Point d = dv * (1.0 / norm(dv));
  const Point n{-d.y, d.x};

  const Cone& c5 = need_cone(layout, 5);
  const Cone& c6 = need_cone(layout, 6);
  const double s5 = dot(c5.apex, n);
  const double s6 = dot(c6.apex, n);
  const double lo = std::min(s5, s6) - touch_radius(s5 < s6 ? c5 : c6, cfg.r_touch_scale);
  const double hi = std::max(s5, s6) + touch_radius(s5 < s6 ? c6 : c5, cfg.r_touch_scale);
  const double sb = dot(b0, n);
  const bool behind = dot(d, b0 - midpoint(c5.apex, c6.apex)) < 0.0;
  CriterionResult c13 = (sb >= lo && sb <= hi && behind)
                            ? result(13, true, "ball heading through the gate" + at_frame(t))
                            : result(13, false, "ball heading outside the gate" + at_frame(t));

  const PoseFrame* fc = frame_at(traj, t);
  if (!fc) return {c13, result(14, false, "no pose at kick contact" + at_frame(t))};
  const bool left_kicks = distance(fc->at(Kp::LeftAnkle), b0) <= distance(fc->at(Kp::RightAnkle), b0);
  const Kp kick = left_kicks ? Kp::LeftAnkle : Kp::RightAnkle;
  const Kp support = left_kicks ? Kp::RightAnkle : Kp::LeftAnkle;
  const Kp support_knee = left_kicks ? Kp::RightKnee : Kp::LeftKnee;
  const double band = 0.05 * median_shank_length(traj);

  std::vector<double> swing;
  for (int f = t - cfg.kick_window; f <= t + cfg.kick_window; ++f) {
    const PoseFrame* p = frame_at(traj, f);
    if (!p) continue;
    const Point leg = p->at(support) - p->at(support_knee);
    const double len = norm(leg);
    if (len == 0.0) continue;
    Point m{-leg.y / len, leg.x / len};
    if (dot(m, d) < 0.0) m = m * -1.0;
    swing.push_back(dot(p->at(kick) - p->at(support), m));
  }
  const std::string side = left_kicks ? "left" : "right";
  CriterionResult c14 = back_then_forward(swing, band)
                            ? result(14, true, side + " leg swung through past the support foot")
                            : result(14, false, side + " leg never swung through past the support foot");
  return {c13, c14};
}

}  // namespace camsa
