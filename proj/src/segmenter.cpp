#include "camsa/segmenter.hpp"

#include <limits>

#include <nlohmann/json.hpp>

namespace camsa {

using nlohmann::ordered_json;

double ball_radius(const BallTrack& track, const Trajectory& traj, const ScoringConfig& cfg) {
  if (track.radius) return *track.radius;
  return cfg.ball_radius_shank_ratio * median_shank_length(traj);
}

namespace {

Point reference_point(const PoseFrame& f) { return midpoint(f.at(Kp::LeftAnkle), f.at(Kp::RightAnkle)); }

bool inside(const Polygon* poly, Point p) {
  if (!poly || poly->size() < 3 || signed_area(*poly) == 0.0) return false;
  return point_in_polygon(p, *poly) != Containment::Outside;
}

// Per-view access expressed on the shared (front) timeline.
class Timeline {
 public:
  explicit Timeline(const RunBundle& b) : b_(b) {}

  const Trajectory& traj(View v) const { return v == View::Front ? b_.front : b_.rear; }
  const CourseLayout& layout(View v) const { return v == View::Front ? b_.front_layout : b_.rear_layout; }
  int to_global(View v, int frame) const { return v == View::Front ? frame : b_.to_front(frame); }

  bool in_zone(ActionId a, const PoseFrame& f) const {
    return inside(layout(view_for_action(a)).zone(a), reference_point(f));
  }

  // First frame (view numbering) opening a run of >= d_min consecutive
  // in-zone frames at or after global frame `from`.
  std::optional<int> durable_open(ActionId a, int from, int d_min) const {
    const View v = view_for_action(a);
    int run = 0;
    int run_start = 0;
    for (const auto& f : traj(v).frames) {
      if (to_global(v, f.frame_index) < from) continue;
      if (in_zone(a, f)) {
        if (run == 0) run_start = f.frame_index;
        if (++run >= d_min) return run_start;
      } else {
        run = 0;
      }
    }
    return std::nullopt;
  }

  // Last in-zone frame with global index in [from, to].
  std::optional<int> last_in_zone(ActionId a, int from, int to) const {
    const View v = view_for_action(a);
    std::optional<int> last;
    for (const auto& f : traj(v).frames) {
      const int g = to_global(v, f.frame_index);
      if (g < from) continue;
      if (g > to) break;
      if (in_zone(a, f)) last = f.frame_index;
    }
    return last;
  }

 private:
  const RunBundle& b_;
};

std::optional<int> find_run_start(const RunBundle& b) {
  const Polygon& start = b.front_layout.start_region;
  bool seen_inside = false;
  for (const auto& f : b.front.frames) {
    if (inside(&start, reference_point(f))) {
      seen_inside = true;
    } else if (seen_inside) {
      return f.frame_index;
    }
  }
  if (!b.front.frames.empty() && !seen_inside) return b.front.frames.front().frame_index;
  return std::nullopt;
}

}  // namespace

std::optional<int> find_kick_contact(const BallTrack& ball, const Polygon* zone, double v_ball, int from_frame) {
  for (auto it = ball.samples.begin(); it != ball.samples.end(); ++it) {
    const int t = it->first;
    if (t < from_frame) continue;
    const auto next = ball.at(t + 1);
    if (!next || distance(*next, it->second) < v_ball) continue;
    const auto prev = ball.at(t - 1);
    if (prev && distance(it->second, *prev) >= v_ball) continue;
    if (!inside(zone, it->second)) continue;
    return t;
  }
  return std::nullopt;
}

PartialSegmentation segment_partial(const RunBundle& b, const BallTrack& ball_rear, const ScoringConfig& cfg) {
  PartialSegmentation out;
  Timeline tl(b);
  out.run_start_frame = find_run_start(b);
  int cursor = out.run_start_frame.value_or(0);

  for (ActionId k = 1; k <= kActionCount; ++k) {
    const View v = view_for_action(k);
    const auto open = tl.durable_open(k, cursor, cfg.d_min);
    if (!open) {
      out.issues.push_back({ErrorCode::MissingPhase, k, "zone " + std::to_string(k) + " never dwelt in"});
      continue;
    }
    const int open_g = tl.to_global(v, *open);
    if (k < kActionCount) {
      const auto early = tl.durable_open(k + 1, cursor, cfg.d_min);
      if (early && tl.to_global(view_for_action(k + 1), *early) < open_g) {
        out.issues.push_back({ErrorCode::OutOfOrder, k + 1,
                              "zone " + std::to_string(k + 1) + " entered before zone " + std::to_string(k)});
      }
    }

    // The phase closes when the next action's zone opens. Zones may overlap
    // (the hoop lane serves two actions), so when k+1 never opens a later
    // zone only counts once the reference point has left zone k.
    std::optional<int> next_open_g;
    if (k < kActionCount) {
      if (auto o = tl.durable_open(k + 1, open_g, cfg.d_min)) next_open_g = tl.to_global(view_for_action(k + 1), *o);
    }
    for (ActionId j = k + 2; j <= kActionCount && !next_open_g; ++j) {
      const View vj = view_for_action(j);
      int from = open_g;
      while (auto o = tl.durable_open(j, from, cfg.d_min)) {
        const int g = tl.to_global(vj, *o);
        const auto pos = tl.traj(v).find(v == View::Front ? g : b.to_rear(g));
        const bool in_k = pos && tl.in_zone(k, tl.traj(v).frames[*pos]);
        if (!in_k) {
          next_open_g = g;
          break;
        }
        from = g + 1;
      }
    }
    const int limit = next_open_g ? *next_open_g - 1 : std::numeric_limits<int>::max();
    const int end = tl.last_in_zone(k, open_g, limit).value_or(*open);
    out.phases[static_cast<std::size_t>(k - 1)] = ActionPhase{k, v, *open, end};
    cursor = tl.to_global(v, end) + 1;
  }

  const auto& ph7 = out.phase(7);
  const int kick_from = ph7 ? b.to_front(ph7->start_frame) : cursor;
  const double v_ball = cfg.v_ball_scale * ball_radius(ball_rear, b.rear, cfg);
  out.kick_frame = find_kick_contact(ball_rear, b.rear_layout.zone(7), v_ball, b.to_rear(kick_from));
  if (!out.kick_frame) {
    out.issues.push_back({ErrorCode::NoKickDetected, 7, "ball never launched from the kick zone"});
  } else {
    out.run_end_frame = b.to_front(*out.kick_frame);
    auto& p7 = out.phases[6];
    if (p7) p7->end_frame = std::max(p7->start_frame, std::min(p7->end_frame, *out.kick_frame));
  }
  return out;
}

SegmentationResult segment(const RunBundle& b, const ScoringConfig& cfg) {
  const BallTrack ball = extract_ball_track(b.ball_rear, cfg.diff_threshold, cfg.min_area);
  const PartialSegmentation p = segment_partial(b, ball, cfg);
  if (!p.issues.empty()) {
    const auto& first = p.issues.front();
    throw Error(first.code, first.message, first.action);
  }
  SegmentationResult r;
  for (std::size_t i = 0; i < r.phases.size(); ++i) r.phases[i] = *p.phases[i];
  r.run_start_frame = *p.run_start_frame;
  r.run_end_frame = *p.run_end_frame;
  return r;
}

int completed_frames(const SegmentationResult& seg) { return seg.run_end_frame - seg.run_start_frame; }

std::string write_phases(const PartialSegmentation& seg) {
  ordered_json phases = ordered_json::array();
  for (const auto& p : seg.phases) {
    if (!p) continue;
    phases.push_back({{"action", p->action},
                      {"view", std::string(to_string(p->view))},
                      {"start", p->start_frame},
                      {"end", p->end_frame}});
  }
  return phases.dump(1) + "\n";
}

}  // namespace camsa
