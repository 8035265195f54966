#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "camsa/bundle.hpp"
#include "camsa/config.hpp"
#include "camsa/error.hpp"

namespace camsa {

struct ActionPhase {
  ActionId action = 1;
  View view = View::Front;
  int start_frame = 0;  // in the owning view's frame numbering
  int end_frame = 0;
  friend bool operator==(const ActionPhase&, const ActionPhase&) = default;
};

struct SegmentationResult {
  std::array<ActionPhase, kActionCount> phases{};
  int run_start_frame = 0;  // front frames
  int run_end_frame = 0;    // front-equivalent frame of kick contact
};

struct SegmentationIssue {
  ErrorCode code;
  int action = 0;
  std::string message;
};

// Segmentation that keeps going past missing phases so partial runs can still
// be scored. Issues are listed in the order they were found.
struct PartialSegmentation {
  std::array<std::optional<ActionPhase>, kActionCount> phases{};
  std::optional<int> run_start_frame;
  std::optional<int> run_end_frame;
  std::optional<int> kick_frame;  // rear frame numbering
  std::vector<SegmentationIssue> issues;

  const std::optional<ActionPhase>& phase(ActionId a) const { return phases[static_cast<std::size_t>(a - 1)]; }
};

// Ball radius in pixels: the track's own estimate, else a fraction of the
// trajectory's median shank length.
double ball_radius(const BallTrack& track, const Trajectory& traj, const ScoringConfig& cfg);

// Kick contact: the last frame a ball at rest inside `zone` occupies before it
// moves at least v_ball per frame. Frames are in the track's numbering.
std::optional<int> find_kick_contact(const BallTrack& ball, const Polygon* zone, double v_ball, int from_frame);

// Trajectories are expected to be cleaned already; ball tracks extracted.
PartialSegmentation segment_partial(const RunBundle& bundle, const BallTrack& ball_rear,
                                    const ScoringConfig& cfg = {});

// Strict form: throws MissingPhase(k), OutOfOrder or NoKickDetected.
SegmentationResult segment(const RunBundle& bundle, const ScoringConfig& cfg = {});

int completed_frames(const SegmentationResult& seg);

// JSON list of phases with frame bounds.
std::string write_phases(const PartialSegmentation& seg);

}  // namespace camsa
