#pragma once

#include <string>
#include <string_view>

#include "camsa/trajectory.hpp"

namespace camsa {

// Thresholds for the whole pipeline. Every distance is relative to a body or
// landmark size so outcomes do not depend on image resolution.
struct ScoringConfig {
  CleaningConfig cleaning;

  // Jump detection: theta = theta_jump_scale * median shank length.
  double theta_jump_scale = 0.5;
  int k_min = 3;
  int baseline_window = 15;

  // Cone touch disk radius = r_touch_scale * cone base circumradius.
  double r_touch_scale = 1.5;
  // A foot keypoint within hoop_touch_band * radius of a hoop edge touches it.
  double hoop_touch_band = 0.05;

  // Three-frame difference.
  int diff_threshold = 25;
  int min_area = 4;

  // Segmentation: frames of continuous zone presence that open a phase.
  int d_min = 3;

  // Ball radius when the track does not carry one, as a fraction of shank.
  double ball_radius_shank_ratio = 0.3;
  double r_contact_scale = 1.2;
  double r_hold_scale = 2.0;
  int hold_frames = 5;
  // Kick launch speed threshold, ball radii per frame.
  double v_ball_scale = 1.0;
  int kick_window = 10;

  // One-foot landing: ankles at least theta_split_scale * shank apart.
  double theta_split_scale = 0.4;
};

// JSON object of overrides; unknown keys are rejected.
ScoringConfig parse_config(std::string_view text);
std::string write_config(const ScoringConfig& cfg);

}  // namespace camsa
