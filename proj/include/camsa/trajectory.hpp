#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "camsa/geometry.hpp"

namespace camsa {

inline constexpr int kKeypointCount = 33;

// 33-landmark body topology. Only the ids the scoring rules touch are named.
enum class Kp : int {
  Nose = 0,
  LeftShoulder = 11,
  RightShoulder = 12,
  LeftElbow = 13,
  RightElbow = 14,
  LeftWrist = 15,
  RightWrist = 16,
  LeftPinky = 17,
  RightPinky = 18,
  LeftIndex = 19,
  RightIndex = 20,
  LeftThumb = 21,
  RightThumb = 22,
  LeftHip = 23,
  RightHip = 24,
  LeftKnee = 25,
  RightKnee = 26,
  LeftAnkle = 27,
  RightAnkle = 28,
  LeftHeel = 29,
  RightHeel = 30,
  LeftFootIndex = 31,
  RightFootIndex = 32,
};

constexpr int idx(Kp k) { return static_cast<int>(k); }

struct Keypoint {
  double x = 0.0;
  double y = 0.0;
  std::optional<double> visibility;  // absent reads as 1.0

  Point pos() const { return {x, y}; }
  double vis() const { return visibility.value_or(1.0); }
  friend bool operator==(const Keypoint&, const Keypoint&) = default;
};

struct PoseFrame {
  int frame_index = 0;
  std::array<Keypoint, kKeypointCount> keypoints{};

  Point at(Kp k) const { return keypoints[static_cast<std::size_t>(idx(k))].pos(); }
  friend bool operator==(const PoseFrame&, const PoseFrame&) = default;
};

enum class View { Front, Rear };

std::string_view to_string(View v);
View parse_view(std::string_view s);

struct Trajectory {
  View view = View::Front;
  double fps = 30.0;
  std::vector<PoseFrame> frames;

  // Position of frame_index in `frames`, or nullopt.
  std::optional<std::size_t> find(int frame_index) const;
  int first_frame() const { return frames.empty() ? 0 : frames.front().frame_index; }
  int last_frame() const { return frames.empty() ? -1 : frames.back().frame_index; }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

// Checks the type invariants; throws Error on the first violation.
void validate(const Trajectory& t);

// Canonical trajectory file (JSON). Throws MalformedFile, WrongKeypointCount,
// NonPositiveFps or NonMonotonicFrames.
Trajectory parse_trajectory(std::string_view text);
// Writer output is canonical: parse_trajectory(write_trajectory(t)) == t up to
// the 6 significant digits the writer keeps.
std::string write_trajectory(const Trajectory& t);

// Formats a number with 6 significant digits, the precision every writer in
// this library uses for coordinates.
std::string format_number(double v);
double quantize(double v);

struct CleaningConfig {
  int median_window = 5;
  double spike_fraction = 0.15;   // of the image diagonal, per frame
  double image_width = 1920.0;
  double image_height = 1080.0;
  double visibility_floor = 0.3;
};

// Outlier rejection followed by iterated median filtering. Samples below the
// visibility floor or far from the local median are replaced by linear
// interpolation of their neighbours; the result is filtered until it is a
// fixed point of the median filter, so cleaning an already cleaned track is a
// no-op. Frame count, fps and view are preserved.
Trajectory clean_trajectory(const Trajectory& t, const CleaningConfig& cfg = {});

// Median knee-to-ankle distance over both legs and all frames.
double median_shank_length(const Trajectory& t);

}  // namespace camsa
