#pragma once

#include <filesystem>
#include <string>

#include "camsa/balltrack.hpp"
#include "camsa/course.hpp"
#include "camsa/trajectory.hpp"

namespace camsa {

// Everything recorded for one child: both camera streams, their layouts and
// ball observations. Rear frame i corresponds to front frame i + rear_frame_offset.
struct RunBundle {
  Trajectory front;
  Trajectory rear;
  int rear_frame_offset = 0;
  CourseLayout front_layout;
  CourseLayout rear_layout;
  BallSource ball_front = BallTrack{};
  BallSource ball_rear = BallTrack{};

  int to_front(int rear_frame) const { return rear_frame + rear_frame_offset; }
  int to_rear(int front_frame) const { return front_frame - rear_frame_offset; }
};

// Throws ViewMismatch or FpsMismatch.
void validate(const RunBundle& b);

// Manifest: JSON naming the member files relative to the manifest directory.
//   {"front": path, "rear": path, "rear_frame_offset": int,
//    "front_layout": path, "rear_layout": path,
//    "ball_front": {"track": path} | {"grids": path, "first_frame": int,
//                                     "cell_size": num, "origin": [x, y]},
//    "ball_rear": ...}
// Missing files raise Io; malformed content raises MalformedFile and friends.
RunBundle load_bundle(const std::filesystem::path& manifest);
// Writes the manifest plus member files next to it.
void write_bundle(const std::filesystem::path& manifest, const RunBundle& b);

// Uniformly scales every coordinate (keypoints, landmarks, ball samples).
RunBundle scale_bundle(const RunBundle& b, double factor);

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, std::string_view content);

}  // namespace camsa
