#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "camsa/geometry.hpp"

namespace camsa {

// Low-resolution grayscale frame, row-major.
struct FrameGrid {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> values;

  std::uint8_t at(int x, int y) const {
    return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)];
  }
  friend bool operator==(const FrameGrid&, const FrameGrid&) = default;
};

// Ball centroid per frame, in the owning view's pixel coordinates. Frames
// without a detection have no entry.
struct BallTrack {
  std::map<int, Point> samples;
  std::optional<double> radius;  // pixels, when known

  std::optional<Point> at(int frame) const {
    auto it = samples.find(frame);
    if (it == samples.end()) return std::nullopt;
    return it->second;
  }
  friend bool operator==(const BallTrack&, const BallTrack&) = default;
};

// Grids aligned to consecutive frames starting at first_frame. A cell (cx, cy)
// maps to pixel origin + (cx, cy) * cell_size.
struct GridSequence {
  std::vector<FrameGrid> grids;
  int first_frame = 0;
  double cell_size = 1.0;
  Point origin;
};

using BallSource = std::variant<BallTrack, GridSequence>;

struct BlobDetection {
  Point centroid;  // cell coordinates
  int area = 0;    // cells
};

// Three-frame difference: mask = (|cur - prev| >= threshold) AND
// (|next - cur| >= threshold). Returns the largest 4-connected component with
// area >= min_area; ties go to the smaller (top, left) bounding-box corner.
std::optional<BlobDetection> detect_moving_blob(const FrameGrid& prev, const FrameGrid& cur,
                                                const FrameGrid& next, int threshold, int min_area);

std::optional<Point> three_frame_diff(const FrameGrid& prev, const FrameGrid& cur, const FrameGrid& next,
                                      int threshold = 25, int min_area = 4);

// Precomputed tracks pass through unchanged. Grid sequences are scanned over
// interior frames; a single missing frame between two detections is filled by
// linear interpolation.
BallTrack extract_ball_track(const BallSource& src, int threshold = 25, int min_area = 4);

// Grid file: u16 width, u16 height, u32 frame_count (little-endian), then
// frame_count raw frames of width*height bytes.
std::vector<FrameGrid> parse_grid_file(std::string_view bytes);
std::string write_grid_file(const std::vector<FrameGrid>& grids);

// {"frames": {"<idx>": [x, y] | null}, "radius": r?}
BallTrack parse_ball_track(std::string_view text);
std::string write_ball_track(const BallTrack& track);

}  // namespace camsa
