#include "camsa/balltrack.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "camsa/error.hpp"
#include "camsa/trajectory.hpp"

namespace camsa {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

void check_grid(const FrameGrid& g) {
  if (g.width <= 0 || g.height <= 0 ||
      static_cast<std::size_t>(g.width) * static_cast<std::size_t>(g.height) != g.values.size()) {
    throw Error(ErrorCode::DimensionMismatch, "grid size does not match width*height");
  }
}

}  // namespace

std::optional<BlobDetection> detect_moving_blob(const FrameGrid& prev, const FrameGrid& cur,
                                                const FrameGrid& next, int threshold, int min_area) {
  check_grid(prev);
  check_grid(cur);
  check_grid(next);
  if (prev.width != cur.width || prev.height != cur.height || next.width != cur.width ||
      next.height != cur.height) {
    throw Error(ErrorCode::DimensionMismatch, "three-frame difference needs equal grid sizes");
  }
  if (threshold <= 0 || threshold >= 255) {
    throw Error(ErrorCode::InvalidArgument, "difference threshold must be in (0, 255)");
  }
  if (min_area < 1) throw Error(ErrorCode::InvalidArgument, "min_area must be at least 1");

  const int w = cur.width;
  const int h = cur.height;
  const std::size_t n = cur.values.size();
  std::vector<std::uint8_t> mask(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int d1 = std::abs(int{cur.values[i]} - int{prev.values[i]});
    const int d2 = std::abs(int{next.values[i]} - int{cur.values[i]});
    mask[i] = d1 >= threshold && d2 >= threshold;
  }

  std::optional<BlobDetection> best;
  int best_top = 0;
  int best_left = 0;
  std::vector<int> label(n, 0);
  std::vector<int> stack;
  for (int y0 = 0; y0 < h; ++y0) {
    for (int x0 = 0; x0 < w; ++x0) {
      const std::size_t start = static_cast<std::size_t>(y0 * w + x0);
      if (!mask[start] || label[start]) continue;
      label[start] = 1;
      stack.assign(1, static_cast<int>(start));
      int area = 0;
      double sx = 0.0;
      double sy = 0.0;
      int top = y0;
      int left = x0;
      while (!stack.empty()) {
        const int c = stack.back();
        stack.pop_back();
        const int cx = c % w;
        const int cy = c / w;
        ++area;
        sx += cx;
        sy += cy;
        top = std::min(top, cy);
        left = std::min(left, cx);
        const int nbr[4][2] = {{cx - 1, cy}, {cx + 1, cy}, {cx, cy - 1}, {cx, cy + 1}};
        for (const auto& p : nbr) {
          if (p[0] < 0 || p[0] >= w || p[1] < 0 || p[1] >= h) continue;
          const std::size_t k = static_cast<std::size_t>(p[1] * w + p[0]);
          if (mask[k] && !label[k]) {
            label[k] = 1;
            stack.push_back(static_cast<int>(k));
          }
        }
      }
      if (area < min_area) continue;
      const bool better = !best || area > best->area ||
                          (area == best->area && (top < best_top || (top == best_top && left < best_left)));
      if (better) {
        best = BlobDetection{{sx / area, sy / area}, area};
        best_top = top;
        best_left = left;
      }
    }
  }
  return best;
}

std::optional<Point> three_frame_diff(const FrameGrid& prev, const FrameGrid& cur, const FrameGrid& next,
                                      int threshold, int min_area) {
  auto blob = detect_moving_blob(prev, cur, next, threshold, min_area);
  if (!blob) return std::nullopt;
  return blob->centroid;
}

BallTrack extract_ball_track(const BallSource& src, int threshold, int min_area) {
  if (const auto* pre = std::get_if<BallTrack>(&src)) return *pre;

  const auto& seq = std::get<GridSequence>(src);
  BallTrack track;
  std::vector<double> radii;
  const int n = static_cast<int>(seq.grids.size());
  for (int k = 1; k + 1 < n; ++k) {
    const auto blob = detect_moving_blob(seq.grids[static_cast<std::size_t>(k - 1)],
                                         seq.grids[static_cast<std::size_t>(k)],
                                         seq.grids[static_cast<std::size_t>(k + 1)], threshold, min_area);
    if (!blob) continue;
    track.samples[seq.first_frame + k] = seq.origin + blob->centroid * seq.cell_size;
    radii.push_back(std::sqrt(blob->area / std::numbers::pi) * seq.cell_size);
  }

  // Isolated single-frame gaps.
  std::map<int, Point> filled;
  for (auto it = track.samples.begin(); it != track.samples.end(); ++it) {
    auto nx = std::next(it);
    if (nx != track.samples.end() && nx->first == it->first + 2) {
      filled[it->first + 1] = midpoint(it->second, nx->second);
    }
  }
  track.samples.merge(filled);

  if (!radii.empty()) {
    auto mid = radii.begin() + static_cast<std::ptrdiff_t>(radii.size() / 2);
    std::nth_element(radii.begin(), mid, radii.end());
    track.radius = *mid;
  }
  return track;
}

namespace {

std::uint32_t read_le(std::string_view b, std::size_t off, int bytes) {
  std::uint32_t v = 0;
  for (int i = 0; i < bytes; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(b[off + static_cast<std::size_t>(i)])) << (8 * i);
  }
  return v;
}

void write_le(std::string& out, std::uint32_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

}  // namespace

std::vector<FrameGrid> parse_grid_file(std::string_view bytes) {
  if (bytes.size() < 8) throw Error(ErrorCode::MalformedFile, "grid file shorter than its header");
  const int w = static_cast<int>(read_le(bytes, 0, 2));
  const int h = static_cast<int>(read_le(bytes, 2, 2));
  const std::size_t count = read_le(bytes, 4, 4);
  const std::size_t frame_bytes = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (w == 0 || h == 0) throw Error(ErrorCode::MalformedFile, "grid dimensions must be positive");
  if (bytes.size() != 8 + count * frame_bytes) {
    throw Error(ErrorCode::MalformedFile, "grid file size does not match its header");
  }
  std::vector<FrameGrid> grids(count);
  for (std::size_t f = 0; f < count; ++f) {
    grids[f].width = w;
    grids[f].height = h;
    const auto* p = reinterpret_cast<const std::uint8_t*>(bytes.data() + 8 + f * frame_bytes);
    grids[f].values.assign(p, p + frame_bytes);
  }
  return grids;
}

std::string write_grid_file(const std::vector<FrameGrid>& grids) {
  std::string out;
  const int w = grids.empty() ? 0 : grids.front().width;
  const int h = grids.empty() ? 0 : grids.front().height;
  for (const auto& g : grids) {
    check_grid(g);
    if (g.width != w || g.height != h) throw Error(ErrorCode::DimensionMismatch, "grids differ in size");
  }
  write_le(out, static_cast<std::uint32_t>(w), 2);
  write_le(out, static_cast<std::uint32_t>(h), 2);
  write_le(out, static_cast<std::uint32_t>(grids.size()), 4);
  for (const auto& g : grids) out.append(g.values.begin(), g.values.end());
  return out;
}

BallTrack parse_ball_track(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedFile, std::string("ball track JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("frames") || !doc["frames"].is_object()) {
    throw Error(ErrorCode::MalformedFile, "ball track needs a frames object");
  }
  BallTrack t;
  for (const auto& [key, v] : doc["frames"].items()) {
    int frame = 0;
    try {
      frame = std::stoi(key);
    } catch (const std::exception&) {
      throw Error(ErrorCode::MalformedFile, "ball track key must be a frame index");
    }
    if (v.is_null()) continue;
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw Error(ErrorCode::MalformedFile, "ball sample must be [x, y] or null");
    }
    t.samples[frame] = {v[0].get<double>(), v[1].get<double>()};
  }
  if (doc.contains("radius") && !doc["radius"].is_null()) {
    if (!doc["radius"].is_number() || !(doc["radius"].get<double>() > 0.0)) {
      throw Error(ErrorCode::MalformedFile, "ball radius must be a positive number");
    }
    t.radius = doc["radius"].get<double>();
  }
  return t;
}

std::string write_ball_track(const BallTrack& track) {
  ordered_json frames = ordered_json::object();
  for (const auto& [f, p] : track.samples) {
    frames[std::to_string(f)] = ordered_json::array({quantize(p.x), quantize(p.y)});
  }
  ordered_json doc;
  doc["frames"] = frames;
  if (track.radius) doc["radius"] = quantize(*track.radius);
  return doc.dump() + "\n";
}

}  // namespace camsa
