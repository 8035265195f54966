#include "camsa/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <nlohmann/json.hpp>

#include "camsa/error.hpp"

namespace camsa {

using nlohmann::json;

std::string_view to_string(View v) { return v == View::Front ? "front" : "rear"; }

View parse_view(std::string_view s) {
  if (s == "front") return View::Front;
  if (s == "rear") return View::Rear;
  throw Error(ErrorCode::MalformedFile, "view must be \"front\" or \"rear\"");
}

std::optional<std::size_t> Trajectory::find(int frame_index) const {
  auto it = std::lower_bound(frames.begin(), frames.end(), frame_index,
                             [](const PoseFrame& f, int i) { return f.frame_index < i; });
  if (it == frames.end() || it->frame_index != frame_index) return std::nullopt;
  return static_cast<std::size_t>(it - frames.begin());
}

void validate(const Trajectory& t) {
  if (!(t.fps > 0.0) || !std::isfinite(t.fps)) {
    throw Error(ErrorCode::NonPositiveFps, "fps must be positive");
  }
  for (std::size_t i = 0; i < t.frames.size(); ++i) {
    const auto& f = t.frames[i];
    if (f.frame_index < 0) throw Error(ErrorCode::NonMonotonicFrames, "negative frame index");
    if (i > 0 && f.frame_index <= t.frames[i - 1].frame_index) {
      throw Error(ErrorCode::NonMonotonicFrames,
                  "frame index " + std::to_string(f.frame_index) + " does not increase");
    }
    for (const auto& kp : f.keypoints) {
      if (!std::isfinite(kp.x) || !std::isfinite(kp.y)) {
        throw Error(ErrorCode::MalformedFile, "non-finite keypoint coordinate");
      }
      if (kp.visibility && !(*kp.visibility >= 0.0 && *kp.visibility <= 1.0)) {
        throw Error(ErrorCode::MalformedFile, "visibility outside [0, 1]");
      }
    }
  }
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double quantize(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

namespace {

double as_number(const json& j, const char* what) {
  if (!j.is_number()) throw Error(ErrorCode::MalformedFile, std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace

Trajectory parse_trajectory(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedFile, std::string("trajectory JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("view") || !doc.contains("fps") || !doc.contains("frames")) {
    throw Error(ErrorCode::MalformedFile, "trajectory needs view, fps and frames");
  }
  if (!doc["view"].is_string()) throw Error(ErrorCode::MalformedFile, "view must be a string");

  Trajectory t;
  t.view = parse_view(doc["view"].get<std::string>());
  t.fps = as_number(doc["fps"], "fps");
  if (!(t.fps > 0.0)) throw Error(ErrorCode::NonPositiveFps, "fps must be positive");

  const json& frames = doc["frames"];
  if (!frames.is_array() || frames.empty()) {
    throw Error(ErrorCode::MalformedFile, "frames must be a non-empty array");
  }
  t.frames.reserve(frames.size());
  for (const json& jf : frames) {
    if (!jf.is_object() || !jf.contains("i") || !jf.contains("kp")) {
      throw Error(ErrorCode::MalformedFile, "frame needs i and kp");
    }
    if (!jf["i"].is_number_integer()) throw Error(ErrorCode::MalformedFile, "frame i must be an integer");
    const json& kps = jf["kp"];
    if (!kps.is_array()) throw Error(ErrorCode::MalformedFile, "kp must be an array");
    if (kps.size() != kKeypointCount) {
      throw Error(ErrorCode::WrongKeypointCount,
                  "frame has " + std::to_string(kps.size()) + " keypoints, expected 33");
    }
    PoseFrame pf;
    pf.frame_index = jf["i"].get<int>();
    for (std::size_t k = 0; k < kKeypointCount; ++k) {
      const json& jk = kps[k];
      if (!jk.is_array() || jk.size() < 2 || jk.size() > 3) {
        throw Error(ErrorCode::MalformedFile, "keypoint must be [x, y] or [x, y, vis]");
      }
      Keypoint kp;
      kp.x = as_number(jk[0], "x");
      kp.y = as_number(jk[1], "y");
      if (jk.size() == 3) kp.visibility = as_number(jk[2], "visibility");
      pf.keypoints[k] = kp;
    }
    t.frames.push_back(pf);
  }
  validate(t);
  return t;
}

std::string write_trajectory(const Trajectory& t) {
  std::string out;
  out.reserve(t.frames.size() * 33 * 24 + 64);
  out += "{\"view\":\"";
  out += to_string(t.view);
  out += "\",\"fps\":";
  out += format_number(t.fps);
  out += ",\"frames\":[";
  for (std::size_t i = 0; i < t.frames.size(); ++i) {
    const auto& f = t.frames[i];
    out += i == 0 ? "\n" : ",\n";
    out += "{\"i\":";
    out += std::to_string(f.frame_index);
    out += ",\"kp\":[";
    for (std::size_t k = 0; k < kKeypointCount; ++k) {
      const auto& kp = f.keypoints[k];
      if (k) out += ',';
      out += '[';
      out += format_number(kp.x);
      out += ',';
      out += format_number(kp.y);
      if (kp.visibility) {
        out += ',';
        out += format_number(*kp.visibility);
      }
      out += ']';
    }
    out += "]}";
  }
  out += "\n]}\n";
  return out;
}

namespace {

// Fills flagged samples by linear interpolation over frame index; ends hold the
// nearest good sample. Returns false when no sample is good.
bool interpolate_flagged(std::vector<double>& v, const std::vector<bool>& bad,
                         const std::vector<int>& frame) {
  const std::size_t n = v.size();
  std::optional<std::size_t> prev;
  std::size_t i = 0;
  bool any_good = false;
  while (i < n) {
    if (!bad[i]) {
      prev = i;
      any_good = true;
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && bad[j]) ++j;
    for (std::size_t k = i; k < j; ++k) {
      if (prev && j < n) {
        const double t = static_cast<double>(frame[k] - frame[*prev]) /
                         static_cast<double>(frame[j] - frame[*prev]);
        v[k] = v[*prev] + t * (v[j] - v[*prev]);
      } else if (prev) {
        v[k] = v[*prev];
      } else if (j < n) {
        v[k] = v[j];
      }
    }
    i = j;
  }
  return any_good;
}

}  // namespace

Trajectory clean_trajectory(const Trajectory& t, const CleaningConfig& cfg) {
  Trajectory out = t;
  const std::size_t n = t.frames.size();
  if (n == 0) return out;

  const int window = std::max(1, cfg.median_window | 1);
  const double v_max = cfg.spike_fraction * std::hypot(cfg.image_width, cfg.image_height);

  std::vector<int> frame(n);
  for (std::size_t i = 0; i < n; ++i) frame[i] = t.frames[i].frame_index;

  std::vector<double> xs(n), ys(n);
  std::vector<bool> missing(n), bad(n);
  for (std::size_t k = 0; k < kKeypointCount; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& kp = t.frames[i].keypoints[k];
      xs[i] = kp.x;
      ys[i] = kp.y;
      missing[i] = kp.vis() < cfg.visibility_floor;
    }
    if (!interpolate_flagged(xs, missing, frame)) continue;
    interpolate_flagged(ys, missing, frame);

    const auto mx = rolling_median(xs, window);
    const auto my = rolling_median(ys, window);
    for (std::size_t i = 0; i < n; ++i) {
      bad[i] = missing[i] || std::hypot(xs[i] - mx[i], ys[i] - my[i]) > v_max;
    }
    interpolate_flagged(xs, bad, frame);
    interpolate_flagged(ys, bad, frame);

    // Repeated median filtering converges to a root signal in at most n passes.
    for (std::size_t pass = 0; pass < n; ++pass) {
      auto fx = rolling_median(xs, window);
      auto fy = rolling_median(ys, window);
      const bool fixed = fx == xs && fy == ys;
      xs = std::move(fx);
      ys = std::move(fy);
      if (fixed) break;
    }

    for (std::size_t i = 0; i < n; ++i) {
      auto& kp = out.frames[i].keypoints[k];
      kp.x = xs[i];
      kp.y = ys[i];
      if (missing[i]) kp.visibility = cfg.visibility_floor;
    }
  }
  return out;
}

double median_shank_length(const Trajectory& t) {
  std::vector<double> lengths;
  lengths.reserve(t.frames.size() * 2);
  for (const auto& f : t.frames) {
    lengths.push_back(distance(f.at(Kp::LeftKnee), f.at(Kp::LeftAnkle)));
    lengths.push_back(distance(f.at(Kp::RightKnee), f.at(Kp::RightAnkle)));
  }
  if (lengths.empty()) return 0.0;
  auto mid = lengths.begin() + static_cast<std::ptrdiff_t>(lengths.size() / 2);
  std::nth_element(lengths.begin(), mid, lengths.end());
  return *mid;
}

}  // namespace camsa
