#include "camsa/config.hpp"

#include <nlohmann/json.hpp>

#include "camsa/error.hpp"

namespace camsa {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <typename T>
void read(const json& doc, const char* key, T& field, bool& used) {
  if (!doc.contains(key)) return;
  used = true;
  const json& v = doc[key];
  if constexpr (std::is_same_v<T, int>) {
    if (!v.is_number_integer()) throw Error(ErrorCode::MalformedFile, std::string(key) + " must be an integer");
  } else {
    if (!v.is_number()) throw Error(ErrorCode::MalformedFile, std::string(key) + " must be a number");
  }
  field = v.get<T>();
}

}  // namespace

ScoringConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedFile, std::string("config JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::MalformedFile, "config must be a JSON object");

  ScoringConfig c;
  std::size_t used = 0;
  auto field = [&](const char* key, auto& target) {
    bool hit = false;
    read(doc, key, target, hit);
    used += hit ? 1 : 0;
  };
  field("median_window", c.cleaning.median_window);
  field("spike_fraction", c.cleaning.spike_fraction);
  field("image_width", c.cleaning.image_width);
  field("image_height", c.cleaning.image_height);
  field("visibility_floor", c.cleaning.visibility_floor);
  field("theta_jump_scale", c.theta_jump_scale);
  field("k_min", c.k_min);
  field("baseline_window", c.baseline_window);
  field("r_touch_scale", c.r_touch_scale);
  field("hoop_touch_band", c.hoop_touch_band);
  field("diff_threshold", c.diff_threshold);
  field("min_area", c.min_area);
  field("d_min", c.d_min);
  field("ball_radius_shank_ratio", c.ball_radius_shank_ratio);
  field("r_contact_scale", c.r_contact_scale);
  field("r_hold_scale", c.r_hold_scale);
  field("hold_frames", c.hold_frames);
  field("v_ball_scale", c.v_ball_scale);
  field("kick_window", c.kick_window);
  field("theta_split_scale", c.theta_split_scale);
  if (used != doc.size()) throw Error(ErrorCode::MalformedFile, "config has unknown keys");

  if (c.theta_jump_scale <= 0 || c.k_min < 1 || c.d_min < 1 || c.r_touch_scale <= 0 || c.min_area < 1 ||
      c.diff_threshold <= 0 || c.diff_threshold >= 255 || c.baseline_window < 1 || c.baseline_window % 2 == 0 ||
      c.cleaning.median_window < 1) {
    throw Error(ErrorCode::InvalidArgument, "config threshold out of range");
  }
  return c;
}

std::string write_config(const ScoringConfig& c) {
  ordered_json doc;
  doc["median_window"] = c.cleaning.median_window;
  doc["spike_fraction"] = c.cleaning.spike_fraction;
  doc["image_width"] = c.cleaning.image_width;
  doc["image_height"] = c.cleaning.image_height;
  doc["visibility_floor"] = c.cleaning.visibility_floor;
  doc["theta_jump_scale"] = c.theta_jump_scale;
  doc["k_min"] = c.k_min;
  doc["baseline_window"] = c.baseline_window;
  doc["r_touch_scale"] = c.r_touch_scale;
  doc["hoop_touch_band"] = c.hoop_touch_band;
  doc["diff_threshold"] = c.diff_threshold;
  doc["min_area"] = c.min_area;
  doc["d_min"] = c.d_min;
  doc["ball_radius_shank_ratio"] = c.ball_radius_shank_ratio;
  doc["r_contact_scale"] = c.r_contact_scale;
  doc["r_hold_scale"] = c.r_hold_scale;
  doc["hold_frames"] = c.hold_frames;
  doc["v_ball_scale"] = c.v_ball_scale;
  doc["kick_window"] = c.kick_window;
  doc["theta_split_scale"] = c.theta_split_scale;
  return doc.dump(2) + "\n";
}

}  // namespace camsa
