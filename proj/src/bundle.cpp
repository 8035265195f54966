#include "camsa/bundle.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "camsa/error.hpp"

namespace camsa {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

void validate(const RunBundle& b) {
  if (b.front.view != View::Front || b.rear.view != View::Rear) {
    throw Error(ErrorCode::ViewMismatch, "bundle needs a front and a rear trajectory");
  }
  if (b.front.fps != b.rear.fps) {
    throw Error(ErrorCode::FpsMismatch, "front and rear trajectories differ in fps");
  }
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, std::string_view content) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + p.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(ErrorCode::Io, "failed writing " + p.string());
}

namespace {

std::string member(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_string()) {
    throw Error(ErrorCode::MalformedFile, std::string("manifest needs a path for ") + key);
  }
  return doc[key].get<std::string>();
}

BallSource load_ball(const json& desc, const fs::path& dir) {
  if (!desc.is_object()) throw Error(ErrorCode::MalformedFile, "ball source must be an object");
  if (desc.contains("track")) {
    return parse_ball_track(read_file(dir / member(desc, "track")));
  }
  if (desc.contains("grids")) {
    GridSequence seq;
    seq.grids = parse_grid_file(read_file(dir / member(desc, "grids")));
    seq.first_frame = desc.value("first_frame", 0);
    seq.cell_size = desc.value("cell_size", 1.0);
    if (desc.contains("origin")) {
      const auto& o = desc["origin"];
      if (!o.is_array() || o.size() != 2) throw Error(ErrorCode::MalformedFile, "origin must be [x, y]");
      seq.origin = {o[0].get<double>(), o[1].get<double>()};
    }
    return seq;
  }
  throw Error(ErrorCode::MalformedFile, "ball source needs track or grids");
}

ordered_json save_ball(const BallSource& src, const fs::path& dir, const std::string& stem) {
  ordered_json desc;
  if (const auto* track = std::get_if<BallTrack>(&src)) {
    write_file(dir / (stem + ".json"), write_ball_track(*track));
    desc["track"] = stem + ".json";
  } else {
    const auto& seq = std::get<GridSequence>(src);
    write_file(dir / (stem + ".grid"), write_grid_file(seq.grids));
    desc["grids"] = stem + ".grid";
    desc["first_frame"] = seq.first_frame;
    desc["cell_size"] = seq.cell_size;
    desc["origin"] = {seq.origin.x, seq.origin.y};
  }
  return desc;
}

}  // namespace

RunBundle load_bundle(const fs::path& manifest) {
  json doc;
  try {
    doc = json::parse(read_file(manifest));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedFile, std::string("manifest JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::MalformedFile, "manifest must be an object");
  const fs::path dir = manifest.parent_path();
  RunBundle b;
  b.front = parse_trajectory(read_file(dir / member(doc, "front")));
  b.rear = parse_trajectory(read_file(dir / member(doc, "rear")));
  if (doc.contains("rear_frame_offset")) {
    if (!doc["rear_frame_offset"].is_number_integer()) {
      throw Error(ErrorCode::MalformedFile, "rear_frame_offset must be an integer");
    }
    b.rear_frame_offset = doc["rear_frame_offset"].get<int>();
  }
  b.front_layout = parse_layout(read_file(dir / member(doc, "front_layout")));
  b.rear_layout = parse_layout(read_file(dir / member(doc, "rear_layout")));
  b.ball_front = doc.contains("ball_front") ? load_ball(doc["ball_front"], dir) : BallSource{BallTrack{}};
  b.ball_rear = doc.contains("ball_rear") ? load_ball(doc["ball_rear"], dir) : BallSource{BallTrack{}};
  validate(b);
  return b;
}

void write_bundle(const fs::path& manifest, const RunBundle& b) {
  const fs::path dir = manifest.parent_path();
  write_file(dir / "front.json", write_trajectory(b.front));
  write_file(dir / "rear.json", write_trajectory(b.rear));
  write_file(dir / "front_layout.json", write_layout(b.front_layout));
  write_file(dir / "rear_layout.json", write_layout(b.rear_layout));
  ordered_json doc;
  doc["front"] = "front.json";
  doc["rear"] = "rear.json";
  doc["rear_frame_offset"] = b.rear_frame_offset;
  doc["front_layout"] = "front_layout.json";
  doc["rear_layout"] = "rear_layout.json";
  doc["ball_front"] = save_ball(b.ball_front, dir, "ball_front");
  doc["ball_rear"] = save_ball(b.ball_rear, dir, "ball_rear");
  write_file(manifest, doc.dump(2) + "\n");
}

namespace {

void scale_layout(CourseLayout& l, double f) {
  for (auto& h : l.hoops) {
    h.center = h.center * f;
    h.radius *= f;
  }
  for (auto& c : l.cones) {
    c.apex = c.apex * f;
    for (auto& p : c.base) p = p * f;
  }
  if (l.rect) {
    for (auto& p : l.rect->corners) p = p * f;
  }
  for (auto& p : l.start_region) p = p * f;
  for (auto& [a, poly] : l.zones) {
    for (auto& p : poly) p = p * f;
  }
}

void scale_ball(BallSource& src, double f) {
  if (auto* t = std::get_if<BallTrack>(&src)) {
    for (auto& [frame, p] : t->samples) p = p * f;
    if (t->radius) *t->radius *= f;
  } else {
    auto& seq = std::get<GridSequence>(src);
    seq.cell_size *= f;
    seq.origin = seq.origin * f;
  }
}

}  // namespace

RunBundle scale_bundle(const RunBundle& b, double factor) {
  RunBundle out = b;
  for (Trajectory* t : {&out.front, &out.rear}) {
    for (auto& fr : t->frames) {
      for (auto& kp : fr.keypoints) {
        kp.x *= factor;
        kp.y *= factor;
      }
    }
  }
  scale_layout(out.front_layout, factor);
  scale_layout(out.rear_layout, factor);
  scale_ball(out.ball_front, factor);
  scale_ball(out.ball_rear, factor);
  return out;
}

}  // namespace camsa
