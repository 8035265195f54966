#include <cmath>
#include <random>
#include <string>

#include "gtest/gtest.h"

#include "camsa/error.hpp"
#include "camsa/trajectory.hpp"

using namespace camsa;

namespace {

// Every keypoint moves on its own straight line; the clean value at frame i is
// known exactly.
Point truth(int kp, int i) { return {200.0 + 10.0 * kp + 3.0 * i, 300.0 + 5.0 * kp - 1.5 * i}; }

Trajectory straight_lines(int n, View view = View::Front) {
  Trajectory t;
  t.view = view;
  for (int i = 0; i < n; ++i) {
    PoseFrame f;
    f.frame_index = i;
    for (int k = 0; k < kKeypointCount; ++k) {
      const Point p = truth(k, i);
      f.keypoints[static_cast<std::size_t>(k)] = {p.x, p.y, 0.9};
    }
    t.frames.push_back(f);
  }
  return t;
}

ErrorCode code_of(const std::string& text) {
  try {
    parse_trajectory(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for " << text;
  return ErrorCode::Io;
}

std::string frame_json(int i, int keypoints) {
  std::string kp;
  for (int k = 0; k < keypoints; ++k) kp += (k ? "," : "") + std::string("[1,2,0.5]");
  return "{\"i\":" + std::to_string(i) + ",\"kp\":[" + kp + "]}";
}

}  // namespace

TEST(Trajectory, RoundTrip) {
  auto t = straight_lines(12, View::Rear);
  t.fps = 25.0;
  t.frames[3].keypoints[5].visibility.reset();
  const auto back = parse_trajectory(write_trajectory(t));
  EXPECT_EQ(back, t);
  EXPECT_EQ(write_trajectory(back), write_trajectory(t));
}

TEST(Trajectory, WriterKeepsSixSignificantDigits) {
  EXPECT_EQ(format_number(1234.56789), "1234.57");
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_DOUBLE_EQ(quantize(1.23456789), 1.23457);
}

TEST(Trajectory, ParseErrors) {
  EXPECT_EQ(code_of("not json"), ErrorCode::MalformedFile);
  EXPECT_EQ(code_of(R"({"view":"front","fps":30})"), ErrorCode::MalformedFile);
  EXPECT_EQ(code_of(R"({"view":"side","fps":30,"frames":[)" + frame_json(0, 33) + "]}"), ErrorCode::MalformedFile);
  EXPECT_EQ(code_of(R"({"view":"front","fps":0,"frames":[)" + frame_json(0, 33) + "]}"), ErrorCode::NonPositiveFps);
  EXPECT_EQ(code_of(R"({"view":"front","fps":30,"frames":[)" + frame_json(0, 32) + "]}"),
            ErrorCode::WrongKeypointCount);
  EXPECT_EQ(code_of(R"({"view":"front","fps":30,"frames":[)" + frame_json(4, 33) + "," + frame_json(4, 33) + "]}"),
            ErrorCode::NonMonotonicFrames);
}

TEST(Trajectory, FindAndBounds) {
  auto t = straight_lines(5);
  for (auto& f : t.frames) f.frame_index += 10;
  EXPECT_EQ(t.first_frame(), 10);
  EXPECT_EQ(t.last_frame(), 14);
  EXPECT_EQ(t.find(12), std::optional<std::size_t>(2));
  EXPECT_FALSE(t.find(3).has_value());
}

TEST(Trajectory, SingleSpikeIsRemoved) {
  const auto t = straight_lines(40);
  auto noisy = t;
  auto& kp = noisy.frames[20].keypoints[static_cast<std::size_t>(idx(Kp::LeftAnkle))];
  kp.x += 500.0;
  const auto cleaned = clean_trajectory(noisy);
  ASSERT_EQ(cleaned.frames.size(), t.frames.size());
  for (int i = 0; i < 40; ++i) {
    const Point p = cleaned.frames[static_cast<std::size_t>(i)].at(Kp::LeftAnkle);
    const Point q = truth(idx(Kp::LeftAnkle), i);
    EXPECT_LE(distance(p, q), 2.0) << "frame " << i;
  }
}

TEST(Trajectory, TwoConsecutiveSpikesAreRemoved) {
  const auto t = straight_lines(40);
  auto noisy = t;
  const auto k = static_cast<std::size_t>(idx(Kp::RightWrist));
  noisy.frames[15].keypoints[k].y -= 500.0;
  noisy.frames[16].keypoints[k].y -= 480.0;
  const auto cleaned = clean_trajectory(noisy);
  for (int i = 10; i < 22; ++i) {
    const Point p = cleaned.frames[static_cast<std::size_t>(i)].at(Kp::RightWrist);
    EXPECT_LE(distance(p, truth(idx(Kp::RightWrist), i)), 2.0) << "frame " << i;
  }
}

TEST(Trajectory, LowVisibilityIsInterpolated) {
  auto t = straight_lines(20);
  auto& kp = t.frames[8].keypoints[0];
  kp.x = 0.0;
  kp.y = 0.0;
  kp.visibility = 0.05;
  const auto cleaned = clean_trajectory(t);
  EXPECT_LE(distance(cleaned.frames[8].at(Kp::Nose), truth(0, 8)), 2.0);
}

TEST(Trajectory, CleaningIsIdempotent) {
  auto t = straight_lines(60);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> jitter(0.0, 4.0);
  for (auto& f : t.frames) {
    for (auto& kp : f.keypoints) {
      kp.x += jitter(rng);
      kp.y += jitter(rng);
    }
  }
  t.frames[30].keypoints[27].x += 600.0;
  const auto once = clean_trajectory(t);
  const auto twice = clean_trajectory(once);
  for (std::size_t i = 0; i < once.frames.size(); ++i) {
    for (std::size_t k = 0; k < kKeypointCount; ++k) {
      EXPECT_NEAR(twice.frames[i].keypoints[k].x, once.frames[i].keypoints[k].x, 1e-9);
      EXPECT_NEAR(twice.frames[i].keypoints[k].y, once.frames[i].keypoints[k].y, 1e-9);
    }
  }
  EXPECT_EQ(once.view, t.view);
  EXPECT_EQ(once.fps, t.fps);
}

TEST(Trajectory, MedianShankLength) {
  auto t = straight_lines(3);
  for (auto& f : t.frames) {
    f.keypoints[static_cast<std::size_t>(idx(Kp::LeftKnee))] = {100, 100, 1.0};
    f.keypoints[static_cast<std::size_t>(idx(Kp::LeftAnkle))] = {100, 160, 1.0};
    f.keypoints[static_cast<std::size_t>(idx(Kp::RightKnee))] = {200, 100, 1.0};
    f.keypoints[static_cast<std::size_t>(idx(Kp::RightAnkle))] = {200, 160, 1.0};
  }
  EXPECT_DOUBLE_EQ(median_shank_length(t), 60.0);
}

TEST(Trajectory, ValidateRejectsDecreasingFrames) {
  auto t = straight_lines(3);
  t.frames[2].frame_index = 1;
  EXPECT_THROW(validate(t), Error);
}
