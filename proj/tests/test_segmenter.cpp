#include <cmath>
#include <cstdlib>

#include "gtest/gtest.h"

#include "camsa/error.hpp"
#include "camsa/segmenter.hpp"
#include "camsa/synth.hpp"

using namespace camsa;

namespace {

ErrorCode segment_error(const RunBundle& b, int* action = nullptr) {
  try {
    segment(b);
  } catch (const Error& e) {
    if (action) *action = e.action();
    return e.code();
  }
  ADD_FAILURE() << "segmentation succeeded";
  return ErrorCode::Io;
}

RunScript scaled_script(double total_seconds) {
  RunScript s;
  const double k = total_seconds / s.total_seconds();
  for (auto& d : s.action_durations) d *= k;
  return s;
}

}  // namespace

TEST(Segmenter, PhasesMatchGroundTruth) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    RunScript script;
    script.seed = seed;
    script.noise = 1.0;
    const auto run = generate_run(script);
    const auto seg = segment(run.bundle);
    for (int k = 0; k < kActionCount; ++k) {
      const auto& p = seg.phases[static_cast<std::size_t>(k)];
      EXPECT_EQ(p.action, k + 1);
      EXPECT_EQ(p.view, view_for_action(k + 1));
      EXPECT_LE(std::abs(p.start_frame - run.truth.phases[static_cast<std::size_t>(k)].first), 3)
          << "seed " << seed << " action " << k + 1;
      EXPECT_LE(std::abs(p.end_frame - run.truth.phases[static_cast<std::size_t>(k)].second), 3)
          << "seed " << seed << " action " << k + 1;
    }
    EXPECT_EQ(seg.run_start_frame, run.truth.run_start_frame);
    EXPECT_EQ(seg.run_end_frame, run.truth.kick_frame);
  }
}

TEST(Segmenter, CompletionFramesForScriptedTime) {
  const auto run = generate_run(scaled_script(15.5));
  const auto seg = segment(run.bundle);
  EXPECT_NEAR(completed_frames(seg), 465, 5);
  EXPECT_NEAR(run.truth.completion_seconds, 15.5, 1.0 / 30.0);
}

TEST(Segmenter, EmptyTrajectoryMissesFirstPhase) {
  auto b = generate_run(RunScript{}).bundle;
  b.front.frames.clear();
  b.rear.frames.clear();
  int action = 0;
  EXPECT_EQ(segment_error(b, &action), ErrorCode::MissingPhase);
  EXPECT_EQ(action, 1);
}

TEST(Segmenter, SkippedCorridorMissesPhase5) {
  const auto run = generate_run(RunScript{});
  auto b = run.bundle;
  const auto [s5, e5] = run.truth.phases[4];
  for (auto& f : b.front.frames) {
    if (f.frame_index < s5 - 6 || f.frame_index > e5 + 6) continue;
    for (auto& kp : f.keypoints) kp.y -= 250.0;
  }
  int action = 0;
  EXPECT_EQ(segment_error(b, &action), ErrorCode::MissingPhase);
  EXPECT_EQ(action, 5);

  const auto partial = segment_partial(b, extract_ball_track(b.ball_rear));
  EXPECT_FALSE(partial.phase(5).has_value());
  EXPECT_TRUE(partial.phase(6).has_value());
  EXPECT_TRUE(partial.phase(7).has_value());
}

TEST(Segmenter, ZoneEnteredEarlyIsOutOfOrder) {
  const auto run = generate_run(RunScript{});
  auto b = run.bundle;
  // Swap the zones of actions 1 and 2 so the child meets zone 2 first.
  std::swap(b.front_layout.zones[1], b.front_layout.zones[2]);
  const auto partial = segment_partial(b, extract_ball_track(b.ball_rear));
  bool out_of_order = false;
  for (const auto& issue : partial.issues) out_of_order |= issue.code == ErrorCode::OutOfOrder;
  EXPECT_TRUE(out_of_order);
}

TEST(Segmenter, NoKickWithoutBallLaunch) {
  auto b = generate_run(RunScript{}).bundle;
  b.ball_rear = BallTrack{};
  EXPECT_EQ(segment_error(b), ErrorCode::NoKickDetected);
}

TEST(Segmenter, KickContactIsLastRestingFrame) {
  BallTrack ball;
  for (int f = 0; f < 10; ++f) ball.samples[f] = {100.0, 50.0};
  for (int f = 10; f < 15; ++f) ball.samples[f] = {100.0 + 20.0 * (f - 9), 50.0};
  const Polygon zone{{0, 0}, {200, 0}, {200, 100}, {0, 100}};
  EXPECT_EQ(find_kick_contact(ball, &zone, 10.0, 0), std::optional<int>(9));
  EXPECT_FALSE(find_kick_contact(ball, &zone, 30.0, 0).has_value());
}

TEST(Segmenter, BallRadiusFallsBackToShank) {
  const auto run = generate_run(RunScript{});
  BallTrack t;
  EXPECT_NEAR(ball_radius(t, run.bundle.rear, ScoringConfig{}),
              0.3 * median_shank_length(run.bundle.rear), 1e-9);
  t.radius = 12.0;
  EXPECT_DOUBLE_EQ(ball_radius(t, run.bundle.rear, ScoringConfig{}), 12.0);
}
