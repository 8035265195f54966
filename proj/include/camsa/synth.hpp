#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "camsa/balltrack.hpp"
#include "camsa/bundle.hpp"

namespace camsa {

// Fault k breaks criterion k and nothing else:
//  F1 heel outside hoop 2          F8  push throw without wind-up
//  F2 extra jump in hoop 3         F9  no hops in the step-hop run
//  F3 legs cross sliding out       F10 arms pinned while step-hopping
//  F4 legs cross sliding back      F11 both feet down in hoop 4
//  F5 cones never touched          F12 second hop in hoop 3
//  F6 ball slips through the hands F13 ball kicked wide of the gate
//  F7 throw misses the target      F14 toe-poke without leg swing
struct RunScript {
  std::uint64_t seed = 1;
  std::array<double, kActionCount> action_durations{1.9, 2.1, 1.3, 1.3, 1.9, 3.9, 1.1};  // seconds
  std::set<int> fault_set;
  double noise = 0.5;  // keypoint jitter sigma, pixels
  double fps = 30.0;

  double total_seconds() const;
};

struct GroundTruth {
  std::set<int> expected_failed_criteria;
  // Zone dwell per action in the owning view's frame numbering.
  std::array<std::pair<int, int>, kActionCount> phases{};
  double completion_seconds = 0.0;
  int run_start_frame = 0;  // front frames
  int kick_frame = 0;       // front frames
};

struct SyntheticRun {
  RunBundle bundle;
  GroundTruth truth;
};

// Throws InvalidScript for non-positive durations or fps, fault ids outside
// 1..14, or a duration too short to fit its action.
void validate(const RunScript& script);

SyntheticRun generate_run(const RunScript& script);

RunScript parse_script(std::string_view text);
std::string write_script(const RunScript& script);
std::string write_ground_truth(const GroundTruth& truth);
GroundTruth parse_ground_truth(std::string_view text);

// One grid per path point: background 20, blob peaking at 200 around the
// point, uniform noise in [0, 5]. Throws PathOutOfBounds for points outside
// the grid.
std::vector<FrameGrid> generate_ball_grids(std::span<const Point> path, int width = 64, int height = 64,
                                           double blob_radius = 1.5, std::uint64_t seed = 0);

}  // namespace camsa
