#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "camsa/bundle.hpp"
#include "camsa/config.hpp"
#include "camsa/segmenter.hpp"

namespace camsa {

inline constexpr int kCriterionCount = 14;

struct CriterionResult {
  int id = 0;
  bool passed = false;
  std::string evidence;
  friend bool operator==(const CriterionResult&, const CriterionResult&) = default;
};

// Action that owns a criterion: {1,2}->1, {3,4,5}->2, {6}->3, {7,8}->4,
// {9,10}->5, {11,12}->6, {13,14}->7.
ActionId action_of_criterion(int criterion);

struct ScoreReport {
  std::array<CriterionResult, kCriterionCount> criteria{};
  int skill_score = 0;
  std::optional<int> completion_frames;  // absent when the run has no kick
  double fps = 30.0;
  int time_score = 1;
  int total = 1;
  std::vector<std::string> errors;  // segmentation/scoring problems, in order
};

// Completion-time bands: <14.0 s -> 14 down to >=30.0 s -> 1. Throws
// NegativeTime for t < 0.
int time_score_from_seconds(double seconds);
int time_score_from_frames(int frames, double fps);

// Per-action rule evaluators. Trajectories are expected to be cleaned and
// phases to come from the segmenter; each throws PhaseMismatch when handed a
// phase for a different action. Actions 3 and 4 throw NoBallObservations when
// the ball is never seen in the phase, action 4 MissingRect without a target,
// and action 7 NoKickDetected. A slide without a turn fails criteria 3 and 4
// (evidence starts with "NoReversalFound") while criterion 5 is still judged.
std::array<CriterionResult, 2> score_action1(const ActionPhase& phase, const Trajectory& traj,
                                             const CourseLayout& layout, const ScoringConfig& cfg = {});
std::array<CriterionResult, 3> score_action2(const ActionPhase& phase, const Trajectory& traj,
                                             const CourseLayout& layout, const ScoringConfig& cfg = {});
std::array<CriterionResult, 1> score_action3(const ActionPhase& phase, const Trajectory& traj,
                                             const CourseLayout& layout, const BallTrack& ball,
                                             const ScoringConfig& cfg = {});
std::array<CriterionResult, 2> score_action4(const ActionPhase& phase, const Trajectory& traj,
                                             const CourseLayout& layout, const BallTrack& ball,
                                             const ScoringConfig& cfg = {});
std::array<CriterionResult, 2> score_action5(const ActionPhase& phase, const Trajectory& traj,
                                             const CourseLayout& layout, const ScoringConfig& cfg = {});
std::array<CriterionResult, 2> score_action6(const ActionPhase& phase, const Trajectory& traj,
                                             const CourseLayout& layout, const ScoringConfig& cfg = {});
std::array<CriterionResult, 2> score_action7(const ActionPhase& phase, const Trajectory& traj,
                                             const CourseLayout& layout, const BallTrack& ball,
                                             const ScoringConfig& cfg = {});

// clean -> segment -> per-action rules -> time score. A missing phase fails
// that action's criteria instead of aborting. `segmentation`, when given,
// receives the phases used.
ScoreReport score_run(const RunBundle& bundle, const ScoringConfig& cfg = {},
                      PartialSegmentation* segmentation = nullptr);

std::string write_report(const ScoreReport& report);
ScoreReport parse_report(std::string_view text);

// Points per action (criteria passed within each action).
std::array<double, kActionCount> action_scores(const ScoreReport& report);

// One child's (or one rater's) per-action scores and time score.
struct CohortEntry {
  std::string label;
  std::array<double, kActionCount> actions{};
  double time_score = 0.0;
};

struct GroupSummary {
  std::string label;
  std::size_t count = 0;
  std::array<double, kActionCount> action_means{};
  double time_mean = 0.0;
  double sum = 0.0;             // action means + time mean
  double movement = 0.0;        // actions 1, 2, 5, 6
  double object_control = 0.0;  // actions 3, 4, 7
  double dexterity = 0.0;       // time score
};

struct CohortReport {
  std::vector<GroupSummary> groups;  // sorted by label
};

// Means per label. Throws EmptyCohort for an empty input.
CohortReport aggregate_cohort(std::span<const CohortEntry> entries);
std::string write_cohort(const CohortReport& report);

}  // namespace camsa
