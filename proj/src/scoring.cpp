#include "camsa/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include <nlohmann/json.hpp>

#include "camsa/error.hpp"

namespace camsa {

using nlohmann::json;
using nlohmann::ordered_json;

ActionId action_of_criterion(int criterion) {
  static constexpr std::array<ActionId, kCriterionCount> owner{1, 1, 2, 2, 2, 3, 4, 4, 5, 5, 6, 6, 7, 7};
  if (criterion < 1 || criterion > kCriterionCount) {
    throw Error(ErrorCode::InvalidArgument, "criterion id out of range: " + std::to_string(criterion));
  }
  return owner[static_cast<std::size_t>(criterion - 1)];
}

int time_score_from_seconds(double seconds) {
  if (std::isnan(seconds) || seconds < 0.0) throw Error(ErrorCode::NegativeTime, "completion time is negative");
  if (seconds < 14.0) return 14;
  if (seconds < 22.0) return 13 - static_cast<int>(std::floor(seconds - 14.0));
  if (seconds < 30.0) return 5 - static_cast<int>(std::floor((seconds - 22.0) / 2.0));
  return 1;
}

int time_score_from_frames(int frames, double fps) {
  if (!(fps > 0.0)) throw Error(ErrorCode::NonPositiveFps, "fps must be positive");
  if (frames < 0) throw Error(ErrorCode::NegativeTime, "completion frame count is negative");
  // Compare in whole frames so band edges are exact at any frame rate.
  static constexpr std::array<double, 13> edges{14, 15, 16, 17, 18, 19, 20, 21, 22, 24, 26, 28, 30};
  int score = 14;
  for (double edge : edges) {
    if (static_cast<double>(frames) >= edge * fps) --score;
  }
  return score;
}

namespace {

constexpr std::array<int, kActionCount> kFirstCriterion{1, 3, 6, 7, 9, 11, 13};
constexpr std::array<int, kActionCount> kCriterionCountPerAction{2, 3, 1, 2, 2, 2, 2};

template <std::size_t N>
void store(ScoreReport& r, const std::array<CriterionResult, N>& results) {
  for (const auto& c : results) r.criteria[static_cast<std::size_t>(c.id - 1)] = c;
}

void fail_action(ScoreReport& r, ActionId a, const std::string& evidence) {
  const int first = kFirstCriterion[static_cast<std::size_t>(a - 1)];
  for (int k = 0; k < kCriterionCountPerAction[static_cast<std::size_t>(a - 1)]; ++k) {
    r.criteria[static_cast<std::size_t>(first + k - 1)] = {first + k, false, evidence};
  }
}

std::string describe(ErrorCode code, const std::string& message) {
  return std::string(to_string(code)) + ": " + message;
}

}  // namespace

ScoreReport score_run(const RunBundle& bundle, const ScoringConfig& cfg, PartialSegmentation* segmentation) {
  validate(bundle);
  RunBundle b = bundle;
  b.front = clean_trajectory(bundle.front, cfg.cleaning);
  b.rear = clean_trajectory(bundle.rear, cfg.cleaning);
  const BallTrack ball_front = extract_ball_track(b.ball_front, cfg.diff_threshold, cfg.min_area);
  const BallTrack ball_rear = extract_ball_track(b.ball_rear, cfg.diff_threshold, cfg.min_area);
  const PartialSegmentation seg = segment_partial(b, ball_rear, cfg);

  ScoreReport r;
  r.fps = b.front.fps;
  for (int c = 1; c <= kCriterionCount; ++c) r.criteria[static_cast<std::size_t>(c - 1)] = {c, false, ""};
  for (const auto& issue : seg.issues) r.errors.push_back(describe(issue.code, issue.message));

  using Scorer = std::function<void(const ActionPhase&)>;
  const std::array<Scorer, kActionCount> scorers{
      [&](const ActionPhase& p) { store(r, score_action1(p, b.front, b.front_layout, cfg)); },
      [&](const ActionPhase& p) { store(r, score_action2(p, b.front, b.front_layout, cfg)); },
      [&](const ActionPhase& p) { store(r, score_action3(p, b.front, b.front_layout, ball_front, cfg)); },
      [&](const ActionPhase& p) { store(r, score_action4(p, b.rear, b.rear_layout, ball_rear, cfg)); },
      [&](const ActionPhase& p) { store(r, score_action5(p, b.front, b.front_layout, cfg)); },
      [&](const ActionPhase& p) { store(r, score_action6(p, b.front, b.front_layout, cfg)); },
      [&](const ActionPhase& p) { store(r, score_action7(p, b.rear, b.rear_layout, ball_rear, cfg)); },
  };
  for (ActionId a = 1; a <= kActionCount; ++a) {
    const auto& phase = seg.phase(a);
    if (!phase) {
      fail_action(r, a, "phase for action " + std::to_string(a) + " not found");
      continue;
    }
    try {
      scorers[static_cast<std::size_t>(a - 1)](*phase);
    } catch (const Error& e) {
      fail_action(r, a, describe(e.code(), e.what()));
      r.errors.push_back("action " + std::to_string(a) + ": " + describe(e.code(), e.what()));
    }
  }

  r.skill_score = static_cast<int>(std::count_if(r.criteria.begin(), r.criteria.end(),
                                                 [](const CriterionResult& c) { return c.passed; }));
  if (seg.run_start_frame && seg.run_end_frame && *seg.run_end_frame >= *seg.run_start_frame) {
    r.completion_frames = *seg.run_end_frame - *seg.run_start_frame;
    r.time_score = time_score_from_frames(*r.completion_frames, r.fps);
  } else {
    r.time_score = 1;
  }
  r.total = r.skill_score + r.time_score;
  if (segmentation) *segmentation = seg;
  return r;
}

std::string write_report(const ScoreReport& r) {
  ordered_json doc;
  ordered_json criteria = ordered_json::array();
  for (const auto& c : r.criteria) {
    criteria.push_back({{"id", c.id}, {"passed", c.passed}, {"evidence", c.evidence}});
  }
  doc["criteria"] = std::move(criteria);
  doc["skill_score"] = r.skill_score;
  doc["completion_frames"] = r.completion_frames ? ordered_json(*r.completion_frames) : ordered_json(nullptr);
  doc["fps"] = r.fps;
  doc["time_score"] = r.time_score;
  doc["total"] = r.total;
  doc["errors"] = r.errors;
  return doc.dump(2) + "\n";
}

ScoreReport parse_report(std::string_view text) {
  ScoreReport r;
  try {
    const json doc = json::parse(text);
    const auto& criteria = doc.at("criteria");
    if (!criteria.is_array() || criteria.size() != kCriterionCount) {
      throw Error(ErrorCode::MalformedFile, "report needs 14 criteria");
    }
    for (const auto& c : criteria) {
      const int id = c.at("id").get<int>();
      if (id < 1 || id > kCriterionCount) throw Error(ErrorCode::MalformedFile, "criterion id out of range");
      r.criteria[static_cast<std::size_t>(id - 1)] = {id, c.at("passed").get<bool>(),
                                                      c.value("evidence", std::string{})};
    }
    r.skill_score = doc.at("skill_score").get<int>();
    if (doc.contains("completion_frames") && !doc["completion_frames"].is_null()) {
      r.completion_frames = doc["completion_frames"].get<int>();
    }
    r.fps = doc.value("fps", 30.0);
    r.time_score = doc.at("time_score").get<int>();
    r.total = doc.value("total", r.skill_score + r.time_score);
    r.errors = doc.value("errors", std::vector<std::string>{});
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedFile, std::string("score report: ") + e.what());
  }
  return r;
}

std::array<double, kActionCount> action_scores(const ScoreReport& report) {
  std::array<double, kActionCount> out{};
  for (const auto& c : report.criteria) {
    if (c.passed) out[static_cast<std::size_t>(action_of_criterion(c.id) - 1)] += 1.0;
  }
  return out;
}

namespace {

// Order-independent mean: values are summed in sorted order.
double stable_mean(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

CohortReport aggregate_cohort(std::span<const CohortEntry> entries) {
  if (entries.empty()) throw Error(ErrorCode::EmptyCohort, "no entries to aggregate");
  std::map<std::string, std::vector<const CohortEntry*>> groups;
  for (const auto& e : entries) groups[e.label].push_back(&e);

  CohortReport out;
  for (const auto& [label, members] : groups) {
    GroupSummary g;
    g.label = label;
    g.count = members.size();
    for (std::size_t a = 0; a < kActionCount; ++a) {
      std::vector<double> col;
      for (const auto* m : members) col.push_back(m->actions[a]);
      g.action_means[a] = stable_mean(std::move(col));
    }
    std::vector<double> times;
    for (const auto* m : members) times.push_back(m->time_score);
    g.time_mean = stable_mean(std::move(times));
    const auto& am = g.action_means;
    g.movement = am[0] + am[1] + am[4] + am[5];
    g.object_control = am[2] + am[3] + am[6];
    g.dexterity = g.time_mean;
    g.sum = g.movement + g.object_control + g.dexterity;
    out.groups.push_back(std::move(g));
  }
  return out;
}

std::string write_cohort(const CohortReport& report) {
  ordered_json groups = ordered_json::array();
  for (const auto& g : report.groups) {
    groups.push_back({{"label", g.label},
                      {"count", g.count},
                      {"actions", g.action_means},
                      {"time", g.time_mean},
                      {"sum", g.sum},
                      {"categories",
                       {{"movement", g.movement}, {"object_control", g.object_control}, {"dexterity", g.dexterity}}}});
  }
  ordered_json doc;
  doc["groups"] = std::move(groups);
  return doc.dump(2) + "\n";
}

}  // namespace camsa
