// Acceptance suite: one PASS/FAIL line per requirement, with wall time.
// Exit status is the number of failed requirements.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "camsa/balltrack.hpp"
#include "camsa/bundle.hpp"
#include "camsa/geometry.hpp"
#include "camsa/scoring.hpp"
#include "camsa/synth.hpp"
#include "oracles.hpp"

using namespace camsa;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::set<int> failed_criteria(const ScoreReport& r) {
  std::set<int> out;
  for (const auto& c : r.criteria) {
    if (!c.passed) out.insert(c.id);
  }
  return out;
}

std::string describe(const std::set<int>& s) {
  std::string out = "{";
  for (int v : s) out += (out.size() > 1 ? "," : "") + std::to_string(v);
  return out + "}";
}

Outcome time_table() {
  Outcome o;
  int boundaries = 0;
  for (int frames = 0; frames <= 1000; ++frames) {
    const int got = time_score_from_frames(frames, 30.0);
    if (got != oracle::band_points(frames)) o.fail(std::to_string(frames) + " frames -> " + std::to_string(got));
  }
  const std::vector<std::pair<int, int>> edges{{419, 14}, {420, 13}, {449, 13}, {450, 12}, {479, 12}, {480, 11},
                                               {509, 11}, {510, 10}, {539, 10}, {540, 9},  {569, 9},  {570, 8},
                                               {599, 8},  {600, 7},  {629, 7},  {630, 6},  {659, 6},  {660, 5},
                                               {719, 5},  {720, 4},  {779, 4},  {780, 3},  {839, 3},  {840, 2},
                                               {899, 2},  {900, 1},  {0, 14},   {100000, 1}};
  for (const auto& [frames, pts] : edges) {
    ++boundaries;
    if (time_score_from_frames(frames, 30.0) != pts) o.fail("boundary " + std::to_string(frames));
  }
  if (time_score_from_frames(240, 15.0) != time_score_from_frames(480, 30.0)) o.fail("15 fps disagrees");
  for (int f = 0; f < 500; ++f) {
    if (time_score_from_frames(f, 15.0) != time_score_from_frames(2 * f, 30.0)) {
      o.fail("15 fps disagrees at " + std::to_string(f));
    }
  }
  if (o.ok) o.detail = std::to_string(boundaries) + " boundary values, fps generalization";
  return o;
}

Outcome fault_oracle() {
  Outcome o;
  int runs = 0;
  auto check = [&](const std::set<int>& faults) {
    RunScript s;
    s.fault_set = faults;
    const auto run = generate_run(s);
    const auto report = score_run(run.bundle);
    ++runs;
    const auto failed = failed_criteria(report);
    const int want_skill = 14 - static_cast<int>(faults.size());
    if (failed != run.truth.expected_failed_criteria || failed != faults || report.skill_score != want_skill) {
      o.fail("faults " + describe(faults) + " failed " + describe(failed));
    }
    if (faults.empty() && report.total != 28) o.fail("clean total " + std::to_string(report.total));
  };
  check({});
  for (int a = 1; a <= 14; ++a) check({a});
  for (int a = 1; a <= 14; ++a) {
    for (int b = a + 1; b <= 14; ++b) check({a, b});
  }
  if (o.ok) o.detail = std::to_string(runs) + " runs (clean, 14 single, 91 pairs)";
  return o;
}

Outcome geometry_oracles() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> coord(-11.0, 11.0);
  const oracle::Raster raster;
  int pip = 0;
  while (pip < 1000) {
    const Polygon poly = oracle::random_star_polygon(rng);
    const Point p{coord(rng), coord(rng)};
    if (oracle::boundary_distance(p, poly) <= raster.margin()) continue;
    ++pip;
    const auto want = raster.filled(p, poly) ? Containment::Inside : Containment::Outside;
    if (point_in_polygon(p, poly) != want) o.fail("point_in_polygon case " + std::to_string(pip));
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int seg = 0;
  int skipped = 0;
  int hits = 0;
  for (int i = 0; i < 10000; ++i) {
    const Point a1{unit(rng), unit(rng)}, a2{unit(rng), unit(rng)};
    const Point b1{unit(rng), unit(rng)}, b2{unit(rng), unit(rng)};
    const double gap = oracle::sampled_segment_gap(a1, a2, b1, b2);
    if (gap > 1e-12 && gap < 1e-9) {
      ++skipped;
      continue;
    }
    ++seg;
    const bool want = gap <= 1e-12;
    hits += want;
    if (segments_intersect(a1, a2, b1, b2) != want) o.fail("segments_intersect pair " + std::to_string(i));
  }
  if (o.ok) {
    o.detail = std::to_string(pip) + " polygon cases, " + std::to_string(seg) + " segment pairs (" +
               std::to_string(hits) + " crossing, " + std::to_string(skipped) + " within touching tolerance)";
  }
  return o;
}

Outcome ball_tracker() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int interior = 0;
  int good = 0;
  for (int seq = 0; seq < 100; ++seq) {
    const int n = 20 + static_cast<int>(unit(rng) * 20);
    // Parabolic flight across the grid.
    const double x0 = 4 + unit(rng) * 6;
    const double x1 = 54 + unit(rng) * 6;
    const double y0 = 40 + unit(rng) * 20;
    const double y1 = 40 + unit(rng) * 20;
    const double h = 10 + unit(rng) * 30;
    std::vector<Point> path;
    for (int i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / (n - 1);
      path.push_back({x0 + (x1 - x0) * t, y0 + (y1 - y0) * t - 4 * h * t * (1 - t)});
    }
    GridSequence gs;
    gs.grids = generate_ball_grids(path, 64, 64, 1.5, static_cast<std::uint64_t>(seq));
    const auto track = extract_ball_track(gs);
    for (int i = 1; i + 1 < n; ++i) {
      ++interior;
      const auto p = track.at(i);
      if (p && distance(*p, path[static_cast<std::size_t>(i)]) <= 2.0) ++good;
    }
    std::vector<Point> still(static_cast<std::size_t>(n), path[static_cast<std::size_t>(n / 2)]);
    GridSequence st;
    st.grids = generate_ball_grids(still, 64, 64, 1.5, static_cast<std::uint64_t>(seq) + 1000);
    if (!extract_ball_track(st).samples.empty()) o.fail("static sequence " + std::to_string(seq) + " detected");
  }
  const double rate = static_cast<double>(good) / interior;
  if (rate < 0.95) o.fail("recovery " + std::to_string(rate));
  std::ostringstream ss;
  ss << good << "/" << interior << " interior frames within 2 cells";
  if (o.ok) o.detail = ss.str();
  return o;
}

Outcome cohort_sums() {
  Outcome o;
  const auto report = aggregate_cohort(oracle::referee_entries());
  std::ostringstream ss;
  for (const auto& g : report.groups) {
    const double want = oracle::reference_group_sums().at(g.label);
    if (std::abs(g.sum - want) > 0.01) o.fail(g.label + " sum " + std::to_string(g.sum));
    ss << (ss.tellp() > 0 ? "; " : "") << g.label << " " << std::round(g.sum * 100) / 100;
  }
  if (o.ok) o.detail = ss.str();
  return o;
}

Outcome categories() {
  Outcome o;
  // Hand-computed from the referee rows: movement, object control, dexterity.
  const std::map<std::string, std::array<double, 3>> want{
      {"Group 1", {5.20, 2.57, 3.50}}, {"Group 2", {4.47, 2.93, 4.00}}, {"Group 3", {5.80, 3.47, 5.60}}};
  const auto report = aggregate_cohort(oracle::referee_entries());
  for (const auto& g : report.groups) {
    const auto& w = want.at(g.label);
    if (std::abs(g.movement - w[0]) > 0.01 || std::abs(g.object_control - w[1]) > 0.01 ||
        std::abs(g.dexterity - w[2]) > 0.01) {
      o.fail(g.label + " categories differ");
    }
  }
  if (o.ok) o.detail = "3 groups x 3 categories";
  return o;
}

Outcome determinism() {
  Outcome o;
  int bundles = 0;
  for (const std::set<int>& faults : std::vector<std::set<int>>{{}, {4}, {6, 13}, {1, 11}}) {
    RunScript s;
    s.seed = 7;
    s.noise = 1.0;
    s.fault_set = faults;
    const auto run = generate_run(s);
    const auto r1 = write_report(score_run(run.bundle));
    const auto r2 = write_report(score_run(run.bundle));
    if (r1 != r2) o.fail("reports differ for " + describe(faults));
    const auto scaled = score_run(scale_bundle(run.bundle, 2.0));
    const auto base = score_run(run.bundle);
    if (failed_criteria(scaled) != failed_criteria(base) || scaled.time_score != base.time_score) {
      o.fail("x2 scale changes outcome for " + describe(faults));
    }
    ++bundles;
  }
  if (o.ok) o.detail = std::to_string(bundles) + " bundles, repeat and x2 scale";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::tuple<std::string, std::function<Outcome()>, double>> checks{
      {"time score table and boundaries", time_table, 1.0},
      {"fault-injection oracle", fault_oracle, 60.0},
      {"geometry oracles", geometry_oracles, 10.0},
      {"ball tracker recovery", ball_tracker, 10.0},
      {"cohort group sums", cohort_sums, 1.0},
      {"skill-category aggregation", categories, 1.0},
      {"determinism and scale invariance", determinism, 60.0},
  };
  int failures = 0;
  for (const auto& [name, fn, budget] : checks) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget) o.fail("took " + std::to_string(secs) + " s");
    failures += !o.ok;
    std::printf("%s  %-34s %7.3f s  %s\n", o.ok ? "PASS" : "FAIL", name.c_str(), secs, o.detail.c_str());
  }
  std::printf("%d/%zu passed\n", static_cast<int>(checks.size()) - failures, checks.size());
  return failures;
}
