// camsa: score, validate, aggregate and synthesize CAMSA runs.
//
// Exit status: 0 success, 1 domain error (bad input content, failed
// validation), 2 I/O failure.

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "camsa/bundle.hpp"
#include "camsa/config.hpp"
#include "camsa/course.hpp"
#include "camsa/error.hpp"
#include "camsa/scoring.hpp"
#include "camsa/synth.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kIoError = 2;

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    camsa::write_file(out_path, text);
  }
}

camsa::ScoringConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  return camsa::parse_config(camsa::read_file(path));
}

int cmd_validate(const std::vector<std::string>& layouts) {
  bool ok = true;
  for (const auto& path : layouts) {
    const auto layout = camsa::parse_layout(camsa::read_file(path));
    const auto report = camsa::validate_layout(layout);
    std::cout << path << " (" << camsa::to_string(layout.view) << "): ";
    if (report.ok()) {
      std::cout << "ok\n";
      continue;
    }
    ok = false;
    std::cout << report.violations.size() << " violation(s)\n";
    for (const auto& v : report.violations) std::cout << "  - " << v << "\n";
  }
  return ok ? kOk : kDomainError;
}

int cmd_score(const std::vector<std::string>& bundles, const std::string& config, const std::string& out,
              bool dump_phases) {
  const auto cfg = load_config(config);
  std::vector<json> docs;
  for (const auto& path : bundles) {
    const auto bundle = camsa::load_bundle(path);
    camsa::PartialSegmentation seg;
    const auto report = camsa::score_run(bundle, cfg, &seg);
    json doc = json::parse(camsa::write_report(report));
    if (dump_phases) doc["phases"] = json::parse(camsa::write_phases(seg));
    docs.push_back(std::move(doc));
  }
  const auto& result = docs.size() == 1 ? docs.front() : json(docs);
  emit(out, result.dump(2) + "\n");
  return kOk;
}

std::vector<std::string> split_labels(const std::string& csv) {
  std::vector<std::string> labels;
  if (csv.empty()) return labels;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) labels.push_back(item);
  return labels;
}

// A ScoreReport, or a bare {"actions": [7 numbers], "time_score": t} row.
camsa::CohortEntry read_row(const json& doc) {
  camsa::CohortEntry e;
  if (!doc.is_object()) throw camsa::Error(camsa::ErrorCode::MalformedFile, "cohort rows must be objects");
  if (doc.contains("criteria")) {
    const auto report = camsa::parse_report(doc.dump());
    e.actions = camsa::action_scores(report);
    e.time_score = report.time_score;
  } else {
    try {
      const auto& a = doc.at("actions");
      if (!a.is_array() || a.size() != camsa::kActionCount) {
        throw camsa::Error(camsa::ErrorCode::MalformedFile, "row needs 7 action scores");
      }
      for (std::size_t i = 0; i < camsa::kActionCount; ++i) e.actions[i] = a[i].get<double>();
      e.time_score = doc.at("time_score").get<double>();
    } catch (const json::exception& ex) {
      throw camsa::Error(camsa::ErrorCode::MalformedFile, std::string("cohort row: ") + ex.what());
    }
  }
  if (doc.contains("label") && doc["label"].is_string()) e.label = doc["label"].get<std::string>();
  return e;
}

int cmd_aggregate(const std::vector<std::string>& paths, const std::string& labels_csv, const std::string& out) {
  const auto labels = split_labels(labels_csv);
  if (!labels.empty() && labels.size() != paths.size()) {
    throw camsa::Error(camsa::ErrorCode::InvalidArgument, "--labels needs one label per report");
  }
  std::vector<camsa::CohortEntry> entries;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    json doc;
    try {
      doc = json::parse(camsa::read_file(paths[i]));
    } catch (const json::parse_error& e) {
      throw camsa::Error(camsa::ErrorCode::MalformedFile, paths[i] + ": " + e.what());
    }
    std::vector<json> rows = doc.is_array() ? doc.get<std::vector<json>>() : std::vector<json>{doc};
    for (const auto& row : rows) {
      auto e = read_row(row);
      if (!labels.empty()) e.label = labels[i];
      if (e.label.empty()) e.label = "all";
      entries.push_back(std::move(e));
    }
  }
  emit(out, camsa::write_cohort(camsa::aggregate_cohort(entries)));
  return kOk;
}

int cmd_synth(const std::string& script_path, const std::string& out) {
  const auto script = camsa::parse_script(camsa::read_file(script_path));
  const auto run = camsa::generate_run(script);
  const fs::path dir = out.empty() ? fs::path("synth_run") : fs::path(out);
  camsa::write_bundle(dir / "bundle.json", run.bundle);
  camsa::write_file(dir / "ground_truth.json", camsa::write_ground_truth(run.truth));
  camsa::write_file(dir / "script.json", camsa::write_script(script));
  std::cout << "wrote " << (dir / "bundle.json").string() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CAMSA motor-skill assessment scoring"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  bool dump_phases = false;
  std::string labels;
  std::vector<std::string> inputs;
  std::string script;

  auto* validate = app.add_subcommand("validate", "Check course layout files");
  validate->add_option("layouts", inputs, "Layout JSON files")->required();

  auto* score = app.add_subcommand("score", "Score run bundles");
  score->add_option("bundles", inputs, "Bundle manifest files")->required();
  score->add_option("--config", config, "JSON threshold overrides");
  score->add_option("--out", out, "Output path (default stdout)");
  score->add_flag("--dump-phases", dump_phases, "Include the segmented phases");

  auto* aggregate = app.add_subcommand("aggregate", "Average reports per group");
  aggregate->add_option("reports", inputs, "Score reports or score rows");
  aggregate->add_option("--labels", labels, "Comma-separated group label per report");
  aggregate->add_option("--out", out, "Output path (default stdout)");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic run from a script");
  synth->add_option("script", script, "RunScript JSON")->required();
  synth->add_option("--out", out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kDomainError;
  }

  try {
    if (*validate) return cmd_validate(inputs);
    if (*score) return cmd_score(inputs, config, out, dump_phases);
    if (*aggregate) return cmd_aggregate(inputs, labels, out);
    if (*synth) return cmd_synth(script, out);
  } catch (const camsa::Error& e) {
    std::cerr << "error: " << camsa::to_string(e.code()) << ": " << e.what() << "\n";
    return e.code() == camsa::ErrorCode::Io ? kIoError : kDomainError;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kDomainError;
}
