#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "camsa/bundle.hpp"
#include "camsa/config.hpp"
#include "camsa/error.hpp"
#include "camsa/geometry.hpp"
#include "camsa/scoring.hpp"
#include "camsa/synth.hpp"

namespace py = pybind11;

namespace {

camsa::Polygon to_polygon(const std::vector<std::pair<double, double>>& pts) {
  camsa::Polygon poly;
  for (const auto& [x, y] : pts) poly.push_back({x, y});
  return poly;
}

std::string containment_name(camsa::Containment c) {
  switch (c) {
    case camsa::Containment::Inside:
      return "inside";
    case camsa::Containment::OnBoundary:
      return "boundary";
    case camsa::Containment::Outside:
      break;
  }
  return "outside";
}

camsa::ScoringConfig config_from(const std::string& json) {
  return json.empty() ? camsa::ScoringConfig{} : camsa::parse_config(json);
}

}  // namespace

PYBIND11_MODULE(_camsa, m) {
  m.doc() = "CAMSA scoring engine";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error;
  error.call_once_and_store_result([&]() { return py::exception<camsa::Error>(m, "CamsaError"); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const camsa::Error& e) {
      py::set_error(error.get_stored(), (std::string(camsa::to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def("time_score_from_seconds", &camsa::time_score_from_seconds, py::arg("seconds"));
  m.def("time_score_from_frames", &camsa::time_score_from_frames, py::arg("frames"), py::arg("fps"));

  m.def(
      "point_in_polygon",
      [](std::pair<double, double> p, const std::vector<std::pair<double, double>>& poly) {
        return containment_name(camsa::point_in_polygon({p.first, p.second}, to_polygon(poly)));
      },
      py::arg("point"), py::arg("polygon"));
  m.def(
      "segments_intersect",
      [](std::pair<double, double> a1, std::pair<double, double> a2, std::pair<double, double> b1,
         std::pair<double, double> b2) {
        return camsa::segments_intersect({a1.first, a1.second}, {a2.first, a2.second}, {b1.first, b1.second},
                                         {b2.first, b2.second});
      },
      py::arg("a1"), py::arg("a2"), py::arg("b1"), py::arg("b2"));

  m.def(
      "score_bundle",
      [](const std::filesystem::path& manifest, const std::string& config_json) {
        const auto bundle = camsa::load_bundle(manifest);
        py::gil_scoped_release release;
        return camsa::write_report(camsa::score_run(bundle, config_from(config_json)));
      },
      py::arg("manifest"), py::arg("config_json") = "", "Score a bundle manifest; returns the report as JSON text.");

  m.def(
      "synthesize",
      [](const std::string& script_json, const std::filesystem::path& out_dir) {
        const auto run = camsa::generate_run(camsa::parse_script(script_json));
        camsa::write_bundle(out_dir / "bundle.json", run.bundle);
        camsa::write_file(out_dir / "ground_truth.json", camsa::write_ground_truth(run.truth));
        return (out_dir / "bundle.json");
      },
      py::arg("script_json"), py::arg("out_dir"), "Write a synthetic bundle and its ground truth.");

  m.def(
      "aggregate",
      [](const std::vector<std::tuple<std::string, std::vector<double>, double>>& rows) {
        std::vector<camsa::CohortEntry> entries;
        for (const auto& [label, actions, time] : rows) {
          if (actions.size() != camsa::kActionCount) {
            throw camsa::Error(camsa::ErrorCode::InvalidArgument, "each row needs 7 action scores");
          }
          camsa::CohortEntry e;
          e.label = label;
          std::copy(actions.begin(), actions.end(), e.actions.begin());
          e.time_score = time;
          entries.push_back(std::move(e));
        }
        return camsa::write_cohort(camsa::aggregate_cohort(entries));
      },
      py::arg("rows"), "Rows of (label, [7 action scores], time score); returns cohort JSON text.");
}
