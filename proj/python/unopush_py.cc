// Copyright 2026 The UNO Push Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings for the core library.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "unopush/config_io.h"
#include "unopush/executor.h"
#include "unopush/harness.h"
#include "unopush/mpc.h"
#include "unopush/plant.h"
#include "unopush/se2.h"
#include "unopush/trajectory.h"
#include "unopush/transition_model.h"

namespace py = pybind11;

namespace unopush {
namespace {

std::string PoseRepr(const Pose2& p) {
  std::ostringstream out;
  out << "Pose2(" << p.x() << ", " << p.y() << ", " << p.theta() << ")";
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_unopush, m) {
  m.doc() = "Learned-model planar push manipulation";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<Pose2>(m, "Pose2")
      .def(py::init<>())
      .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"),
           py::arg("theta"))
      .def_property_readonly("x", &Pose2::x)
      .def_property_readonly("y", &Pose2::y)
      .def_property_readonly("theta", &Pose2::theta)
      .def("compose", &Pose2::Compose)
      .def("inverse", &Pose2::Inverse)
      .def("__mul__", [](const Pose2& a, const Pose2& b) { return a * b; })
      .def("__eq__", [](const Pose2& a, const Pose2& b) { return a == b; })
      .def("__repr__", &PoseRepr);

  m.def("wrap_angle", &WrapAngle);
  m.def("relative_motion", &RelativeMotion);
  m.def(
      "distance",
      [](const Pose2& a, const Pose2& b, double w_pos, double w_rot) {
        return Distance(a, b, DistanceWeights{w_pos, w_rot});
      },
      py::arg("a"), py::arg("b"), py::arg("w_pos") = 1.0,
      py::arg("w_rot") = 0.05);

  py::class_<Control>(m, "Control")
      .def(py::init<double, double>(), py::arg("alpha"), py::arg("beta"))
      .def_property_readonly("alpha", &Control::alpha)
      .def_property_readonly("beta", &Control::beta)
      .def("__eq__", [](const Control& a, const Control& b) { return a == b; })
      .def("__repr__", [](const Control& u) {
        std::ostringstream out;
        out << "Control(" << u.alpha() << ", " << u.beta() << ")";
        return out.str();
      });
  m.def("control_distance", &ControlDistance);

  m.def("builtin_shapes", [] {
    std::vector<std::string> names;
    for (const auto& [name, shape] : BuiltinShapes()) names.push_back(name);
    return names;
  });

  py::class_<TransitionModels>(m, "TransitionModels")
      .def("predict_forward", &TransitionModels::PredictForward)
      .def("predict_inverse",
           [](const TransitionModels& tm, const Pose2& g) {
             return tm.PredictInverse(g);
           })
      .def_property_readonly("size",
                             [](const TransitionModels& tm) {
                               return tm.dataset().size();
                             })
      .def("to_json", &ModelsToJson)
      .def_static("from_json", &ModelsFromJson)
      .def("save", &SaveModels)
      .def_static("load", &LoadModels);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("shape", &ExperimentConfig::shape)
      .def_readwrite("transfer_shape", &ExperimentConfig::transfer_shape)
      .def_readwrite("setting", &ExperimentConfig::setting)
      .def_readwrite("exploration_count", &ExperimentConfig::exploration_count)
      .def_readwrite("delta", &ExperimentConfig::delta)
      .def_readwrite("sigma", &ExperimentConfig::sigma)
      .def_readwrite("max_pushes", &ExperimentConfig::max_pushes)
      .def_readwrite("seeds", &ExperimentConfig::seeds)
      .def_readwrite("model_file", &ExperimentConfig::model_file)
      .def_property(
          "horizon", [](const ExperimentConfig& c) { return c.mpc.horizon; },
          [](ExperimentConfig& c, int v) { c.mpc.horizon = v; })
      .def_property(
          "rollouts", [](const ExperimentConfig& c) { return c.mpc.rollouts; },
          [](ExperimentConfig& c, int v) { c.mpc.rollouts = v; })
      .def("validate", &ExperimentConfig::Validate);

  m.def(
      "parse_config",
      [](const std::string& text) { return ParseConfig(text).experiment; },
      py::arg("text"));
  m.def(
      "load_config",
      [](const std::string& path) { return LoadConfigFile(path).experiment; },
      py::arg("path"));

  py::class_<StepRecord>(m, "StepRecord")
      .def_readonly("step", &StepRecord::step)
      .def_readonly("pose", &StepRecord::pose)
      .def_readonly("control", &StepRecord::control)
      .def_readonly("smoothed", &StepRecord::smoothed)
      .def_readonly("miss", &StepRecord::miss)
      .def_readonly("dataset_size", &StepRecord::dataset_size);

  py::class_<RunLog>(m, "RunLog")
      .def_readonly("shape", &RunLog::shape)
      .def_readonly("setting", &RunLog::setting)
      .def_readonly("seed", &RunLog::seed)
      .def_readonly("initial_pose", &RunLog::initial_pose)
      .def_readonly("steps", &RunLog::steps)
      .def_readonly("mae_mm", &RunLog::mae_mm)
      .def_readonly("pushes", &RunLog::pushes)
      .def_property_readonly("termination",
                             [](const RunLog& l) {
                               return std::string(TerminationName(l.termination));
                             })
      .def("to_csv", &RunLogToCsv)
      .def("to_json", &RunLogToJson)
      .def("summary_json", &RunLogSummaryJson);

  m.def("learn_on_shape", &LearnOnShape, py::arg("config"), py::arg("shape"),
        py::arg("n"), py::arg("seed"));
  m.def(
      "run_episode",
      [](const ExperimentConfig& c, uint64_t seed,
         const TransitionModels* models) {
        py::gil_scoped_release release;
        return RunEpisode(c, seed, models);
      },
      py::arg("config"), py::arg("seed"), py::arg("models") = nullptr);

  m.def(
      "circle_waypoints",
      [](double radius, int m) { return GenCircle(radius, m).waypoints(); },
      py::arg("radius") = 0.15, py::arg("m") = 60);
  m.def(
      "mae_mm",
      [](const std::vector<Pose2>& poses, const std::vector<Pose2>& waypoints) {
        return ComputeMaeMm(poses, ReferenceTrajectory(waypoints));
      },
      py::arg("poses"), py::arg("waypoints"));
}

}  // namespace unopush
