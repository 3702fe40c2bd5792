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

// Experiment harness: closed-loop episodes, model-setting handling,
// parameter sweeps and result export.

#ifndef UNOPUSH_HARNESS_H_
#define UNOPUSH_HARNESS_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "unopush/executor.h"
#include "unopush/mpc.h"
#include "unopush/plant.h"
#include "unopush/random.h"
#include "unopush/trajectory.h"
#include "unopush/transition_model.h"

namespace unopush {

// Invalid or inconsistent experiment configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TrajectoryType { kCircle, kSquare, kLetter };

struct TrajectorySpec {
  TrajectoryType type = TrajectoryType::kCircle;
  double radius = 0.15;
  double side = 0.2;
  char letter = 'C';
  double scale = 0.2;
  int waypoints = 60;

  ReferenceTrajectory Build() const;
};

// Optional overrides on top of PlantParams::DefaultsFor(shape).
struct PlantOverrides {
  std::optional<double> limit_surface_c;
  std::optional<double> contact_friction_mu;
  std::optional<double> pusher_radius;
  std::optional<double> integration_step;
  std::optional<double> motion_epsilon;
  std::optional<double> push_distance_d;
  std::optional<double> virtual_circle_R;
  std::optional<Disturbance> disturbance;

  PlantParams Resolve(const PolygonShape& shape) const;
};

struct ExperimentConfig {
  std::string shape = "square_block";
  // JSON polygon file; replaces `shape` when non-empty.
  std::string shape_file;
  // Object the transferred models are learned on (settings 1 and 2).
  std::string transfer_shape = "cylinder_x";
  // 1: transferred, frozen. 2: transferred, online update.
  // 3: learned on target, frozen. 4: learned on target, online update.
  int setting = 2;
  int exploration_count = 10;  // N
  MpcConfig mpc;
  double delta = 0.01;
  double sigma = 0.5;
  double epsilon = 0.1;
  PlantOverrides plant;
  TrajectorySpec trajectory;
  std::vector<uint64_t> seeds{0, 1, 2, 3, 4};
  int max_pushes = 500;
  // Serialized transferred models for settings 1 and 2.
  std::string model_file;

  // Throws ConfigError.
  void Validate() const;
  bool transfers() const { return setting == 1 || setting == 2; }
  bool online_update() const { return setting == 2 || setting == 4; }
};

PolygonShape ResolveShape(const ExperimentConfig& config,
                          const std::string& name);
PolygonShape TargetShape(const ExperimentConfig& config);

enum class Termination { kReached, kBudget };
const char* TerminationName(Termination t);

struct StepRecord {
  int step = 0;  // 1-based push index
  Pose2 pose;    // pose after the push
  Control control;
  bool smoothed = false;
  bool fallback = false;
  bool miss = false;
  bool disturbed = false;
  bool inverse_fallback = false;
  int dataset_size = 0;

  bool operator==(const StepRecord&) const = default;
};

struct RunLog {
  std::string shape;
  int setting = 0;
  uint64_t seed = 0;
  Pose2 initial_pose;
  std::vector<StepRecord> steps;
  double mae_mm = 0.0;
  int pushes = 0;
  Termination termination = Termination::kBudget;
  // Diagnostic only; excluded from equality and from the CSV export.
  double mean_plan_ms = 0.0;

  std::vector<Pose2> ExecutedPoses() const;
  bool SameOutcome(const RunLog& other) const;
};

// Independent random streams derived from one seed.
enum class Stream : uint64_t { kLearn = 1, kMpc = 2, kPlant = 3, kTransfer = 4 };
Rng MakeStream(uint64_t seed, Stream stream);

// Runs the exploration pushes on `shape_name` (fresh plant at the identity
// pose, disturbance off) and returns the learned models.
TransitionModels LearnOnShape(const ExperimentConfig& config,
                              const std::string& shape_name, int n,
                              uint64_t seed);

// One closed-loop episode. Settings 1 and 2 use `transferred`; when it is
// null they load config.model_file, and a missing file is a ConfigError.
// The object starts on the first waypoint.
RunLog RunEpisode(const ExperimentConfig& config, uint64_t seed,
                  const TransitionModels* transferred = nullptr);

enum class SweepAxis { kN, kQxL, kSetting };

struct SweepSpec {
  SweepAxis axis = SweepAxis::kSetting;
  std::vector<int> n_values{5, 10, 20, 50};
  std::vector<int> q_values{0, 10, 20, 50, 200};
  std::vector<int> l_values{5, 10, 20};
  std::vector<int> settings{1, 2, 3, 4};
  std::vector<std::string> shapes{"square_block", "rectangle", "l_shape",
                                  "triangle"};
};

struct SweepCell {
  int n = 0;
  int q = 0;
  int l = 0;
  int setting = 0;
  std::vector<double> maes;  // one per (shape, seed), shapes outer
  int reached = 0;
  double mean_mae = 0.0;
  double std_mae = 0.0;  // population standard deviation
};

// Cell grid per axis: kN crosses n_values with settings, kQxL crosses
// q_values with l_values, kSetting walks settings. Each cell runs every
// shape with every seed of `base`. Transferred models for settings 1 and 2
// are learned on base.transfer_shape per (N, seed), written to
// `model_dir` and read back; base.model_file, when set, is used instead.
std::vector<SweepCell> RunSweep(const ExperimentConfig& base,
                                const SweepSpec& spec,
                                const std::string& model_dir);

std::string SweepToCsv(const std::vector<SweepCell>& cells);

// CSV with header step,x_m,y_m,theta_rad,alpha,beta,smoothed,miss,
// dataset_size. Row 0 is the initial pose with empty control fields; the
// final row is "summary,<mae_mm>,<pushes>,<termination>,,,,,".
std::string RunLogToCsv(const RunLog& log);
std::string RunLogSummaryJson(const RunLog& log);
std::string RunLogToJson(const RunLog& log);
RunLog RunLogFromJson(const std::string& text);

}  // namespace unopush

#endif  // UNOPUSH_HARNESS_H_
