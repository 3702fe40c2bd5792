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

#include "unopush/harness.h"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>

#include "json.hpp"

namespace unopush {
namespace {

// Forwards to a model and counts degenerate inverse predictions.
class FallbackCounter : public MotionModel {
 public:
  explicit FallbackCounter(const MotionModel& inner) : inner_(inner) {}

  Pose2 PredictForward(const Control& u) const override {
    return inner_.PredictForward(u);
  }
  Control PredictInverse(const Pose2& motion,
                         bool* used_fallback) const override {
    bool fb = false;
    const Control u = inner_.PredictInverse(motion, &fb);
    if (fb) count_.fetch_add(1, std::memory_order_relaxed);
    if (used_fallback) *used_fallback = fb;
    return u;
  }
  int count() const { return count_.load(); }

 private:
  const MotionModel& inner_;
  mutable std::atomic<int> count_{0};
};

std::string Fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

ModelConfig ModelConfigFor(const ExperimentConfig& config,
                           const PlantParams& params) {
  ModelConfig mc = ModelConfig::ForPushDistance(params.push_distance_d);
  mc.epsilon = config.epsilon;
  return mc;
}

}  // namespace

ReferenceTrajectory TrajectorySpec::Build() const {
  switch (type) {
    case TrajectoryType::kCircle:
      return GenCircle(radius, waypoints);
    case TrajectoryType::kSquare:
      return GenSquare(side, waypoints);
    case TrajectoryType::kLetter:
      return GenLetter(letter, scale, waypoints);
  }
  throw ConfigError("unknown trajectory type");
}

PlantParams PlantOverrides::Resolve(const PolygonShape& shape) const {
  PlantParams p = PlantParams::DefaultsFor(shape);
  if (limit_surface_c) p.limit_surface_c = *limit_surface_c;
  if (contact_friction_mu) p.contact_friction_mu = *contact_friction_mu;
  if (pusher_radius) p.pusher_radius = *pusher_radius;
  if (integration_step) p.integration_step = *integration_step;
  if (motion_epsilon) p.motion_epsilon = *motion_epsilon;
  if (push_distance_d) p.push_distance_d = *push_distance_d;
  if (virtual_circle_R) p.virtual_circle_R = *virtual_circle_R;
  p.disturbance = disturbance;
  try {
    p.Validate(shape);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return p;
}

void ExperimentConfig::Validate() const {
  if (setting < 1 || setting > 4) throw ConfigError("setting must be 1..4");
  if (exploration_count < 1) throw ConfigError("N must be >= 1");
  if (max_pushes < 1) throw ConfigError("max_pushes must be >= 1");
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (!(delta > 0.0)) throw ConfigError("delta must be > 0");
  if (!(sigma >= 0.0)) throw ConfigError("sigma must be >= 0");
  if (!(epsilon >= 0.0)) throw ConfigError("epsilon must be >= 0");
  if (trajectory.waypoints < 1) throw ConfigError("waypoint count must be >= 1");
  if (shape_file.empty() && !BuiltinShapes().contains(shape)) {
    throw ConfigError("unknown shape: " + shape);
  }
  if (transfers() && model_file.empty() &&
      !BuiltinShapes().contains(transfer_shape)) {
    throw ConfigError("unknown transfer shape: " + transfer_shape);
  }
  try {
    mpc.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

PolygonShape ResolveShape(const ExperimentConfig& config,
                          const std::string& name) {
  try {
    if (name == config.shape && !config.shape_file.empty()) {
      return LoadShapeFile(config.shape_file);
    }
    return BuiltinShape(name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

PolygonShape TargetShape(const ExperimentConfig& config) {
  return ResolveShape(config, config.shape);
}

const char* TerminationName(Termination t) {
  return t == Termination::kReached ? "reached" : "budget";
}

std::vector<Pose2> RunLog::ExecutedPoses() const {
  std::vector<Pose2> poses;
  poses.reserve(steps.size() + 1);
  poses.push_back(initial_pose);
  for (const auto& s : steps) poses.push_back(s.pose);
  return poses;
}

bool RunLog::SameOutcome(const RunLog& o) const {
  return shape == o.shape && setting == o.setting && seed == o.seed &&
         initial_pose == o.initial_pose && steps == o.steps &&
         mae_mm == o.mae_mm && pushes == o.pushes &&
         termination == o.termination;
}

Rng MakeStream(uint64_t seed, Stream stream) {
  return Rng(Rng::Mix(Rng::Mix(seed) + static_cast<uint64_t>(stream)));
}

TransitionModels LearnOnShape(const ExperimentConfig& config,
                              const std::string& shape_name, int n,
                              uint64_t seed) {
  const PolygonShape shape = ResolveShape(config, shape_name);
  // Exploration is never disturbed; kicks belong to the tracking episode.
  PlantParams params = config.plant.Resolve(shape);
  params.disturbance.reset();
  Plant plant(shape, params, {});
  Rng rng = MakeStream(seed, Stream::kTransfer);
  return LearnModels(plant, Pose2::Identity(), n, rng,
                     ModelConfigFor(config, params));
}

RunLog RunEpisode(const ExperimentConfig& config, uint64_t seed,
                  const TransitionModels* transferred) {
  config.Validate();
  const PolygonShape shape = TargetShape(config);
  const PlantParams params = config.plant.Resolve(shape);
  const ReferenceTrajectory traj = config.trajectory.Build();
  const Pose2 x0 = traj[0];

  std::optional<TransitionModels> models;
  if (config.transfers()) {
    if (transferred) {
      models = *transferred;
    } else {
      if (config.model_file.empty()) {
        throw ConfigError("settings 1 and 2 require model_file");
      }
      if (!std::filesystem::exists(config.model_file)) {
        throw ConfigError("model file not found: " + config.model_file);
      }
      try {
        models = LoadModels(config.model_file);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
  } else {
    // Exploration runs on its own copy of the target; the episode then
    // starts from the first waypoint.
    PlantParams learn_params = params;
    learn_params.disturbance.reset();
    Plant learn_plant(shape, learn_params, {});
    Rng learn_rng = MakeStream(seed, Stream::kLearn);
    models = LearnModels(learn_plant, x0, config.exploration_count, learn_rng,
                         ModelConfigFor(config, params));
  }

  RunLog log;
  log.shape = config.shape_file.empty() ? config.shape : config.shape_file;
  log.setting = config.setting;
  log.seed = seed;
  log.initial_pose = x0;

  Plant plant(shape, params, {});
  plant.Reset(x0);
  Rng mpc_rng = MakeStream(seed, Stream::kMpc);
  Rng plant_rng = MakeStream(seed, Stream::kPlant);
  const DistanceWeights& w = config.mpc.weights;

  Pose2 x = x0;
  std::optional<Control> previous;
  double plan_ms = 0.0;
  int t = 0;
  while (Distance(x, traj.back(), w) > config.delta && t < config.max_pushes) {
    const auto t0 = std::chrono::steady_clock::now();
    FallbackCounter counted(*models);
    const Control u = Plan(counted, x, traj, config.mpc, mpc_rng);
    plan_ms += std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - t0)
                   .count();

    const ExecutionResult res =
        SmoothenedExecute(plant, x, u, previous, config.sigma,
                          params.virtual_circle_R, plant_rng);
    if (config.online_update()) models = models->Updated(u, x, res.pose);

    ++t;
    StepRecord rec;
    rec.step = t;
    rec.pose = res.pose;
    rec.control = u;
    rec.smoothed = res.smoothed;
    rec.fallback = res.fallback;
    rec.miss = res.miss;
    rec.disturbed = res.disturbed;
    rec.inverse_fallback = counted.count() > 0;
    rec.dataset_size = static_cast<int>(models->dataset().size());
    log.steps.push_back(rec);

    x = res.pose;
    previous = u;
  }
  log.pushes = t;
  log.termination = Distance(x, traj.back(), w) <= config.delta
                        ? Termination::kReached
                        : Termination::kBudget;
  log.mae_mm = ComputeMaeMm(log.ExecutedPoses(), traj);
  log.mean_plan_ms = t > 0 ? plan_ms / t : 0.0;
  return log;
}

std::vector<SweepCell> RunSweep(const ExperimentConfig& base,
                                const SweepSpec& spec,
                                const std::string& model_dir) {
  base.Validate();
  std::vector<SweepCell> cells;
  auto add = [&cells](int n, int q, int l, int setting) {
    SweepCell c;
    c.n = n;
    c.q = q;
    c.l = l;
    c.setting = setting;
    cells.push_back(std::move(c));
  };
  switch (spec.axis) {
    case SweepAxis::kN:
      for (int n : spec.n_values) {
        for (int s : spec.settings) {
          add(n, base.mpc.rollouts, base.mpc.horizon, s);
        }
      }
      break;
    case SweepAxis::kQxL:
      for (int l : spec.l_values) {
        for (int q : spec.q_values) {
          add(base.exploration_count, q, l, base.setting);
        }
      }
      break;
    case SweepAxis::kSetting:
      for (int s : spec.settings) {
        add(base.exploration_count, base.mpc.rollouts, base.mpc.horizon, s);
      }
      break;
  }
  if (spec.shapes.empty()) throw ConfigError("sweep needs at least one shape");

  std::map<std::pair<int, uint64_t>, TransitionModels> transfer_cache;
  std::optional<TransitionModels> fixed_transfer;
  if (!base.model_file.empty()) {
    try {
      fixed_transfer = LoadModels(base.model_file);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  auto transfer_models = [&](int n, uint64_t seed) -> const TransitionModels& {
    if (fixed_transfer) return *fixed_transfer;
    auto key = std::make_pair(n, seed);
    auto it = transfer_cache.find(key);
    if (it != transfer_cache.end()) return it->second;
    TransitionModels learned = LearnOnShape(base, base.transfer_shape, n, seed);
    if (!model_dir.empty()) {
      std::filesystem::create_directories(model_dir);
      const std::string path = model_dir + "/transfer_" + base.transfer_shape +
                               "_N" + std::to_string(n) + "_seed" +
                               std::to_string(seed) + ".json";
      SaveModels(learned, path);
      learned = LoadModels(path);
    }
    return transfer_cache.emplace(key, std::move(learned)).first->second;
  };

  for (SweepCell& cell : cells) {
    ExperimentConfig cfg = base;
    cfg.exploration_count = cell.n;
    cfg.mpc.rollouts = cell.q;
    cfg.mpc.horizon = cell.l;
    cfg.setting = cell.setting;
    cfg.shape_file.clear();
    for (const std::string& shape : spec.shapes) {
      cfg.shape = shape;
      for (uint64_t seed : base.seeds) {
        const TransitionModels* tm =
            cfg.transfers() ? &transfer_models(cell.n, seed) : nullptr;
        const RunLog log = RunEpisode(cfg, seed, tm);
        cell.maes.push_back(log.mae_mm);
        if (log.termination == Termination::kReached) ++cell.reached;
      }
    }
    double sum = 0.0;
    for (double m : cell.maes) sum += m;
    cell.mean_mae = sum / cell.maes.size();
    double var = 0.0;
    for (double m : cell.maes) var += (m - cell.mean_mae) * (m - cell.mean_mae);
    cell.std_mae = std::sqrt(var / cell.maes.size());
  }
  return cells;
}

std::string SweepToCsv(const std::vector<SweepCell>& cells) {
  std::ostringstream out;
  out << "N,Q,L,setting,episodes,reached,mean_mae_mm,std_mae_mm\n";
  for (const auto& c : cells) {
    out << c.n << ',' << c.q << ',' << c.l << ',' << c.setting << ','
        << c.maes.size() << ',' << c.reached << ','
        << Fmt("%.6f", c.mean_mae) << ',' << Fmt("%.6f", c.std_mae) << '\n';
  }
  return out.str();
}

std::string RunLogToCsv(const RunLog& log) {
  std::ostringstream out;
  out << "step,x_m,y_m,theta_rad,alpha,beta,smoothed,miss,dataset_size\n";
  const Pose2& x0 = log.initial_pose;
  out << "0," << Fmt("%.9f", x0.x()) << ',' << Fmt("%.9f", x0.y()) << ','
      << Fmt("%.9f", x0.theta()) << ",,,,,\n";
  for (const auto& s : log.steps) {
    out << s.step << ',' << Fmt("%.9f", s.pose.x()) << ','
        << Fmt("%.9f", s.pose.y()) << ',' << Fmt("%.9f", s.pose.theta()) << ','
        << Fmt("%.9f", s.control.alpha()) << ','
        << Fmt("%.9f", s.control.beta()) << ',' << (s.smoothed ? 1 : 0) << ','
        << (s.miss ? 1 : 0) << ',' << s.dataset_size << '\n';
  }
  out << "summary," << Fmt("%.6f", log.mae_mm) << ',' << log.pushes << ','
      << TerminationName(log.termination) << ",,,,,\n";
  return out.str();
}

std::string RunLogSummaryJson(const RunLog& log) {
  nlohmann::ordered_json j;
  j["shape"] = log.shape;
  j["setting"] = log.setting;
  j["seed"] = log.seed;
  j["mae_mm"] = log.mae_mm;
  j["pushes"] = log.pushes;
  j["termination"] = TerminationName(log.termination);
  int smoothed = 0, misses = 0, inverse_fallbacks = 0;
  for (const auto& s : log.steps) {
    smoothed += s.smoothed;
    misses += s.miss;
    inverse_fallbacks += s.inverse_fallback;
  }
  j["smoothed_pushes"] = smoothed;
  j["missed_pushes"] = misses;
  j["inverse_fallback_steps"] = inverse_fallbacks;
  return j.dump(2);
}

std::string RunLogToJson(const RunLog& log) {
  nlohmann::ordered_json j;
  j["format"] = "unopush-runlog";
  j["version"] = 1;
  j["shape"] = log.shape;
  j["setting"] = log.setting;
  j["seed"] = log.seed;
  j["initial_pose"] = {log.initial_pose.x(), log.initial_pose.y(),
                       log.initial_pose.theta()};
  j["mae_mm"] = log.mae_mm;
  j["pushes"] = log.pushes;
  j["termination"] = TerminationName(log.termination);
  j["mean_plan_ms"] = log.mean_plan_ms;
  auto steps = nlohmann::ordered_json::array();
  for (const auto& s : log.steps) {
    steps.push_back({{"step", s.step},
                     {"pose", {s.pose.x(), s.pose.y(), s.pose.theta()}},
                     {"alpha", s.control.alpha()},
                     {"beta", s.control.beta()},
                     {"smoothed", s.smoothed},
                     {"fallback", s.fallback},
                     {"miss", s.miss},
                     {"disturbed", s.disturbed},
                     {"inverse_fallback", s.inverse_fallback},
                     {"dataset_size", s.dataset_size}});
  }
  j["steps"] = steps;
  return j.dump(2);
}

RunLog RunLogFromJson(const std::string& text) {
  using nlohmann::json;
  try {
    const json j = json::parse(text);
    if (j.at("format") != "unopush-runlog") {
      throw ConfigError("not a unopush run log");
    }
    RunLog log;
    log.shape = j.at("shape");
    log.setting = j.at("setting");
    log.seed = j.at("seed");
    const auto& p0 = j.at("initial_pose");
    log.initial_pose = Pose2(p0[0], p0[1], p0[2]);
    log.mae_mm = j.at("mae_mm");
    log.pushes = j.at("pushes");
    log.termination = j.at("termination") == "reached" ? Termination::kReached
                                                       : Termination::kBudget;
    log.mean_plan_ms = j.value("mean_plan_ms", 0.0);
    for (const json& s : j.at("steps")) {
      StepRecord r;
      r.step = s.at("step");
      const auto& p = s.at("pose");
      r.pose = Pose2(p[0], p[1], p[2]);
      r.control = Control(s.at("alpha"), s.at("beta"));
      r.smoothed = s.at("smoothed");
      r.fallback = s.value("fallback", false);
      r.miss = s.at("miss");
      r.disturbed = s.value("disturbed", false);
      r.inverse_fallback = s.value("inverse_fallback", false);
      r.dataset_size = s.at("dataset_size");
      log.steps.push_back(r);
    }
    return log;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed run log: ") + e.what());
  }
}

}  // namespace unopush
