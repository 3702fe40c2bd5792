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

#include "unopush/transition_model.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace unopush {
namespace {

constexpr double kDegenerateDirection = 1e-6;

std::vector<double> ToVector(const std::array<double, 3>& a) {
  return {a.begin(), a.end()};
}

}  // namespace

Control::Control(double alpha, double beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw std::invalid_argument("control angles must be finite");
  }
  if (std::abs(beta) > kBetaMax + 1e-12) {
    throw std::invalid_argument("control beta outside [-0.2, 0.2]");
  }
  double a = std::fmod(alpha, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  alpha_ = a;
  beta_ = std::clamp(beta, -kBetaMax, kBetaMax);
}

std::array<double, 3> FeaturizeControl(const Control& u) {
  return {std::cos(u.alpha()), std::sin(u.alpha()), u.beta()};
}

double ControlDistance(const Control& a, const Control& b) {
  return std::hypot(WrapAngle(a.alpha() - b.alpha()), a.beta() - b.beta());
}

Dataset::Dataset(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be >= 0");
}

int Dataset::Insert(const MotionSample& sample) {
  const auto before = samples_.size();
  std::erase_if(samples_, [&](const MotionSample& s) {
    return ControlDistance(s.control, sample.control) < epsilon_;
  });
  const int removed = static_cast<int>(before - samples_.size());
  samples_.push_back(sample);
  return removed;
}

double Dataset::MinSeparation() const {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < samples_.size(); ++i) {
    for (size_t j = i + 1; j < samples_.size(); ++j) {
      best = std::min(best, ControlDistance(samples_[i].control,
                                            samples_[j].control));
    }
  }
  return best;
}

ModelConfig ModelConfig::ForPushDistance(double push_distance) {
  ModelConfig c;
  c.inverse_input_scale = {1.0 / push_distance, 1.0 / push_distance,
                           1.0 / Control::kBetaMax};
  return c;
}

TransitionModels::TransitionModels(Dataset dataset, const ModelConfig& config)
    : dataset_(std::move(dataset)), config_(config) {}

TransitionModels TransitionModels::Fit(Dataset dataset,
                                       const ModelConfig& config) {
  if (dataset.empty()) {
    throw std::invalid_argument("cannot fit transition models on no data");
  }
  TransitionModels m(std::move(dataset), config);
  const auto& samples = m.dataset_.samples();
  const Eigen::Index n = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd controls(n, 3), motions(n, 3), motion_features(n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto f = FeaturizeControl(samples[i].control);
    controls.row(i) << f[0], f[1], f[2];
    const Pose2& g = samples[i].motion;
    motions.row(i) << g.x(), g.y(), g.theta();
    motion_features.row(i) = m.InverseFeatures(g).transpose();
  }
  GpHyperparams fwd{ToVector(config.forward_lengthscales),
                    ToVector(config.forward_noise_std),
                    config.signal_std_floor};
  GpHyperparams inv{ToVector(config.inverse_lengthscales),
                    ToVector(config.inverse_noise_std),
                    config.signal_std_floor};
  m.forward_ = GpRegressor::Fit(controls, motions, fwd);
  m.inverse_ = GpRegressor::Fit(motion_features, controls, inv);
  return m;
}

Eigen::VectorXd TransitionModels::InverseFeatures(const Pose2& motion) const {
  const auto& s = config_.inverse_input_scale;
  return Eigen::Vector3d(motion.x() * s[0], motion.y() * s[1],
                         motion.theta() * s[2]);
}

Pose2 TransitionModels::PredictForward(const Control& u) const {
  const auto f = FeaturizeControl(u);
  const Eigen::VectorXd mean =
      forward_.PredictMean(Eigen::Vector3d(f[0], f[1], f[2]));
  return {mean[0], mean[1], mean[2]};
}

Pose2 TransitionModels::ClampToEnvelope(const Pose2& motion) const {
  double max_trans = 0.0;
  double min_rot = std::numeric_limits<double>::infinity();
  double max_rot = -min_rot;
  for (const auto& s : dataset_.samples()) {
    max_trans = std::max(max_trans, std::hypot(s.motion.x(), s.motion.y()));
    min_rot = std::min(min_rot, s.motion.theta());
    max_rot = std::max(max_rot, s.motion.theta());
  }
  const double trans = std::hypot(motion.x(), motion.y());
  const double k = trans > max_trans && trans > 0.0 ? max_trans / trans : 1.0;
  return {k * motion.x(), k * motion.y(),
          std::clamp(motion.theta(), min_rot, max_rot)};
}

Control TransitionModels::PredictInverse(const Pose2& motion,
                                         bool* used_fallback) const {
  const Eigen::VectorXd q = InverseFeatures(ClampToEnvelope(motion));
  const Eigen::VectorXd mean = inverse_.PredictMean(q);
  const double beta = std::clamp(mean[2], -Control::kBetaMax, Control::kBetaMax);
  if (std::hypot(mean[0], mean[1]) >= kDegenerateDirection) {
    if (used_fallback) *used_fallback = false;
    return {std::atan2(mean[1], mean[0]), beta};
  }
  // Direction carries no information: take alpha from the training motion
  // closest to the query in the inverse model's input space.
  const auto& samples = dataset_.samples();
  size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < samples.size(); ++i) {
    const double d2 = (InverseFeatures(samples[i].motion) - q).squaredNorm();
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  if (used_fallback) *used_fallback = true;
  return {samples[best].control.alpha(), beta};
}

TransitionModels TransitionModels::Updated(const Control& u, const Pose2& x_t,
                                           const Pose2& x_next) const {
  Dataset next = dataset_;
  next.Insert({u, RelativeMotion(x_t, x_next)});
  return Fit(std::move(next), config_);
}

TransitionModels UpdateModels(const TransitionModels& models, const Control& u,
                              const Pose2& x_t, const Pose2& x_next) {
  return models.Updated(u, x_t, x_next);
}

std::string ModelsToJson(const TransitionModels& models) {
  using nlohmann::json;
  const ModelConfig& c = models.config();
  json j;
  j["format"] = "unopush-models";
  j["version"] = 1;
  j["epsilon"] = models.dataset().epsilon();
  j["hyperparameters"] = {
      {"forward_lengthscales", c.forward_lengthscales},
      {"forward_noise_std", c.forward_noise_std},
      {"inverse_input_scale", c.inverse_input_scale},
      {"inverse_lengthscales", c.inverse_lengthscales},
      {"inverse_noise_std", c.inverse_noise_std},
      {"signal_std_floor", c.signal_std_floor},
  };
  json samples = json::array();
  for (const auto& s : models.dataset().samples()) {
    samples.push_back({{"alpha", s.control.alpha()},
                       {"beta", s.control.beta()},
                       {"dx", s.motion.x()},
                       {"dy", s.motion.y()},
                       {"dtheta", s.motion.theta()}});
  }
  j["samples"] = samples;
  return j.dump(2);
}

TransitionModels ModelsFromJson(const std::string& text) {
  using nlohmann::json;
  try {
    const json j = json::parse(text);
    if (j.at("format") != "unopush-models" || j.at("version") != 1) {
      throw std::invalid_argument("not a version 1 unopush model file");
    }
    ModelConfig c;
    const json& h = j.at("hyperparameters");
    c.forward_lengthscales = h.at("forward_lengthscales");
    c.forward_noise_std = h.at("forward_noise_std");
    c.inverse_input_scale = h.at("inverse_input_scale");
    c.inverse_lengthscales = h.at("inverse_lengthscales");
    c.inverse_noise_std = h.at("inverse_noise_std");
    c.signal_std_floor = h.at("signal_std_floor");
    c.epsilon = j.at("epsilon");
    Dataset d(c.epsilon);
    for (const json& s : j.at("samples")) {
      d.Insert({Control(s.at("alpha"), s.at("beta")),
                Pose2(s.at("dx"), s.at("dy"), s.at("dtheta"))});
    }
    return TransitionModels::Fit(std::move(d), c);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed model file: ") + e.what());
  }
}

void SaveModels(const TransitionModels& models, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write model file: " + path);
  out << ModelsToJson(models) << "\n";
}

TransitionModels LoadModels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open model file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ModelsFromJson(ss.str());
}

}  // namespace unopush
