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

// Non-parametric push models. The forward model maps a control to the body
// motion it produces; the inverse model maps a desired body motion to a
// control. Both are GP regressions over the same ε-separated dataset with
// domain and codomain swapped.

#ifndef UNOPUSH_TRANSITION_MODEL_H_
#define UNOPUSH_TRANSITION_MODEL_H_

#include <array>
#include <string>
#include <vector>

#include "unopush/gp.h"
#include "unopush/se2.h"

namespace unopush {

// Push control in the object body frame: alpha picks the start point on the
// virtual circle, beta offsets the approach direction.
class Control {
 public:
  static constexpr double kBetaMax = 0.2;

  Control() = default;
  // alpha is wrapped into [0, 2pi); throws std::invalid_argument when
  // |beta| > kBetaMax or either angle is not finite.
  Control(double alpha, double beta);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  bool operator==(const Control&) const = default;

 private:
  double alpha_ = 0.0;
  double beta_ = 0.0;
};

// (cos alpha, sin alpha, beta).
std::array<double, 3> FeaturizeControl(const Control& u);

// sqrt(wrap(alpha1 - alpha2)^2 + (beta1 - beta2)^2).
double ControlDistance(const Control& a, const Control& b);

struct MotionSample {
  Control control;
  Pose2 motion;  // body frame
};

// Ordered samples in which no two controls lie within epsilon of each other.
class Dataset {
 public:
  explicit Dataset(double epsilon = 0.1);

  // Removes every sample whose control is closer than epsilon to the new
  // one, then appends it. Returns the number removed.
  int Insert(const MotionSample& sample);

  double epsilon() const { return epsilon_; }
  const std::vector<MotionSample>& samples() const { return samples_; }
  size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  // Minimum pairwise control distance; +inf below two samples.
  double MinSeparation() const;

 private:
  double epsilon_;
  std::vector<MotionSample> samples_;
};

struct ModelConfig {
  std::array<double, 3> forward_lengthscales{0.5, 0.5, 0.1};
  // Noise on (dx [m], dy [m], dtheta [rad]).
  std::array<double, 3> forward_noise_std{0.001, 0.001, 0.01};
  // Scaling of (dx, dy, dtheta) before the inverse kernel.
  std::array<double, 3> inverse_input_scale{1.0 / 0.01, 1.0 / 0.01, 1.0 / 0.2};
  std::array<double, 3> inverse_lengthscales{0.5, 0.5, 0.5};
  // Noise on (cos alpha, sin alpha, beta).
  std::array<double, 3> inverse_noise_std{0.02, 0.02, 0.02};
  double signal_std_floor = 1e-4;
  double epsilon = 0.1;

  // Defaults with the inverse translation scale set to 1 / push distance.
  static ModelConfig ForPushDistance(double push_distance);
};

// Anything the controller can roll out: a forward and an inverse map.
class MotionModel {
 public:
  virtual ~MotionModel() = default;
  virtual Pose2 PredictForward(const Control& u) const = 0;
  // `used_fallback`, when given, reports whether the predicted direction was
  // degenerate and alpha came from the nearest training motion instead.
  virtual Control PredictInverse(const Pose2& motion,
                                 bool* used_fallback = nullptr) const = 0;
};

class TransitionModels : public MotionModel {
 public:
  // Throws std::invalid_argument on an empty dataset.
  static TransitionModels Fit(Dataset dataset, const ModelConfig& config);

  Pose2 PredictForward(const Control& u) const override;
  Control PredictInverse(const Pose2& motion,
                         bool* used_fallback = nullptr) const override;

  // Applies the ε-replacement rule for (u, x_t^-1 x_next) and refits both
  // regressors, returning a new value.
  TransitionModels Updated(const Control& u, const Pose2& x_t,
                           const Pose2& x_next) const;

  const Dataset& dataset() const { return dataset_; }
  const ModelConfig& config() const { return config_; }
  const GpRegressor& forward() const { return forward_; }
  const GpRegressor& inverse() const { return inverse_; }

  Eigen::VectorXd InverseFeatures(const Pose2& motion) const;
  // Shrinks the translation to the largest observed translation and clamps
  // the rotation to the observed rotation range.
  Pose2 ClampToEnvelope(const Pose2& motion) const;

 private:
  TransitionModels(Dataset dataset, const ModelConfig& config);

  Dataset dataset_;
  ModelConfig config_;
  GpRegressor forward_;
  GpRegressor inverse_;
};

TransitionModels UpdateModels(const TransitionModels& models, const Control& u,
                              const Pose2& x_t, const Pose2& x_next);

// JSON model file holding the dataset and hyperparameters; the regressors
// are refit on load.
void SaveModels(const TransitionModels& models, const std::string& path);
TransitionModels LoadModels(const std::string& path);
std::string ModelsToJson(const TransitionModels& models);
TransitionModels ModelsFromJson(const std::string& text);

}  // namespace unopush

#endif  // UNOPUSH_TRANSITION_MODEL_H_
