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

#include "unopush/executor.h"

#include <cmath>
#include <stdexcept>

namespace unopush {
namespace {

constexpr double kClearance = 1e-6;
constexpr double kBackoffStep = 5e-4;

}  // namespace

PushGeometry ComputePushGeometry(const Pose2& pose, const Control& u,
                                 double R) {
  const Vec2 p_body{R * std::cos(u.alpha()), R * std::sin(u.alpha())};
  const Vec2 dir_body = Vec2{-std::cos(u.alpha()), -std::sin(u.alpha())}
                            .Rotated(u.beta());
  return {pose.TransformPoint(p_body), pose.TransformVector(dir_body)};
}

ExecutionResult ExecuteRaw(Plant& plant, const Vec2& start,
                           const Vec2& direction, Rng& rng) {
  const PushOutcome out = plant.Push(start, direction, rng);
  ExecutionResult r;
  r.pose = out.state.object_pose;
  r.miss = out.miss;
  r.disturbed = out.disturbed;
  return r;
}

ExecutionResult Execute(Plant& plant, const Pose2& x_t, const Control& u,
                        Rng& rng) {
  const PushGeometry geo =
      ComputePushGeometry(x_t, u, plant.params().virtual_circle_R);
  return ExecuteRaw(plant, geo.start, geo.direction, rng);
}

std::optional<SmoothedStart> ComputeSmoothedStart(const Control& u, double R,
                                                  double r) {
  if (!(r > 0.0)) return std::nullopt;
  const double ratio = R * std::sin(u.beta()) / r;
  if (std::abs(ratio) > 1.0) return std::nullopt;
  SmoothedStart s;
  s.gamma = u.alpha() + u.beta() - std::asin(ratio);
  s.point = {r * std::cos(s.gamma), r * std::sin(s.gamma)};
  return s;
}

ExecutionResult SmoothenedExecute(Plant& plant, const Pose2& x_t,
                                  const Control& u,
                                  const std::optional<Control>& u_prev,
                                  double sigma, double R, Rng& rng) {
  if (!u_prev || ControlDistance(*u_prev, u) >= sigma) {
    return Execute(plant, x_t, u, rng);
  }
  auto fallback = [&] {
    ExecutionResult res = Execute(plant, x_t, u, rng);
    res.fallback = true;
    return res;
  };

  const double r =
      (plant.state().pusher_position - x_t.translation()).Norm();
  // Beyond the circle the line point at radius r lies behind P.
  if (r < plant.params().pusher_radius + kClearance || r >= R) {
    return fallback();
  }
  const auto start = ComputeSmoothedStart(u, R, r);
  if (!start) return fallback();

  const Vec2 p = x_t.TransformPoint(
      {R * std::cos(u.alpha()), R * std::sin(u.alpha())});
  Vec2 p_prime = x_t.TransformPoint(start->point);
  const Vec2 segment = p_prime - p;
  const double length = segment.Norm();
  if (length < kClearance) return fallback();
  const Vec2 direction = segment * (1.0 / length);

  // P' keeps the pusher's distance to the origin but not necessarily its
  // clearance from the boundary; retreat along the line toward P until the
  // disc is free.
  const PolygonShape& shape = plant.shape();
  const double needed = plant.params().pusher_radius + kClearance;
  double retreat = 0.0;
  while (shape.SignedDistance(x_t.InverseTransformPoint(p_prime)) < needed) {
    retreat = std::min(retreat + kBackoffStep, length);
    p_prime = p + direction * (length - retreat);
    if (retreat >= length) break;
  }

  ExecutionResult res = ExecuteRaw(plant, p_prime, direction, rng);
  res.smoothed = true;
  return res;
}

TransitionModels LearnModels(Plant& plant, const Pose2& x0, int n, Rng& rng,
                             const ModelConfig& config) {
  if (n < 1) throw std::invalid_argument("LearnModels needs N >= 1");
  plant.Reset(x0);
  Dataset dataset(config.epsilon);
  for (int i = 0; i < n; ++i) {
    const double alpha = rng.Uniform(0.0, kTwoPi);
    const double beta = rng.Uniform(-Control::kBetaMax, Control::kBetaMax);
    const Control u(alpha, beta);
    const Pose2 before = plant.state().object_pose;
    const ExecutionResult res = Execute(plant, before, u, rng);
    dataset.Insert({u, RelativeMotion(before, res.pose)});
  }
  return TransitionModels::Fit(std::move(dataset), config);
}

}  // namespace unopush
