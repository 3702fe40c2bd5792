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

#ifndef UNOPUSH_EXECUTOR_H_
#define UNOPUSH_EXECUTOR_H_

#include <optional>

#include "unopush/plant.h"
#include "unopush/random.h"
#include "unopush/se2.h"
#include "unopush/transition_model.h"

namespace unopush {

struct PushGeometry {
  Vec2 start;      // spatial point P on the virtual circle
  Vec2 direction;  // spatial unit vector
};

// P = X * (R cos alpha, R sin alpha); the direction aims from P at the body
// origin, rotated counter-clockwise by beta.
PushGeometry ComputePushGeometry(const Pose2& pose, const Control& u, double R);

struct ExecutionResult {
  Pose2 pose;
  bool miss = false;
  bool smoothed = false;
  // Smoothing was requested but the geometry was degenerate.
  bool fallback = false;
  bool disturbed = false;
};

// Full retreat-and-push execution of u from the observed pose x_t.
ExecutionResult Execute(Plant& plant, const Pose2& x_t, const Control& u,
                        Rng& rng);

// Pushes from an explicit start point and direction (spatial frame).
ExecutionResult ExecuteRaw(Plant& plant, const Vec2& start,
                           const Vec2& direction, Rng& rng);

// Body-frame re-approach point for a smoothed push: the point at distance r
// from the origin on the push line of u, i.e. angle
// gamma = alpha + beta - asin(R sin(beta) / r). nullopt when
// |R sin(beta) / r| > 1.
struct SmoothedStart {
  double gamma = 0.0;
  Vec2 point;  // body frame, |point| == r
};
std::optional<SmoothedStart> ComputeSmoothedStart(const Control& u, double R,
                                                  double r);

// Smoothed execution: when u_prev is within sigma of u (control distance),
// the pusher re-approaches from the point at its current distance r from the
// object origin on the push line of u instead of retreating to the virtual
// circle. Otherwise, or when the geometry degenerates, falls back to
// Execute.
ExecutionResult SmoothenedExecute(Plant& plant, const Pose2& x_t,
                                  const Control& u,
                                  const std::optional<Control>& u_prev,
                                  double sigma, double R, Rng& rng);

// Learns transition models from N uniformly sampled exploratory pushes,
// starting with the object at x0. Sampled controls enter the dataset through
// the ε-replacement rule.
TransitionModels LearnModels(Plant& plant, const Pose2& x0, int n, Rng& rng,
                             const ModelConfig& config);

}  // namespace unopush

#endif  // UNOPUSH_EXECUTOR_H_
