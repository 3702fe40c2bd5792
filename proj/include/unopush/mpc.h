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

// Sampling model-predictive control. Each rollout walks the learned models
// forward for `horizon` steps, aiming every step at the successor of the
// nearest waypoint under a random motion perturbation; the first control of
// the rollout closest to the reference wins.

#ifndef UNOPUSH_MPC_H_
#define UNOPUSH_MPC_H_

#include <cstddef>
#include <vector>

#include "unopush/random.h"
#include "unopush/se2.h"
#include "unopush/transition_model.h"

namespace unopush {

class ReferenceTrajectory {
 public:
  ReferenceTrajectory() = default;
  // Throws std::invalid_argument if empty or if two consecutive waypoints
  // coincide.
  explicit ReferenceTrajectory(std::vector<Pose2> waypoints);

  const std::vector<Pose2>& waypoints() const { return waypoints_; }
  size_t size() const { return waypoints_.size(); }
  const Pose2& operator[](size_t i) const { return waypoints_[i]; }
  const Pose2& back() const { return waypoints_.back(); }

 private:
  std::vector<Pose2> waypoints_;
};

struct MpcConfig {
  int horizon = 20;   // L
  int rollouts = 50;  // Q; 0 selects the greedy inverse-model control
  double perturb_trans = 0.005;
  double perturb_rot = 0.05;
  DistanceWeights weights;
  // Worker threads for rollouts; results do not depend on this.
  int threads = 1;

  void Validate() const;
};

// Zero-based index of the nearest waypoint; ties go to the larger index.
size_t NearestWaypoint(const Pose2& x, const ReferenceTrajectory& traj,
                       const DistanceWeights& w);

// Body motion from x to the waypoint after `nearest`, clamped to the last.
Pose2 DesiredMotion(const Pose2& x, const ReferenceTrajectory& traj,
                    size_t nearest);

struct Rollout {
  std::vector<Pose2> poses;  // horizon + 1 entries, poses[0] = start
  Control first_control;
};

Rollout SimulateRollout(const MotionModel& model, const Pose2& x_t,
                        const ReferenceTrajectory& traj,
                        const MpcConfig& config, Rng& rng);

// Sum over poses[1..] of the distance to the nearest waypoint.
double RolloutCost(const std::vector<Pose2>& poses,
                   const ReferenceTrajectory& traj, const DistanceWeights& w);

struct PlanResult {
  Control control;
  int best_rollout = -1;  // -1 for the greedy path
  std::vector<double> costs;
};

// Rollout q draws from Rng(Rng::Mix(base + q)) where base is one draw from
// `rng`, so the first k rollouts of a larger batch reproduce a batch of k.
// The greedy path (rollouts == 0) leaves `rng` untouched.
PlanResult PlanDetailed(const MotionModel& model, const Pose2& x_t,
                        const ReferenceTrajectory& traj,
                        const MpcConfig& config, Rng& rng);

Control Plan(const MotionModel& model, const Pose2& x_t,
             const ReferenceTrajectory& traj, const MpcConfig& config,
             Rng& rng);

}  // namespace unopush

#endif  // UNOPUSH_MPC_H_
