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

#include "unopush/mpc.h"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <thread>

namespace unopush {

ReferenceTrajectory::ReferenceTrajectory(std::vector<Pose2> waypoints)
    : waypoints_(std::move(waypoints)) {
  if (waypoints_.empty()) {
    throw std::invalid_argument("reference trajectory needs a waypoint");
  }
  for (size_t i = 1; i < waypoints_.size(); ++i) {
    if (waypoints_[i] == waypoints_[i - 1]) {
      throw std::invalid_argument("consecutive waypoints must differ");
    }
  }
}

void MpcConfig::Validate() const {
  if (horizon < 1) throw std::invalid_argument("MPC horizon must be >= 1");
  if (rollouts < 0) throw std::invalid_argument("MPC rollouts must be >= 0");
  if (!(perturb_trans >= 0.0) || !(perturb_rot >= 0.0)) {
    throw std::invalid_argument("perturbation magnitudes must be >= 0");
  }
  weights.Validate();
}

size_t NearestWaypoint(const Pose2& x, const ReferenceTrajectory& traj,
                       const DistanceWeights& w) {
  size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (size_t j = 0; j < traj.size(); ++j) {
    const double d = Distance(x, traj[j], w);
    if (d <= best_d) {
      best_d = d;
      best = j;
    }
  }
  return best;
}

Pose2 DesiredMotion(const Pose2& x, const ReferenceTrajectory& traj,
                    size_t nearest) {
  const size_t target = std::min(nearest + 1, traj.size() - 1);
  return RelativeMotion(x, traj[target]);
}

Rollout SimulateRollout(const MotionModel& model, const Pose2& x_t,
                        const ReferenceTrajectory& traj,
                        const MpcConfig& config, Rng& rng) {
  Rollout r;
  r.poses.reserve(config.horizon + 1);
  r.poses.push_back(x_t);
  for (int k = 0; k < config.horizon; ++k) {
    const Pose2& x = r.poses.back();
    const size_t j = NearestWaypoint(x, traj, config.weights);
    const Pose2 desired = DesiredMotion(x, traj, j);
    const Pose2 xi =
        SamplePerturbation(rng, config.perturb_trans, config.perturb_rot);
    const Control u = model.PredictInverse(desired.Compose(xi));
    if (k == 0) r.first_control = u;
    r.poses.push_back(x.Compose(model.PredictForward(u)));
  }
  return r;
}

double RolloutCost(const std::vector<Pose2>& poses,
                   const ReferenceTrajectory& traj, const DistanceWeights& w) {
  double cost = 0.0;
  for (size_t k = 1; k < poses.size(); ++k) {
    cost += Distance(poses[k], traj[NearestWaypoint(poses[k], traj, w)], w);
  }
  return cost;
}

PlanResult PlanDetailed(const MotionModel& model, const Pose2& x_t,
                        const ReferenceTrajectory& traj,
                        const MpcConfig& config, Rng& rng) {
  config.Validate();
  PlanResult result;
  if (config.rollouts == 0) {
    const size_t j = NearestWaypoint(x_t, traj, config.weights);
    result.control = model.PredictInverse(DesiredMotion(x_t, traj, j));
    return result;
  }

  const uint64_t base = rng.NextU64();
  const int q_total = config.rollouts;
  std::vector<Control> first(q_total);
  result.costs.assign(q_total, 0.0);
  auto run_range = [&](int begin, int end) {
    for (int q = begin; q < end; ++q) {
      Rng stream(Rng::Mix(base + static_cast<uint64_t>(q)));
      const Rollout r = SimulateRollout(model, x_t, traj, config, stream);
      first[q] = r.first_control;
      result.costs[q] = RolloutCost(r.poses, traj, config.weights);
    }
  };
  const int threads = std::clamp(config.threads, 1, q_total);
  if (threads == 1) {
    run_range(0, q_total);
  } else {
    std::vector<std::jthread> workers;
    const int chunk = (q_total + threads - 1) / threads;
    for (int begin = 0; begin < q_total; begin += chunk) {
      workers.emplace_back(run_range, begin, std::min(q_total, begin + chunk));
    }
  }

  // Strict comparison keeps the lowest index on ties.
  int best = 0;
  for (int q = 1; q < q_total; ++q) {
    if (result.costs[q] < result.costs[best]) best = q;
  }
  result.best_rollout = best;
  result.control = first[best];
  return result;
}

Control Plan(const MotionModel& model, const Pose2& x_t,
             const ReferenceTrajectory& traj, const MpcConfig& config,
             Rng& rng) {
  return PlanDetailed(model, x_t, traj, config, rng).control;
}

}  // namespace unopush
