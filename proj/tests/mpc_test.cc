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
#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "unopush/executor.h"
#include "unopush/trajectory.h"

namespace unopush {
namespace {

// Ground-truth model: forward runs the simulator from the identity pose, the
// inverse pushes against the desired translation.
class PlantModel : public MotionModel {
 public:
  explicit PlantModel(const std::string& shape)
      : shape_(BuiltinShape(shape)), params_(PlantParams::DefaultsFor(shape_)) {}

  Pose2 PredictForward(const Control& u) const override {
    Plant plant(shape_, params_, {});
    plant.Reset(Pose2());
    Rng rng(0);
    return Execute(plant, Pose2(), u, rng).pose;
  }
  Control PredictInverse(const Pose2& g, bool* used_fallback) const override {
    if (used_fallback) *used_fallback = false;
    return {std::atan2(-g.y(), -g.x()), std::clamp(g.theta(), -0.2, 0.2)};
  }

  const PolygonShape& shape() const { return shape_; }
  const PlantParams& params() const { return params_; }

 private:
  PolygonShape shape_;
  PlantParams params_;
};

// Cheap analytic model for planner-level properties.
class AnalyticModel : public MotionModel {
 public:
  Pose2 PredictForward(const Control& u) const override {
    return {-0.01 * std::cos(u.alpha()), -0.01 * std::sin(u.alpha()),
            0.2 * std::sin(u.alpha()) + u.beta()};
  }
  Control PredictInverse(const Pose2& g, bool* used_fallback) const override {
    if (used_fallback) *used_fallback = false;
    return {std::atan2(-g.y(), -g.x()), std::clamp(0.5 * g.theta(), -0.2, 0.2)};
  }
};

ReferenceTrajectory Circle() { return GenCircle(0.15, 60); }

TEST(ReferenceTrajectory, RejectsBadInput) {
  EXPECT_THROW(ReferenceTrajectory(std::vector<Pose2>{}), std::invalid_argument);
  EXPECT_THROW(ReferenceTrajectory({Pose2(1, 0, 0), Pose2(1, 0, 0)}),
               std::invalid_argument);
}

TEST(NearestWaypoint, Examples) {
  const ReferenceTrajectory t({Pose2(0, 0, 0), Pose2(0.25, 0, 0),
                               Pose2(0.5, 0, 0), Pose2(0.75, 0, 0)});
  const DistanceWeights w;
  EXPECT_EQ(NearestWaypoint(Pose2(0.5, 0, 0), t, w), 2u);
  // Exactly equidistant from the waypoints at 0.25 and 0.5.
  EXPECT_EQ(NearestWaypoint(Pose2(0.375, 0.125, 0), t, w), 2u);
  EXPECT_EQ(NearestWaypoint(Pose2(-5, 0, 0), t, w), 0u);
}

TEST(NearestWaypoint, MatchesLinearScan) {
  const ReferenceTrajectory t = GenCircle(0.15, 50);
  const DistanceWeights w;
  Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    const Pose2 x(rng.Uniform(-0.3, 0.3), rng.Uniform(-0.3, 0.3),
                  rng.Uniform(-kPi, kPi));
    size_t best = 0;
    for (size_t j = 1; j < t.size(); ++j) {
      if (Distance(x, t[j], w) <= Distance(x, t[best], w)) best = j;
    }
    EXPECT_EQ(NearestWaypoint(x, t, w), best);
  }
}

TEST(DesiredMotion, TargetsSuccessorAndClamps) {
  const ReferenceTrajectory t({Pose2(0, 0, 0), Pose2(0.1, 0, 0)});
  EXPECT_EQ(DesiredMotion(Pose2(), t, 0), Pose2(0.1, 0, 0));
  EXPECT_EQ(DesiredMotion(Pose2(), t, 1), Pose2(0.1, 0, 0));
  const Pose2 g = DesiredMotion(Pose2(0, 0, kPi / 2), t, 0);
  EXPECT_NEAR(g.x(), 0.0, 1e-15);
  EXPECT_NEAR(g.y(), -0.1, 1e-15);
  EXPECT_NEAR(g.theta(), -kPi / 2, 1e-15);
}

TEST(RolloutCost, Examples) {
  const ReferenceTrajectory t({Pose2(0, 0, 0), Pose2(0.1, 0, 0)});
  const DistanceWeights w;
  // The start pose is excluded.
  EXPECT_EQ(RolloutCost({Pose2(5, 5, 0), Pose2(0, 0, 0), Pose2(0.1, 0, 0)}, t, w),
            0.0);
  EXPECT_NEAR(RolloutCost({Pose2(), Pose2(0.003, 0.004, 0), Pose2(0.1, 0, 0.1)},
                          t, w),
              0.005 + 0.05 * 0.1, 1e-15);
}

TEST(RolloutCost, MatchesBruteForce) {
  const ReferenceTrajectory t = Circle();
  const DistanceWeights w{1.0, 0.05};
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    std::vector<Pose2> poses;
    double expect = 0.0;
    for (int k = 0; k < 21; ++k) {
      poses.emplace_back(rng.Uniform(-0.3, 0.3), rng.Uniform(-0.3, 0.3),
                         rng.Uniform(-kPi, kPi));
      if (k == 0) continue;
      double best = std::numeric_limits<double>::infinity();
      for (const Pose2& y : t.waypoints()) {
        best = std::min(best, std::hypot(poses[k].x() - y.x(), poses[k].y() - y.y()) +
                                  0.05 * std::abs(WrapAngle(poses[k].theta() - y.theta())));
      }
      expect += best;
    }
    EXPECT_NEAR(RolloutCost(poses, t, w), expect, 1e-12);
  }
}

TEST(MpcConfig, Validate) {
  MpcConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.horizon = 0;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
  c.horizon = 1;
  c.rollouts = -1;
  EXPECT_THROW(c.Validate(), std::invalid_argument);
}

TEST(Plan, GreedyEqualsInverseOfDesiredMotion) {
  const AnalyticModel model;
  const ReferenceTrajectory t = Circle();
  MpcConfig c;
  c.rollouts = 0;
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    const Pose2 x(rng.Uniform(-0.2, 0.2), rng.Uniform(-0.2, 0.2),
                  rng.Uniform(-kPi, kPi));
    Rng plan_rng(11);
    const PlanResult r = PlanDetailed(model, x, t, c, plan_rng);
    const Control expect = model.PredictInverse(
        DesiredMotion(x, t, NearestWaypoint(x, t, c.weights)), nullptr);
    EXPECT_EQ(r.control, expect);
    EXPECT_EQ(r.best_rollout, -1);
    // The greedy path draws nothing.
    EXPECT_EQ(plan_rng.NextU64(), Rng(11).NextU64());
  }
}

TEST(Plan, SingleUnperturbedRolloutIsGreedy) {
  const AnalyticModel model;
  const ReferenceTrajectory t = Circle();
  MpcConfig greedy;
  greedy.rollouts = 0;
  MpcConfig one;
  one.rollouts = 1;
  one.perturb_trans = 0.0;
  one.perturb_rot = 0.0;
  Rng rng(4);
  for (int i = 0; i < 50; ++i) {
    const Pose2 x(rng.Uniform(-0.2, 0.2), rng.Uniform(-0.2, 0.2),
                  rng.Uniform(-kPi, kPi));
    Rng a(1), b(1);
    EXPECT_EQ(Plan(model, x, t, one, a), Plan(model, x, t, greedy, b));
  }
}

TEST(Plan, PicksCheapestRolloutAndPrefixesAgree) {
  const AnalyticModel model;
  const ReferenceTrajectory t = Circle();
  MpcConfig c;
  c.rollouts = 40;
  c.horizon = 8;
  const Pose2 x(0.16, 0.01, 1.4);
  Rng a(5);
  const PlanResult big = PlanDetailed(model, x, t, c, a);
  ASSERT_EQ(big.costs.size(), 40u);
  const auto it = std::min_element(big.costs.begin(), big.costs.end());
  EXPECT_EQ(big.best_rollout, it - big.costs.begin());
  c.rollouts = 15;
  Rng b(5);
  const PlanResult small = PlanDetailed(model, x, t, c, b);
  for (int q = 0; q < 15; ++q) EXPECT_EQ(small.costs[q], big.costs[q]);
  const auto jt = std::min_element(big.costs.begin(), big.costs.begin() + 15);
  EXPECT_EQ(small.best_rollout, jt - big.costs.begin());
  // The winning rollout replays to the same first control.
  Rng stream(Rng::Mix(Rng(5).NextU64() + big.best_rollout));
  c.rollouts = 40;
  EXPECT_EQ(SimulateRollout(model, x, t, c, stream).first_control, big.control);
}

TEST(Plan, DeterministicAndThreadIndependent) {
  const AnalyticModel model;
  const ReferenceTrajectory t = Circle();
  MpcConfig c;
  c.rollouts = 50;
  const Pose2 x(0.14, -0.02, 1.5);
  Rng r1(6), r2(6), r3(6);
  const PlanResult a = PlanDetailed(model, x, t, c, r1);
  const PlanResult b = PlanDetailed(model, x, t, c, r2);
  c.threads = 4;
  const PlanResult d = PlanDetailed(model, x, t, c, r3);
  EXPECT_EQ(a.costs, b.costs);
  EXPECT_EQ(a.costs, d.costs);
  EXPECT_EQ(a.control, d.control);
}

TEST(SimulateRollout, PerfectModelMatchesPlant) {
  const PlantModel model("square_block");
  const ReferenceTrajectory t = Circle();
  MpcConfig c;
  c.horizon = 20;
  c.perturb_trans = 0.0;
  c.perturb_rot = 0.0;
  const Pose2 x0 = t[0];
  Rng rng(7);
  const Rollout r = SimulateRollout(model, x0, t, c, rng);
  ASSERT_EQ(r.poses.size(), 21u);

  Plant plant(model.shape(), model.params(), {});
  plant.Reset(x0);
  Rng plant_rng(8);
  Pose2 x = x0;
  for (int k = 0; k < c.horizon; ++k) {
    const Pose2 desired = DesiredMotion(x, t, NearestWaypoint(x, t, c.weights));
    const Control u = model.PredictInverse(desired, nullptr);
    if (k == 0) {
      EXPECT_EQ(u, r.first_control);
    }
    x = Execute(plant, x, u, plant_rng).pose;
    EXPECT_NEAR(x.x(), r.poses[k + 1].x(), 1e-9);
    EXPECT_NEAR(x.y(), r.poses[k + 1].y(), 1e-9);
    EXPECT_NEAR(WrapAngle(x.theta() - r.poses[k + 1].theta()), 0.0, 1e-9);
  }
}

}  // namespace
}  // namespace unopush
