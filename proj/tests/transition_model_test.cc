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

#include <cmath>

#include <gtest/gtest.h>

#include "unopush/executor.h"
#include "unopush/plant.h"

namespace unopush {
namespace {

// Smooth synthetic push response used to build datasets without the plant.
Pose2 SyntheticMotion(const Control& u) {
  const double a = u.alpha();
  return {-0.01 * std::cos(a), -0.01 * std::sin(a) + 0.002 * u.beta(),
          0.3 * std::sin(a) + 0.5 * u.beta()};
}

Dataset GridDataset(int n_alpha, const std::vector<double>& betas) {
  Dataset d(0.1);
  for (int i = 0; i < n_alpha; ++i) {
    for (double b : betas) {
      const Control u(kTwoPi * i / n_alpha, b);
      d.Insert({u, SyntheticMotion(u)});
    }
  }
  return d;
}

TEST(Control, WrapsAlphaAndRejectsBadBeta) {
  EXPECT_NEAR(Control(-0.5, 0.0).alpha(), kTwoPi - 0.5, 1e-15);
  EXPECT_NEAR(Control(kTwoPi + 0.25, 0.0).alpha(), 0.25, 1e-15);
  EXPECT_EQ(Control(kTwoPi, 0.0).alpha(), 0.0);
  EXPECT_THROW(Control(0.0, 0.21), std::invalid_argument);
  EXPECT_THROW(Control(0.0, -0.3), std::invalid_argument);
  EXPECT_THROW(Control(std::nan(""), 0.0), std::invalid_argument);
  EXPECT_NO_THROW(Control(0.0, 0.2));
}

TEST(FeaturizeControl, Examples) {
  const auto f0 = FeaturizeControl(Control(0.0, 0.0));
  EXPECT_EQ(f0[0], 1.0);
  EXPECT_EQ(f0[1], 0.0);
  EXPECT_EQ(f0[2], 0.0);
  const auto f1 = FeaturizeControl(Control(kPi, 0.1));
  EXPECT_NEAR(f1[0], -1.0, 1e-15);
  EXPECT_NEAR(f1[1], 0.0, 1e-15);
  EXPECT_EQ(f1[2], 0.1);
  const auto f2 = FeaturizeControl(Control(kPi / 3, -0.2));
  EXPECT_NEAR(f2[0], 0.5, 1e-15);
  EXPECT_NEAR(f2[1], std::sqrt(3.0) / 2, 1e-15);
  EXPECT_EQ(f2[2], -0.2);
}

TEST(FeaturizeControl, RespectsWrap) {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const double a = rng.Uniform(0, kTwoPi);
    const double b = rng.Uniform(-0.2, 0.2);
    const auto f = FeaturizeControl(Control(a, b));
    const auto g = FeaturizeControl(Control(a + kTwoPi, b));
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(f[k], g[k], 1e-12);
  }
}

TEST(ControlDistance, Examples) {
  EXPECT_NEAR(ControlDistance(Control(0.01, 0.0), Control(kTwoPi - 0.01, 0.0)),
              0.02, 1e-12);
  EXPECT_NEAR(ControlDistance(Control(0.2, 0.1), Control(0.5, -0.1)),
              std::sqrt(0.13), 1e-12);
  EXPECT_NEAR(ControlDistance(Control(0.2, 0.1), Control(0.5, -0.1)), 0.3606,
              1e-4);
  EXPECT_EQ(ControlDistance(Control(1.0, 0.1), Control(1.0, 0.1)), 0.0);
}

TEST(Dataset, IdenticalControlReplacesMotion) {
  Dataset d(0.1);
  d.Insert({Control(1.0, 0.0), Pose2(0.01, 0, 0)});
  d.Insert({Control(2.0, 0.0), Pose2(0.02, 0, 0)});
  EXPECT_EQ(d.Insert({Control(1.0, 0.0), Pose2(0.03, 0, 0)}), 1);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.samples().back().motion, Pose2(0.03, 0, 0));
  EXPECT_EQ(d.samples().front().control, Control(2.0, 0.0));
}

TEST(Dataset, FarControlGrows) {
  Dataset d(0.1);
  d.Insert({Control(1.0, 0.0), Pose2()});
  EXPECT_EQ(d.Insert({Control(1.2, 0.0), Pose2()}), 0);
  EXPECT_EQ(d.size(), 2u);
}

TEST(Dataset, ThreeNearDuplicatesShrinkByTwo) {
  Dataset d(0.1);
  for (int k = 0; k < 3; ++k) {
    const double t = kTwoPi * k / 3;
    d.Insert({Control(1.0 + 0.09 * std::cos(t), 0.09 * std::sin(t)), Pose2()});
  }
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d.Insert({Control(1.0, 0.0), Pose2()}), 3);
  EXPECT_EQ(d.size(), 1u);
}

TEST(Dataset, EpsilonSeparationUnderRandomStreams) {
  Rng rng(7);
  for (int stream = 0; stream < 20; ++stream) {
    Dataset d(0.1);
    for (int i = 0; i < 200; ++i) {
      // Cluster half the draws to force replacements.
      const double a = i % 2 ? rng.Uniform(0, kTwoPi) : rng.Uniform(1.0, 1.3);
      d.Insert({Control(a, rng.Uniform(-0.2, 0.2)), Pose2()});
      ASSERT_GE(d.MinSeparation(), 0.1);
    }
  }
}

TEST(TransitionModels, EmptyDatasetRejected) {
  EXPECT_THROW(TransitionModels::Fit(Dataset(0.1), ModelConfig()),
               std::invalid_argument);
}

TEST(TransitionModels, InverseInterpolatesTrainingMotions) {
  ModelConfig c;
  c.inverse_noise_std = {1e-6, 1e-6, 1e-6};
  const TransitionModels m =
      TransitionModels::Fit(GridDataset(12, {-0.15, 0.0, 0.15}), c);
  for (const auto& s : m.dataset().samples()) {
    bool fb = true;
    const Control u = m.PredictInverse(s.motion, &fb);
    EXPECT_FALSE(fb);
    EXPECT_LT(std::abs(WrapAngle(u.alpha() - s.control.alpha())), 1e-3);
    EXPECT_LT(std::abs(u.beta() - s.control.beta()), 1e-3);
  }
}

TEST(TransitionModels, ForwardInterpolatesTrainingControls) {
  ModelConfig c;
  c.forward_noise_std = {1e-7, 1e-7, 1e-7};
  const TransitionModels m =
      TransitionModels::Fit(GridDataset(12, {-0.15, 0.0, 0.15}), c);
  for (const auto& s : m.dataset().samples()) {
    const Pose2 g = m.PredictForward(s.control);
    EXPECT_NEAR(g.x(), s.motion.x(), 1e-5);
    EXPECT_NEAR(g.y(), s.motion.y(), 1e-5);
    EXPECT_NEAR(g.theta(), s.motion.theta(), 1e-4);
  }
}

TEST(TransitionModels, DegenerateDirectionFallsBackToNearestMotion) {
  Dataset d(0.1);
  d.Insert({Control(0.0, 0.0), Pose2(-0.01, 0, 0)});
  d.Insert({Control(kPi, 0.0), Pose2(0.01, 0, 0)});
  const TransitionModels m = TransitionModels::Fit(d, ModelConfig());
  bool fb = false;
  const Control u = m.PredictInverse(Pose2(0, 0.005, 0), &fb);
  EXPECT_TRUE(fb);
  EXPECT_EQ(u.alpha(), 0.0);
  // A query well off the symmetry axis is informative.
  const Control v = m.PredictInverse(Pose2(0.008, 0, 0), &fb);
  EXPECT_FALSE(fb);
  EXPECT_LT(std::abs(WrapAngle(v.alpha() - kPi)), 0.5);
}

TEST(TransitionModels, FarQueryIsClampedIntoEnvelope) {
  const TransitionModels m =
      TransitionModels::Fit(GridDataset(8, {0.0}), ModelConfig());
  const Pose2 far(-1.0, 0.0, 3.0);
  const Pose2 c = m.ClampToEnvelope(far);
  EXPECT_NEAR(std::hypot(c.x(), c.y()), 0.01, 1e-12);
  EXPECT_NEAR(c.theta(), 0.3, 1e-12);
  // In-range queries are untouched.
  const Pose2 in(0.001, -0.002, 0.1);
  EXPECT_EQ(m.ClampToEnvelope(in), in);
  // The far request lands between the pure-translation and the
  // pure-rotation controls that bound it.
  const double a = WrapAngle(m.PredictInverse(far).alpha());
  EXPECT_GT(a, -0.2);
  EXPECT_LT(a, kPi / 2 + 0.2);
}

TEST(TransitionModels, RoundTripIsNotClosed) {
  Rng rng(3);
  Plant plant(BuiltinShape("square_block"),
              PlantParams::DefaultsFor(BuiltinShape("square_block")), {});
  const TransitionModels m = LearnModels(plant, Pose2(), 10, rng, ModelConfig());
  const Control u(0.7, 0.12);
  const Control back = m.PredictInverse(m.PredictForward(u));
  EXPECT_FALSE(back == u);
  EXPECT_GT(ControlDistance(back, u), 1e-6);
}

TEST(TransitionModels, UpdateReplacesAndRefits) {
  const TransitionModels m =
      TransitionModels::Fit(GridDataset(6, {0.0}), ModelConfig());
  const Pose2 x_t(0.3, -0.2, 1.0);
  const Pose2 motion(0.004, 0.001, -0.05);
  const TransitionModels next =
      UpdateModels(m, Control(0.0, 0.0), x_t, x_t * motion);
  EXPECT_EQ(next.dataset().size(), m.dataset().size());
  const Pose2 stored = next.dataset().samples().back().motion;
  EXPECT_NEAR(stored.x(), motion.x(), 1e-12);
  EXPECT_NEAR(stored.y(), motion.y(), 1e-12);
  EXPECT_NEAR(stored.theta(), motion.theta(), 1e-12);
  // The original value is untouched.
  EXPECT_EQ(m.dataset().samples().front().motion,
            SyntheticMotion(Control(0.0, 0.0)));
}

TEST(TransitionModels, JsonRoundTrip) {
  ModelConfig c;
  c.forward_lengthscales = {0.4, 0.4, 0.2};
  const TransitionModels m = TransitionModels::Fit(GridDataset(10, {-0.1, 0.1}), c);
  const TransitionModels r = ModelsFromJson(ModelsToJson(m));
  ASSERT_EQ(r.dataset().size(), m.dataset().size());
  EXPECT_EQ(r.config().forward_lengthscales, c.forward_lengthscales);
  EXPECT_EQ(r.dataset().epsilon(), m.dataset().epsilon());
  EXPECT_EQ(r.dataset().samples().back().control,
            m.dataset().samples().back().control);
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    const Control u(rng.Uniform(0, kTwoPi), rng.Uniform(-0.2, 0.2));
    const Pose2 a = m.PredictForward(u);
    const Pose2 b = r.PredictForward(u);
    EXPECT_NEAR(a.x(), b.x(), 1e-12);
    EXPECT_NEAR(a.theta(), b.theta(), 1e-12);
  }
  EXPECT_THROW(ModelsFromJson("{\"format\": \"other\"}"), std::invalid_argument);
  EXPECT_THROW(LoadModels("/nonexistent/model.json"), std::invalid_argument);
}

class LearnModelsTest : public ::testing::Test {
 protected:
  Plant plant_{BuiltinShape("cylinder_x"),
               PlantParams::DefaultsFor(BuiltinShape("cylinder_x")), {}};
};

TEST_F(LearnModelsTest, TenPushesOnCylinder) {
  Rng rng(0);
  const TransitionModels m = LearnModels(plant_, Pose2(), 10, rng, ModelConfig());
  EXPECT_EQ(m.dataset().size(), 10u);
  for (const auto& s : m.dataset().samples()) {
    EXPECT_GE(s.control.alpha(), 0.0);
    EXPECT_LT(s.control.alpha(), kTwoPi);
    EXPECT_LE(std::abs(s.control.beta()), Control::kBetaMax);
  }
}

TEST_F(LearnModelsTest, SinglePushReproducesObservedMotion) {
  Rng rng(1);
  const TransitionModels m = LearnModels(plant_, Pose2(), 1, rng, ModelConfig());
  ASSERT_EQ(m.dataset().size(), 1u);
  const MotionSample& s = m.dataset().samples()[0];
  const Pose2 g = m.PredictForward(s.control);
  EXPECT_DOUBLE_EQ(g.x(), s.motion.x());
  EXPECT_DOUBLE_EQ(g.y(), s.motion.y());
  EXPECT_DOUBLE_EQ(g.theta(), s.motion.theta());
  EXPECT_NO_THROW(m.PredictInverse(Pose2(-0.01, 0, 0)));
}

TEST_F(LearnModelsTest, FiftyPushesStaySeparated) {
  Rng rng(2);
  const TransitionModels m = LearnModels(plant_, Pose2(), 50, rng, ModelConfig());
  EXPECT_LE(m.dataset().size(), 50u);
  EXPECT_GE(m.dataset().MinSeparation(), 0.1);
  EXPECT_THROW(LearnModels(plant_, Pose2(), 0, rng, ModelConfig()),
               std::invalid_argument);
}

}  // namespace
}  // namespace unopush
