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

#include "unopush/se2.h"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace unopush {

double WrapAngle(double theta) {
  double r = std::remainder(theta, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double Vec2::Norm() const { return std::hypot(x, y); }

Vec2 Vec2::Normalized() const {
  const double n = Norm();
  return n > 0.0 ? Vec2{x / n, y / n} : Vec2{};
}

Vec2 Vec2::Rotated(double angle) const {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * x - s * y, s * x + c * y};
}

Pose2 Pose2::Compose(const Pose2& other) const {
  const double c = std::cos(theta_);
  const double s = std::sin(theta_);
  return {x_ + c * other.x_ - s * other.y_, y_ + s * other.x_ + c * other.y_,
          theta_ + other.theta_};
}

Pose2 Pose2::Inverse() const {
  const double c = std::cos(theta_);
  const double s = std::sin(theta_);
  return {-c * x_ - s * y_, s * x_ - c * y_, -theta_};
}

Vec2 Pose2::TransformPoint(const Vec2& p) const {
  return TransformVector(p) + Vec2{x_, y_};
}

Vec2 Pose2::TransformVector(const Vec2& v) const {
  const double c = std::cos(theta_);
  const double s = std::sin(theta_);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

Vec2 Pose2::InverseTransformPoint(const Vec2& p) const {
  return InverseTransformVector(p - Vec2{x_, y_});
}

Vec2 Pose2::InverseTransformVector(const Vec2& v) const {
  const double c = std::cos(theta_);
  const double s = std::sin(theta_);
  return {c * v.x + s * v.y, -s * v.x + c * v.y};
}

std::string Pose2::ToString() const {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "(%.6f, %.6f, %.6f)", x_, y_, theta_);
  return buf;
}

Pose2 RelativeMotion(const Pose2& from, const Pose2& to) {
  return from.Inverse().Compose(to);
}

void DistanceWeights::Validate() const {
  if (!(w_pos > 0.0) || !(w_rot >= 0.0)) {
    throw std::invalid_argument("distance weights require w_pos > 0, w_rot >= 0");
  }
}

double Distance(const Pose2& a, const Pose2& b, const DistanceWeights& w) {
  return w.w_pos * std::hypot(a.x() - b.x(), a.y() - b.y()) +
         w.w_rot * std::abs(WrapAngle(a.theta() - b.theta()));
}

Pose2 SamplePerturbation(Rng& rng, double trans_mag, double rot_mag) {
  // Always consume three draws so stream alignment does not depend on the
  // magnitudes.
  const double radius = trans_mag * std::sqrt(rng.Uniform01());
  const double phi = rng.Uniform(0.0, kTwoPi);
  const double rot = rng.Uniform(-rot_mag, rot_mag);
  return {radius * std::cos(phi), radius * std::sin(phi), rot};
}

Pose2 ExpTwist(double vx, double vy, double omega) {
  if (std::abs(omega) < 1e-9) {
    // Second-order series of the closed form below.
    const double half = 0.5 * omega;
    return {vx - half * vy, vy + half * vx, omega};
  }
  const double s = std::sin(omega);
  const double c = std::cos(omega);
  const double a = s / omega;
  const double b = (1.0 - c) / omega;
  return {a * vx - b * vy, b * vx + a * vy, omega};
}

}  // namespace unopush
