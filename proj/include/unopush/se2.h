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

#ifndef UNOPUSH_SE2_H_
#define UNOPUSH_SE2_H_

#include <numbers>
#include <string>

#include "unopush/random.h"

namespace unopush {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Maps any finite angle into (-pi, pi].
double WrapAngle(double theta);

// Planar vector / point in meters.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator-() const { return {-x, -y}; }
  bool operator==(const Vec2&) const = default;

  double Dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double Cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double Norm() const;
  Vec2 Normalized() const;
  Vec2 Rotated(double angle) const;
};

// Element of SE(2): position (x, y) in meters and heading theta in radians.
// The heading is kept normalized to (-pi, pi] by every constructor and
// operation; the stored triple is the only representation.
class Pose2 {
 public:
  Pose2() = default;
  Pose2(double x, double y, double theta)
      : x_(x), y_(y), theta_(WrapAngle(theta)) {}

  static Pose2 Identity() { return {}; }

  double x() const { return x_; }
  double y() const { return y_; }
  double theta() const { return theta_; }
  Vec2 translation() const { return {x_, y_}; }

  // this * other, i.e. the product of the homogeneous matrices.
  Pose2 Compose(const Pose2& other) const;
  Pose2 Inverse() const;

  // Maps a point expressed in this frame into the parent frame.
  Vec2 TransformPoint(const Vec2& p) const;
  // Maps a free vector (no translation) into the parent frame.
  Vec2 TransformVector(const Vec2& v) const;
  Vec2 InverseTransformPoint(const Vec2& p) const;
  Vec2 InverseTransformVector(const Vec2& v) const;

  bool operator==(const Pose2&) const = default;
  Pose2 operator*(const Pose2& other) const { return Compose(other); }

  std::string ToString() const;

 private:
  double x_ = 0.0;
  double y_ = 0.0;
  double theta_ = 0.0;
};

inline Pose2 Compose(const Pose2& a, const Pose2& b) { return a.Compose(b); }
inline Pose2 Inverse(const Pose2& a) { return a.Inverse(); }

// Body-frame motion taking `from` to `to`: from^-1 * to.
Pose2 RelativeMotion(const Pose2& from, const Pose2& to);

// Weights of the configuration distance. w_rot converts radians into a
// meter-equivalent.
struct DistanceWeights {
  double w_pos = 1.0;
  double w_rot = 0.05;

  // Throws std::invalid_argument unless w_pos > 0 and w_rot >= 0.
  void Validate() const;
};

// w_pos * |p_a - p_b| + w_rot * |wrap(theta_a - theta_b)|.
double Distance(const Pose2& a, const Pose2& b,
                const DistanceWeights& w = DistanceWeights{});

// Random rigid transformation: translation uniform on the disc of radius
// trans_mag, rotation uniform on [-rot_mag, rot_mag].
Pose2 SamplePerturbation(Rng& rng, double trans_mag, double rot_mag);

// Exponential map of a body twist (vx, vy, omega) integrated over unit time.
Pose2 ExpTwist(double vx, double vy, double omega);

}  // namespace unopush

#endif  // UNOPUSH_SE2_H_
