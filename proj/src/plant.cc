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

#include "unopush/plant.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace unopush {
namespace {

constexpr double kContactSlack = 1e-9;
constexpr double kPenetrationTol = 1e-11;
constexpr int kMaxProjectionIters = 50;

// Penetration depth of the pusher disc into the object (positive = overlap)
// together with the contact, both in the object's frame.
struct Overlap {
  double depth;
  Contact contact;
};

Overlap ComputeOverlap(const PolygonShape& shape, const Vec2& p, double r_p) {
  const auto& v = shape.vertices();
  const size_t n = v.size();
  Vec2 best;
  size_t best_edge = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = v[i];
    const Vec2 ab = v[(i + 1) % n] - a;
    const double t = std::clamp((p - a).Dot(ab) / ab.Dot(ab), 0.0, 1.0);
    const Vec2 q = a + ab * t;
    const Vec2 diff = q - p;
    const double d2 = diff.Dot(diff);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = q;
      best_edge = i;
    }
  }
  const double dist = std::sqrt(best_d2);
  const bool inside = shape.Contains(p);
  Vec2 normal;
  if (dist < 1e-12) {
    const Vec2 e = (v[(best_edge + 1) % n] - v[best_edge]).Normalized();
    normal = {-e.y, e.x};
  } else {
    normal = inside ? (p - best) * (1.0 / dist) : (best - p) * (1.0 / dist);
  }
  const double separation = inside ? -dist : dist;
  return {r_p - separation, {best, normal}};
}

}  // namespace

PlantParams PlantParams::DefaultsFor(const PolygonShape& shape) {
  PlantParams p;
  p.virtual_circle_R = shape.Circumradius() + 0.04;
  return p;
}

void PlantParams::Validate(const PolygonShape& shape) const {
  auto fail = [](const std::string& what) {
    throw std::invalid_argument("invalid plant params: " + what);
  };
  if (!(limit_surface_c > 0.0)) fail("limit_surface_c must be > 0");
  if (!(contact_friction_mu >= 0.0)) fail("contact_friction_mu must be >= 0");
  if (!(pusher_radius > 0.0)) fail("pusher_radius must be > 0");
  if (!(integration_step > 0.0)) fail("integration_step must be > 0");
  if (!(motion_epsilon > 0.0)) fail("motion_epsilon must be > 0");
  if (!(push_distance_d > 0.0)) fail("push_distance_d must be > 0");
  if (!(virtual_circle_R > shape.Circumradius() + pusher_radius)) {
    fail("virtual_circle_R must exceed circumradius + pusher_radius");
  }
  if (disturbance) {
    if (!(disturbance->trans_mag >= 0.0) || !(disturbance->rot_mag >= 0.0)) {
      fail("disturbance magnitudes must be >= 0");
    }
    if (!(disturbance->probability >= 0.0 && disturbance->probability <= 1.0)) {
      fail("disturbance probability must lie in [0, 1]");
    }
  }
}

std::optional<Contact> ContactQuery(const PolygonShape& shape,
                                    const Pose2& pose, const Vec2& pusher,
                                    double r_p) {
  const Vec2 p = pose.InverseTransformPoint(pusher);
  const Overlap o = ComputeOverlap(shape, p, r_p);
  if (o.depth < -kContactSlack) return std::nullopt;
  return o.contact;
}

std::optional<BodyTwist> QuasiStaticTwist(const Contact& contact,
                                          const Vec2& velocity,
                                          const PlantParams& params) {
  const Vec2& n = contact.normal;
  const double un = velocity.Dot(n);
  if (!(un > 1e-12)) return std::nullopt;

  const double xc = contact.point.x;
  const double yc = contact.point.y;
  const double c2 = params.limit_surface_c * params.limit_surface_c;
  const double ux = velocity.x;
  const double uy = velocity.y;

  const double den = c2 + xc * xc + yc * yc;
  BodyTwist t;
  t.vx = ((c2 + xc * xc) * ux + xc * yc * uy) / den;
  t.vy = (xc * yc * ux + (c2 + yc * yc) * uy) / den;
  t.omega = (xc * t.vy - yc * t.vx) / c2;
  t.mode = ContactMode::kStick;

  // The limit surface gradient maps the contact force f to a twist
  // proportional to (f_x, f_y, m / c^2), so (vx, vy) is the force direction.
  const Vec2 f{t.vx, t.vy};
  const double f_normal = f.Dot(n);
  const double f_tangent = n.Cross(f);
  const double mu = params.contact_friction_mu;
  if (f_normal > 0.0 && std::abs(f_tangent) <= mu * f_normal) return t;

  const double edge = f_tangent >= 0.0 ? std::atan(mu) : -std::atan(mu);
  const Vec2 fe = n.Rotated(edge);
  const double m = xc * fe.y - yc * fe.x;
  BodyTwist s{fe.x, fe.y, m / c2, ContactMode::kSlide};
  const Vec2 contact_velocity{s.vx - s.omega * yc, s.vy + s.omega * xc};
  const double vn = contact_velocity.Dot(n);
  if (!(vn > 1e-15)) return std::nullopt;
  const double k = un / vn;
  s.vx *= k;
  s.vy *= k;
  s.omega *= k;
  return s;
}

PushOutcome ExecutePush(const PolygonShape& shape, const PlantState& state,
                        const Vec2& start, const Vec2& direction,
                        const PlantParams& params, Rng& rng) {
  const Pose2& x0 = state.object_pose;
  const double r_p = params.pusher_radius;
  Vec2 p = x0.InverseTransformPoint(start);
  const Vec2 u = x0.InverseTransformVector(direction).Normalized();
  if (ComputeOverlap(shape, p, r_p).depth > 1e-6) {
    throw std::invalid_argument("push start point overlaps the object");
  }

  // Object pose relative to its pose at push start.
  Pose2 g;
  const double h = params.integration_step;
  const double d = params.push_distance_d;
  const double max_travel = 4.0 * params.virtual_circle_R;
  double total = 0.0;
  double counted = 0.0;
  double moved = 0.0;
  bool detected = false;

  while (total < max_travel) {
    double step = std::min(h, max_travel - total);
    if (detected) step = std::min(step, d - counted);
    p = p + u * step;
    total += step;

    const double moved_before = moved;
    for (int it = 0; it < kMaxProjectionIters; ++it) {
      const Vec2 p_obj = g.InverseTransformPoint(p);
      const Overlap o = ComputeOverlap(shape, p_obj, r_p);
      if (o.depth <= kPenetrationTol) break;
      const Vec2 u_obj = g.InverseTransformVector(u);
      const auto twist = QuasiStaticTwist(o.contact, u_obj, params);
      if (!twist) break;
      // The twist moves the contact point along the normal at rate u.n per
      // unit pusher travel.
      const double s = o.depth / u_obj.Dot(o.contact.normal);
      const Pose2 inc = ExpTwist(s * twist->vx, s * twist->vy, s * twist->omega);
      g = g.Compose(inc);
      moved += std::hypot(inc.x(), inc.y());
    }

    if (detected) {
      counted += step;
    } else if (moved > params.motion_epsilon) {
      detected = true;
      // Credit the part of this step travelled after the threshold crossing.
      const double inc = moved - moved_before;
      const double frac = inc > 0.0 ? (moved - params.motion_epsilon) / inc : 0.0;
      counted = step * std::clamp(frac, 0.0, 1.0);
    }
    if (detected && counted >= d - 1e-12) break;
  }

  PushOutcome out;
  out.miss = !detected;
  out.total_travel = total;
  out.counted_travel = counted;
  Pose2 final_pose = x0.Compose(g);
  if (params.disturbance && params.disturbance->probability > 0.0 &&
      rng.Uniform01() < params.disturbance->probability) {
    final_pose = final_pose.Compose(SamplePerturbation(
        rng, params.disturbance->trans_mag, params.disturbance->rot_mag));
    out.disturbed = true;
  }

  // p is in the push-start body frame; express it in the spatial frame.
  Vec2 pusher = x0.TransformPoint(p);
  if (out.disturbed) {
    // The kick may shove the object into the pusher; back the pusher off
    // along the push line until the disc is clear.
    const Vec2 back = -direction.Normalized();
    for (int i = 0; i < 10000; ++i) {
      const Overlap o = ComputeOverlap(
          shape, final_pose.InverseTransformPoint(pusher), r_p);
      if (o.depth <= 0.0) break;
      pusher = pusher + back * std::max(o.depth, 1e-5);
    }
  }
  out.state.object_pose = final_pose;
  out.state.pusher_position = pusher;
  return out;
}

Plant::Plant(PolygonShape shape, PlantParams params, PlantState state)
    : shape_(std::move(shape)), params_(params), state_(state) {
  params_.Validate(shape_);
}

void Plant::Reset(const Pose2& pose) {
  state_.object_pose = pose;
  state_.pusher_position =
      pose.TransformPoint({params_.virtual_circle_R + params_.pusher_radius, 0.0});
}

PushOutcome Plant::Push(const Vec2& start, const Vec2& direction, Rng& rng) {
  PushOutcome out = ExecutePush(shape_, state_, start, direction, params_, rng);
  state_ = out.state;
  return out;
}

}  // namespace unopush
