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

// Quasi-static single-point pusher-slider simulator. Objects slide on a
// plane with an ellipsoidal limit surface centered on the body-frame origin;
// the pusher is a disc that moves along straight lines.

#ifndef UNOPUSH_PLANT_H_
#define UNOPUSH_PLANT_H_

#include <optional>

#include "unopush/random.h"
#include "unopush/se2.h"
#include "unopush/shape.h"

namespace unopush {

// Random pose kick applied to the object after a push.
struct Disturbance {
  double trans_mag = 0.005;
  double rot_mag = 0.05;
  double probability = 0.2;
};

struct PlantParams {
  double limit_surface_c = 0.05;
  double contact_friction_mu = 0.3;
  double pusher_radius = 0.008;
  double integration_step = 0.0005;
  double motion_epsilon = 0.0002;
  double push_distance_d = 0.01;
  double virtual_circle_R = 0.08;
  std::optional<Disturbance> disturbance;

  // Defaults with virtual_circle_R = circumradius + 0.04.
  static PlantParams DefaultsFor(const PolygonShape& shape);

  // Throws std::invalid_argument on a violated invariant.
  void Validate(const PolygonShape& shape) const;
};

struct PlantState {
  Pose2 object_pose;
  Vec2 pusher_position;
};

struct Contact {
  Vec2 point;   // body frame, on the polygon boundary
  Vec2 normal;  // body frame, unit, pointing into the object
};

// Closest boundary point to a pusher disc of radius r_p centered at `pusher`
// (spatial frame) when the disc touches or overlaps the object.
std::optional<Contact> ContactQuery(const PolygonShape& shape,
                                    const Pose2& pose, const Vec2& pusher,
                                    double r_p);

enum class ContactMode { kStick, kSlide };

// Object twist in the body frame, per unit of pusher travel when the pusher
// velocity is a unit vector.
struct BodyTwist {
  double vx = 0.0;
  double vy = 0.0;
  double omega = 0.0;
  ContactMode mode = ContactMode::kStick;
};

// Quasi-static object twist for a pusher moving with `velocity` (body frame)
// against `contact`. Sticking solution of the ellipsoidal limit surface; when
// the implied force leaves the friction cone the force is put on the nearer
// cone edge and the twist rescaled so that the normal velocity of the contact
// point matches the pusher. Returns nullopt if the velocity does not press
// into the object.
std::optional<BodyTwist> QuasiStaticTwist(const Contact& contact,
                                          const Vec2& velocity,
                                          const PlantParams& params);

struct PushOutcome {
  PlantState state;
  // Object never moved beyond motion_epsilon; state is unchanged apart from
  // the pusher position.
  bool miss = false;
  bool disturbed = false;
  double counted_travel = 0.0;
  double total_travel = 0.0;
};

// Moves the pusher to `start` (spatial) and advances it along `direction`
// until it has travelled push_distance_d after the object first moved, or
// 4 * virtual_circle_R in total. Integration happens in the object's
// body frame at push start, so the resulting body motion does not depend on
// the spatial pose. Throws std::invalid_argument if `start` overlaps the
// object.
PushOutcome ExecutePush(const PolygonShape& shape, const PlantState& state,
                        const Vec2& start, const Vec2& direction,
                        const PlantParams& params, Rng& rng);

// Mutable simulator instance holding ground-truth state.
class Plant {
 public:
  Plant(PolygonShape shape, PlantParams params, PlantState state);

  const PolygonShape& shape() const { return shape_; }
  const PlantParams& params() const { return params_; }
  const PlantState& state() const { return state_; }
  void set_state(const PlantState& state) { state_ = state; }
  // Places the object at `pose` with the pusher parked outside the virtual
  // circle.
  void Reset(const Pose2& pose);

  PushOutcome Push(const Vec2& start, const Vec2& direction, Rng& rng);

 private:
  PolygonShape shape_;
  PlantParams params_;
  PlantState state_;
};

}  // namespace unopush

#endif  // UNOPUSH_PLANT_H_
