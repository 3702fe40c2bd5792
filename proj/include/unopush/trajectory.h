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

#ifndef UNOPUSH_TRAJECTORY_H_
#define UNOPUSH_TRAJECTORY_H_

#include <vector>

#include "unopush/mpc.h"
#include "unopush/se2.h"

namespace unopush {

// M waypoints equally spaced counter-clockwise on a circle, starting at
// angle 0, headings tangent to the path.
ReferenceTrajectory GenCircle(double radius, int m, Vec2 center = {});

// Distributes m waypoints by arc length along a polyline. Every vertex is a
// waypoint; each segment receives waypoints in proportion to its length.
// A closed polyline also runs from the last vertex back to the first but
// does not repeat the first vertex; an open one ends on its last vertex.
// Headings follow the segment each waypoint lies on. Throws
// std::invalid_argument if m is too small to place every vertex.
ReferenceTrajectory ResamplePolyline(const std::vector<Vec2>& vertices, int m,
                                     bool closed);

// Axis-aligned square centered on the origin traversed counter-clockwise
// from the corner (-side/2, -side/2).
ReferenceTrajectory GenSquare(double side, int m);

// Built-in vertex path of letter R, I, C or E with height `scale`.
std::vector<Vec2> LetterPolyline(char id, double scale);
ReferenceTrajectory GenLetter(char id, double scale, int m);

double PointToSegmentDistance(const Vec2& p, const Vec2& a, const Vec2& b);

// Distance from p to the polyline through the waypoint positions.
double DistanceToPolyline(const Vec2& p, const ReferenceTrajectory& traj);

// Mean positional distance of the poses to the waypoint polyline, in mm.
double ComputeMaeMm(const std::vector<Pose2>& poses,
                    const ReferenceTrajectory& traj);

}  // namespace unopush

#endif  // UNOPUSH_TRAJECTORY_H_
