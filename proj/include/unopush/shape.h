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

#ifndef UNOPUSH_SHAPE_H_
#define UNOPUSH_SHAPE_H_

#include <map>
#include <string>
#include <vector>

#include "unopush/se2.h"

namespace unopush {

// Simple polygon in the object body frame, vertices counter-clockwise.
class PolygonShape {
 public:
  PolygonShape() = default;
  // Throws std::invalid_argument when fewer than three vertices are given,
  // the polygon self-intersects, or its signed area is not positive.
  explicit PolygonShape(std::vector<Vec2> vertices);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  double SignedArea() const;
  Vec2 Centroid() const;
  // Largest vertex distance from the body-frame origin.
  double Circumradius() const;
  // Signed distance from p to the boundary; negative inside.
  double SignedDistance(const Vec2& p) const;
  bool Contains(const Vec2& p) const;
  // Closest boundary point to p.
  Vec2 ClosestBoundaryPoint(const Vec2& p) const;

 private:
  std::vector<Vec2> vertices_;
};

// Regular n-gon of the given circumradius centered on the origin.
PolygonShape RegularPolygon(int sides, double radius);

// cylinder_x, square_block, rectangle, l_shape, triangle.
const std::map<std::string, PolygonShape>& BuiltinShapes();
// Throws std::invalid_argument for unknown names.
const PolygonShape& BuiltinShape(const std::string& name);

// Reads {"vertices": [[x, y], ...]} (meters) from a JSON file.
PolygonShape LoadShapeFile(const std::string& path);

}  // namespace unopush

#endif  // UNOPUSH_SHAPE_H_
