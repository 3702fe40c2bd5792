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

#include "unopush/shape.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace unopush {
namespace {

Vec2 ClosestOnSegment(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.Dot(ab);
  if (len2 <= 0.0) return a;
  const double t = std::clamp((p - a).Dot(ab) / len2, 0.0, 1.0);
  return a + ab * t;
}

double Orientation(const Vec2& a, const Vec2& b, const Vec2& c) {
  return (b - a).Cross(c - a);
}

bool OnSegment(const Vec2& a, const Vec2& b, const Vec2& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool SegmentsIntersect(const Vec2& p1, const Vec2& p2, const Vec2& q1,
                       const Vec2& q2) {
  const double d1 = Orientation(q1, q2, p1);
  const double d2 = Orientation(q1, q2, p2);
  const double d3 = Orientation(p1, p2, q1);
  const double d4 = Orientation(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  if (d1 == 0 && OnSegment(q1, q2, p1)) return true;
  if (d2 == 0 && OnSegment(q1, q2, p2)) return true;
  if (d3 == 0 && OnSegment(p1, p2, q1)) return true;
  if (d4 == 0 && OnSegment(p1, p2, q2)) return true;
  return false;
}

}  // namespace

PolygonShape::PolygonShape(std::vector<Vec2> vertices)
    : vertices_(std::move(vertices)) {
  const size_t n = vertices_.size();
  if (n < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      if (SegmentsIntersect(vertices_[i], vertices_[(i + 1) % n], vertices_[j],
                            vertices_[(j + 1) % n])) {
        throw std::invalid_argument("polygon is self-intersecting");
      }
    }
  }
  if (!(SignedArea() > 0.0)) {
    throw std::invalid_argument("polygon must be counter-clockwise");
  }
  if (!(Circumradius() > 0.0)) {
    throw std::invalid_argument("polygon has zero circumradius");
  }
}

double PolygonShape::SignedArea() const {
  double twice = 0.0;
  for (size_t i = 0; i < vertices_.size(); ++i) {
    twice += vertices_[i].Cross(vertices_[(i + 1) % vertices_.size()]);
  }
  return 0.5 * twice;
}

Vec2 PolygonShape::Centroid() const {
  double cx = 0.0, cy = 0.0;
  for (size_t i = 0; i < vertices_.size(); ++i) {
    const Vec2& a = vertices_[i];
    const Vec2& b = vertices_[(i + 1) % vertices_.size()];
    const double w = a.Cross(b);
    cx += (a.x + b.x) * w;
    cy += (a.y + b.y) * w;
  }
  const double six_area = 6.0 * SignedArea();
  return {cx / six_area, cy / six_area};
}

double PolygonShape::Circumradius() const {
  double r = 0.0;
  for (const Vec2& v : vertices_) r = std::max(r, v.Norm());
  return r;
}

bool PolygonShape::Contains(const Vec2& p) const {
  // Crossing-number test.
  bool inside = false;
  const size_t n = vertices_.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = vertices_[i];
    const Vec2& b = vertices_[j];
    if ((a.y > p.y) != (b.y > p.y) &&
        p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
      inside = !inside;
    }
  }
  return inside;
}

Vec2 PolygonShape::ClosestBoundaryPoint(const Vec2& p) const {
  Vec2 best;
  double best_d2 = std::numeric_limits<double>::infinity();
  const size_t n = vertices_.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2 q = ClosestOnSegment(p, vertices_[i], vertices_[(i + 1) % n]);
    const Vec2 diff = q - p;
    const double d2 = diff.Dot(diff);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = q;
    }
  }
  return best;
}

double PolygonShape::SignedDistance(const Vec2& p) const {
  const double d = (ClosestBoundaryPoint(p) - p).Norm();
  return Contains(p) ? -d : d;
}

PolygonShape RegularPolygon(int sides, double radius) {
  std::vector<Vec2> v;
  v.reserve(sides);
  for (int i = 0; i < sides; ++i) {
    const double a = kTwoPi * i / sides;
    v.push_back({radius * std::cos(a), radius * std::sin(a)});
  }
  return PolygonShape(std::move(v));
}

const std::map<std::string, PolygonShape>& BuiltinShapes() {
  static const std::map<std::string, PolygonShape> shapes = [] {
    std::map<std::string, PolygonShape> m;
    m.emplace("cylinder_x", RegularPolygon(32, 0.04));
    m.emplace("square_block",
              PolygonShape({{-0.035, -0.035}, {0.035, -0.035},
                            {0.035, 0.035}, {-0.035, 0.035}}));
    m.emplace("rectangle", PolygonShape({{-0.05, -0.025}, {0.05, -0.025},
                                         {0.05, 0.025}, {-0.05, 0.025}}));
    // Body origin sits in the corner block, away from the area centroid.
    m.emplace("l_shape", PolygonShape({{-0.02, -0.02}, {0.06, -0.02},
                                       {0.06, 0.01}, {0.01, 0.01},
                                       {0.01, 0.06}, {-0.02, 0.06}}));
    const double r = 0.05;
    m.emplace("triangle",
              PolygonShape({{r * std::cos(kPi / 2), r * std::sin(kPi / 2)},
                            {r * std::cos(7 * kPi / 6), r * std::sin(7 * kPi / 6)},
                            {r * std::cos(11 * kPi / 6),
                             r * std::sin(11 * kPi / 6)}}));
    return m;
  }();
  return shapes;
}

const PolygonShape& BuiltinShape(const std::string& name) {
  const auto& shapes = BuiltinShapes();
  auto it = shapes.find(name);
  if (it == shapes.end()) {
    throw std::invalid_argument("unknown builtin shape: " + name);
  }
  return it->second;
}

PolygonShape LoadShapeFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open shape file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed shape file " + path + ": " + e.what());
  }
  if (!j.contains("vertices") || !j["vertices"].is_array()) {
    throw std::invalid_argument("shape file lacks a vertices array: " + path);
  }
  std::vector<Vec2> v;
  for (const auto& pair : j["vertices"]) {
    if (!pair.is_array() || pair.size() != 2) {
      throw std::invalid_argument("vertex entries must be [x, y] pairs");
    }
    v.push_back({pair[0].get<double>(), pair[1].get<double>()});
  }
  return PolygonShape(std::move(v));
}

}  // namespace unopush
