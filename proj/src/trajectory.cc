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

#include "unopush/trajectory.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace unopush {

ReferenceTrajectory GenCircle(double radius, int m, Vec2 center) {
  if (m < 1 || !(radius > 0.0)) {
    throw std::invalid_argument("circle needs radius > 0 and M >= 1");
  }
  std::vector<Pose2> w;
  w.reserve(m);
  for (int i = 0; i < m; ++i) {
    const double phi = kTwoPi * i / m;
    w.emplace_back(center.x + radius * std::cos(phi),
                   center.y + radius * std::sin(phi), phi + kPi / 2);
  }
  return ReferenceTrajectory(std::move(w));
}

ReferenceTrajectory ResamplePolyline(const std::vector<Vec2>& vertices, int m,
                                     bool closed) {
  const size_t nv = vertices.size();
  if (nv < 2) throw std::invalid_argument("polyline needs two vertices");
  const size_t nseg = closed ? nv : nv - 1;
  const int slots = closed ? m : m - 1;
  if (slots < static_cast<int>(nseg)) {
    throw std::invalid_argument("too few waypoints (" + std::to_string(m) +
                                ") to place every polyline vertex");
  }
  std::vector<double> len(nseg);
  for (size_t i = 0; i < nseg; ++i) {
    len[i] = (vertices[(i + 1) % nv] - vertices[i]).Norm();
    if (!(len[i] > 0.0)) throw std::invalid_argument("zero-length segment");
  }
  const double total = std::accumulate(len.begin(), len.end(), 0.0);

  // One waypoint per segment start, remaining slots by largest remainder.
  std::vector<int> count(nseg, 1);
  const int spare = slots - static_cast<int>(nseg);
  std::vector<double> remainder(nseg);
  int assigned = 0;
  for (size_t i = 0; i < nseg; ++i) {
    const double share = spare * len[i] / total;
    const int whole = static_cast<int>(std::floor(share));
    count[i] += whole;
    assigned += whole;
    remainder[i] = share - whole;
  }
  std::vector<size_t> order(nseg);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return remainder[a] > remainder[b];
  });
  for (int k = 0; k < spare - assigned; ++k) ++count[order[k]];

  std::vector<Pose2> w;
  w.reserve(m);
  for (size_t i = 0; i < nseg; ++i) {
    const Vec2& a = vertices[i];
    const Vec2& b = vertices[(i + 1) % nv];
    const Vec2 ab = b - a;
    const double heading = std::atan2(ab.y, ab.x);
    for (int k = 0; k < count[i]; ++k) {
      const Vec2 p = a + ab * (static_cast<double>(k) / count[i]);
      w.emplace_back(p.x, p.y, heading);
    }
  }
  if (!closed) {
    const Vec2 ab = vertices[nv - 1] - vertices[nv - 2];
    w.emplace_back(vertices[nv - 1].x, vertices[nv - 1].y,
                   std::atan2(ab.y, ab.x));
  }
  return ReferenceTrajectory(std::move(w));
}

ReferenceTrajectory GenSquare(double side, int m) {
  if (!(side > 0.0)) throw std::invalid_argument("square side must be > 0");
  const double h = 0.5 * side;
  return ResamplePolyline({{-h, -h}, {h, -h}, {h, h}, {-h, h}}, m, true);
}

std::vector<Vec2> LetterPolyline(char id, double s) {
  switch (id) {
    case 'I':
      return {{0, 0}, {0, s}, {0, 0.5 * s}};
    case 'C':
      return {{0.6 * s, s}, {0, s}, {0, 0}, {0.6 * s, 0}};
    case 'E':
      return {{0.6 * s, s},       {0, s},   {0, 0.5 * s}, {0.5 * s, 0.5 * s},
              {0, 0.5 * s},       {0, 0},   {0.6 * s, 0}};
    case 'R':
      return {{0, 0},       {0, s},       {0.5 * s, s},
              {0.5 * s, 0.5 * s}, {0, 0.5 * s}, {0.5 * s, 0}};
    default:
      throw std::invalid_argument(std::string("unknown letter: ") + id);
  }
}

ReferenceTrajectory GenLetter(char id, double scale, int m) {
  if (!(scale > 0.0)) throw std::invalid_argument("letter scale must be > 0");
  return ResamplePolyline(LetterPolyline(id, scale), m, false);
}

double PointToSegmentDistance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = ab.Dot(ab);
  const double t = len2 > 0.0 ? std::clamp((p - a).Dot(ab) / len2, 0.0, 1.0)
                              : 0.0;
  return (a + ab * t - p).Norm();
}

double DistanceToPolyline(const Vec2& p, const ReferenceTrajectory& traj) {
  if (traj.size() == 1) return (traj[0].translation() - p).Norm();
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < traj.size(); ++i) {
    best = std::min(best, PointToSegmentDistance(p, traj[i].translation(),
                                                 traj[i + 1].translation()));
  }
  return best;
}

double ComputeMaeMm(const std::vector<Pose2>& poses,
                    const ReferenceTrajectory& traj) {
  if (poses.empty()) throw std::invalid_argument("MAE needs at least one pose");
  double sum = 0.0;
  for (const Pose2& x : poses) sum += DistanceToPolyline(x.translation(), traj);
  return 1000.0 * sum / static_cast<double>(poses.size());
}

}  // namespace unopush
