// Copyright 2026 The graspsim Authors
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

#include "graspsim/perception.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "graspsim/error.hpp"

namespace graspsim
{

namespace
{

Point3 project_onto(const LineModel & line, const Point3 & q)
{
  const Point3 flat{q.x, q.y, 0.0};
  return line.support_a + line.direction * (flat - line.support_a).dot(line.direction);
}

bool same_line(const LineModel & a, const LineModel & b)
{
  const double turn = std::abs(a.direction.cross(b.direction).z);
  const double shift = std::abs(xy_distance(a, b.support_a));
  return turn < 1e-12 && shift < 1e-10;
}

// Value at fraction q of the sorted sample (nearest rank).
double quantile(std::vector<double> values, double q)
{
  const auto k = static_cast<std::size_t>(q * static_cast<double>(values.size() - 1) + 0.5);
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k), values.end());
  return values[k];
}

// Door trace x = a + b * y in the XY projection. Least squares over the
// points near the median depth, then once more around the first fit, so a
// small leftover yaw does not read as protrusion at the door's near side.
// A bar point needs this many other bar points within the lateral window.
constexpr double kBarNeighbourhood = 0.03;
constexpr std::size_t kBarMinNeighbours = 2;

struct DoorLine
{
  double a{0.0};
  double b{0.0};

  double x_at(double y) const {return a + b * y;}
};

DoorLine fit_door_line(const PointCloud & roi)
{
  std::vector<double> xs;
  xs.reserve(roi.size());
  for (const auto & p : roi) {
    xs.push_back(p.x);
  }
  DoorLine line{quantile(xs, 0.5), 0.0};
  for (const double band : {0.02, 0.01}) {
    double n = 0.0;
    double sy = 0.0;
    double sx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (const auto & p : roi) {
      if (std::abs(p.x - line.x_at(p.y)) <= band) {
        n += 1.0;
        sy += p.y;
        sx += p.x;
        syy += p.y * p.y;
        sxy += p.x * p.y;
      }
    }
    const double var_y = n * syy - sy * sy;
    if (n < 3.0 || var_y <= 1e-12 * n * n) {
      break;
    }
    line.b = (n * sxy - sx * sy) / var_y;
    line.a = (sx - line.b * sy) / n;
  }
  return line;
}

}  // namespace

void RoiLimits::validate() const
{
  if (!(min_x < max_x && min_y < max_y && min_z < max_z)) {
    throw Error(ErrorCode::kConfig, "roi: every min must be < its max");
  }
}

PointCloud crop_roi(const PointCloud & cloud, const RoiLimits & limits)
{
  PointCloud out;
  out.reserve(cloud.size());
  std::copy_if(cloud.begin(), cloud.end(), std::back_inserter(out),
      [&limits](const Point3 & p) {return limits.contains(p);});
  return out;
}

std::vector<std::size_t> line_of_sight(const PointCloud & cloud, double bin_deg)
{
  const double bin = deg2rad(bin_deg);
  std::map<long, std::size_t> nearest;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Point3 & p = cloud[i];
    const double range = std::hypot(p.x, p.y);
    if (range == 0.0) {
      continue;
    }
    const long key = static_cast<long>(std::floor(std::atan2(p.y, p.x) / bin));
    auto [it, inserted] = nearest.emplace(key, i);
    if (!inserted) {
      const Point3 & q = cloud[it->second];
      if (range < std::hypot(q.x, q.y)) {
        it->second = i;
      }
    }
  }
  std::vector<std::size_t> out;
  out.reserve(nearest.size());
  for (const auto & [key, index] : nearest) {
    out.push_back(index);
  }
  return out;
}

EdgeEstimate estimate_edge(
  const PointCloud & cloud, const RansacParams & params, const EdgeOptions & options)
{
  const auto sight = line_of_sight(cloud, options.bearing_bin_deg);
  PointCloud visible;
  visible.reserve(sight.size());
  for (const std::size_t i : sight) {
    visible.push_back(cloud[i]);
  }
  const FitResult fit = fit_line(visible, params);

  // Nearest-per-bearing points are biased toward the robot by the noise
  // minimum; the full cloud around the consensus line is not.
  LineModel line = fit.model;
  const double window = options.refine_window_factor * params.inlier_threshold;
  for (int k = 0; k < options.max_refine_iterations; ++k) {
    const auto near = collect_inliers(cloud, line, window);
    if (near.size() < 2 * params.sample_size) {
      break;
    }
    const LineModel next = fit_total_least_squares(cloud, near);
    const bool converged = same_line(line, next);
    line = next;
    if (converged) {
      break;
    }
  }
  const auto inliers = collect_inliers(cloud, line, params.inlier_threshold);
  if (inliers.size() < 2 * params.sample_size) {
    throw Error(ErrorCode::kNoConsensus,
                "estimate_edge: refined edge keeps only " + std::to_string(inliers.size()) +
                " inliers");
  }
  line = fit_total_least_squares(cloud, inliers);

  EdgeEstimate edge;
  edge.line = line;
  edge.inlier_count = inliers.size();
  edge.omega = kPi / 2.0 - angle_to_frontal_normal(line.direction);

  LineModel segment = line;
  segment.extreme_points = {
    project_onto(line, line.extreme_points[0]),
    project_onto(line, line.extreme_points[1])};
  const LineModel corrected = rotate_line_z(segment, edge.omega);
  edge.standoff_distance =
    0.5 * (corrected.extreme_points[0].x + corrected.extreme_points[1].x);
  return edge;
}

PoseDelta pose_correction(const EdgeEstimate & edge, double target_standoff)
{
  return {-edge.omega, edge.standoff_distance - target_standoff};
}

HandleEstimate detect_handle(
  const PointCloud & cloud, const RoiLimits & limits, double protrusion_min)
{
  const PointCloud roi = crop_roi(cloud, limits);
  if (roi.empty()) {
    throw Error(ErrorCode::kEmptyCloud, "detect_handle: no points inside the ROI");
  }
  const auto closest = std::min_element(
    roi.begin(), roi.end(), [](const Point3 & a, const Point3 & b) {return a.x < b.x;});

  const DoorLine door = fit_door_line(roi);
  HandleEstimate est;
  est.position = *closest;
  est.margin = door.x_at(closest->y) - closest->x;
  if (est.margin < protrusion_min) {
    throw Error(ErrorCode::kLowMargin,
                "detect_handle: closest point only " + std::to_string(est.margin) +
                " m in front of the door plane");
  }

  // Points more than half the margin in front of the door belong to the bar.
  // The end caps bound it laterally, so its y extent is the tightest lateral
  // estimate; points without bar neighbours are stray door noise and do not
  // count toward the extent.
  const double half = 0.5 * est.margin;
  std::vector<double> ys;
  std::vector<double> zs;
  for (const auto & p : roi) {
    if (door.x_at(p.y) - p.x > half) {
      ys.push_back(p.y);
      zs.push_back(p.z);
    }
  }
  std::sort(ys.begin(), ys.end());
  double y_lo = closest->y;
  double y_hi = closest->y;
  std::size_t first = 0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    while (ys[i] - ys[first] > kBarNeighbourhood) {
      ++first;
    }
    while (last + 1 < ys.size() && ys[last + 1] - ys[i] <= kBarNeighbourhood) {
      ++last;
    }
    if (last - first >= kBarMinNeighbours) {
      y_lo = std::min(y_lo, ys[i]);
      y_hi = std::max(y_hi, ys[i]);
    }
  }
  const double y_mid = 0.5 * (y_lo + y_hi);
  est.grasp_center = {door.x_at(y_mid) - half, y_mid, quantile(zs, 0.5)};
  return est;
}

}  // namespace graspsim
