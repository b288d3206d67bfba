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

#ifndef GRASPSIM_PERCEPTION_HPP_
#define GRASPSIM_PERCEPTION_HPP_

#include <cstddef>
#include <vector>

#include "graspsim/geometry.hpp"
#include "graspsim/ransac.hpp"

namespace graspsim
{

/// Closed box in the robot frame.
struct RoiLimits
{
  double min_x{0.2};
  double max_x{1.2};
  double min_y{-0.5};
  double max_y{0.5};
  double min_z{0.05};
  double max_z{1.0};

  bool contains(const Point3 & p) const
  {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y &&
           p.z >= min_z && p.z <= max_z;
  }

  void validate() const;
};

struct EdgeOptions
{
  double bearing_bin_deg{0.5};
  // The consensus line is re-anchored on the full cloud: points within
  // refine_window_factor * MIN are refit until the line stops moving.
  double refine_window_factor{2.0};
  int max_refine_iterations{20};
};

struct EdgeEstimate
{
  double omega{0.0};  // signed edge angle w.r.t. the frontal plane, radians
  double standoff_distance{0.0};  // meters
  LineModel line;
  std::size_t inlier_count{0};
};

struct HandleEstimate
{
  Point3 position;  // p_c, the cloud point with the lowest x
  double margin{0.0};  // door trace x at p_c.y minus p_c.x
  Point3 grasp_center;  // estimated middle of the protruding bar
};

struct PoseDelta
{
  double rotate_by{0.0};  // radians
  double advance_by{0.0};  // meters along robot x
};

PointCloud crop_roi(const PointCloud & cloud, const RoiLimits & limits);

/// Indices of the nearest XY point per bearing bin (bearing from the robot origin).
std::vector<std::size_t> line_of_sight(const PointCloud & cloud, double bin_deg);

/**
 * @brief Fits the obstacle edge in the XY projection and derives the
 * orientation / distance correction.
 *
 * RANSAC runs on the line-of-sight subset; the consensus line is then refit
 * on every cloud point near it. omega = pi/2 - angle_to_frontal_normal(dir),
 * which is positive when the edge recedes toward +y. The standoff is the
 * mean x of the line's end points after rotating the line by R_Z(omega).
 *
 * Propagates Error(kInsufficientPoints) and Error(kNoConsensus).
 */
EdgeEstimate estimate_edge(
  const PointCloud & cloud, const RansacParams & params, const EdgeOptions & options = {});

/// rotate_by = -omega, advance_by = standoff - target.
PoseDelta pose_correction(const EdgeEstimate & edge, double target_standoff);

/**
 * @brief Closest point to the camera plane, i.e. lowest x, with a margin
 * against the door trace (a depth-vs-lateral line fit near the median x).
 *
 * Throws Error(kEmptyCloud) or Error(kLowMargin) when the margin is below
 * protrusion_min.
 */
HandleEstimate detect_handle(
  const PointCloud & cloud, const RoiLimits & limits, double protrusion_min = 0.015);

}  // namespace graspsim

#endif  // GRASPSIM_PERCEPTION_HPP_
