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

#ifndef GRASPSIM_SCENE_HPP_
#define GRASPSIM_SCENE_HPP_

#include <cstdint>
#include <optional>

#include "graspsim/geometry.hpp"

namespace graspsim
{

// World frame: the robot's commanded (nominal) arrival pose sits at the
// origin facing +x. The dishwasher front is the plane x = plane distance,
// spanning y in [-width/2, width/2] and z in [0, height]; the floor is z = 0.

enum class PoseMode
{
  kConstant,
  kRandom,
};

struct Interval
{
  double lo{0.0};
  double hi{0.0};

  bool well_ordered() const {return lo <= hi;}
  bool contains(double v) const {return v >= lo && v <= hi;}
  double mid() const {return 0.5 * (lo + hi);}
};

/// Gaussian pose error for constant-pose trials (imperfect map initialisation).
struct ResidualPoseNoise
{
  bool enabled{false};
  double sigma_pose{0.02};  // meters, lateral and frontal
  double sigma_yaw_deg{3.0};
};

struct SceneConfig
{
  double plane_width{0.80};
  double plane_height{0.85};
  double nominal_plane_distance{0.60};
  // On-plane coordinates: x = lateral offset along the door (world y),
  // y = height above the floor (world z). z is unused.
  Point3 handle_center{0.0, 0.75, 0.0};
  double handle_width{0.30};
  double handle_height{0.02};
  double handle_protrusion{0.04};
  double floor_depth{0.50};  // floor strip in front of the plane
  double noise_sigma{0.005};
  std::size_t points_per_cloud{5000};
  Interval lateral_drift_range{-0.1, 0.1};
  Interval frontal_drift_range{-0.2, 0.0};  // negative = farther from the door
  Interval yaw_drift_range_deg{-15.0, 15.0};
  Interval handle_jitter_range{-0.05, 0.05};
  ResidualPoseNoise constant_residual;
  std::uint64_t seed{0};

  /// Throws Error(kConfig) naming the offending field.
  void validate() const;
};

struct DriftSample
{
  double lateral{0.0};
  double frontal{0.0};
  double yaw{0.0};  // radians
  double handle_dx{0.0};  // lateral
  double handle_dy{0.0};  // vertical

  bool operator==(const DriftSample &) const = default;
};

/// Planar robot base pose in the world frame.
struct RobotPose
{
  double x{0.0};
  double y{0.0};
  double yaw{0.0};
};

RobotPose pose_from_drift(const DriftSample & drift);

/// Turn in place by rotate_by, then drive advance_by along the new heading.
RobotPose apply_motion(const RobotPose & pose, double rotate_by, double advance_by);

PointCloud world_to_robot(const PointCloud & world, const RobotPose & pose);
Point3 world_to_robot(const Point3 & world, const RobotPose & pose);
Point3 robot_to_world(const Point3 & robot, const RobotPose & pose);

/// Oracle for scoring, expressed in the robot frame.
struct GroundTruth
{
  double true_plane_distance{0.0};  // perpendicular, robot origin to door plane
  double true_plane_yaw{0.0};  // robot heading error; equals the ideal edge angle
  Point3 true_handle_position;  // center of the handle bar
  RobotPose robot;

  /// Unit normal of the door plane pointing away from the robot.
  Point3 plane_normal() const;

  /// Signed depth of p beyond the door plane (positive = inside the door).
  double penetration(const Point3 & p) const;
};

GroundTruth ground_truth(
  const SceneConfig & config, const DriftSample & drift, const RobotPose & pose,
  double door_offset = 0.0);

struct GripperOcclusionSpec
{
  Point3 gripper_position;  // robot frame
  double occlusion_radius{0.05};
};

struct RenderOptions
{
  std::optional<GripperOcclusionSpec> occlusion;
  double door_offset{0.0};  // door plane displaced away from the robot
};

struct RenderedScene
{
  PointCloud cloud;  // camera frame
  GroundTruth truth;
};

/**
 * @brief Uniform draw from each configured interval for random-pose trials;
 * all-zero (or residual Gaussian, when enabled) for constant-pose trials.
 * Deterministic in (config.seed, trial_index).
 */
DriftSample sample_drift(const SceneConfig & config, PoseMode mode, std::uint64_t trial_index);

/**
 * @brief Samples points uniformly by area over the door plane, handle bar
 * faces and floor strip, moves them into the camera frame, adds isotropic
 * Gaussian noise, then applies gripper occlusion.
 *
 * Occlusion replaces every point whose camera ray passes within the radius
 * of the gripper by the ray's first hit on the gripper sphere.
 */
RenderedScene render_scene(
  const SceneConfig & config, const DriftSample & drift, const RobotPose & pose,
  const CameraExtrinsics & ext, const RenderOptions & options, std::uint64_t noise_seed);

/// render_scene at the drifted arrival pose, noise seeded from (config.seed, trial_index).
RenderedScene render_cloud(
  const SceneConfig & config, const DriftSample & drift, const CameraExtrinsics & ext,
  const std::optional<GripperOcclusionSpec> & occ, std::uint64_t trial_index = 0);

/// Drops robot-frame points whose lateral door coordinate falls inside
/// [lo_frac, hi_frac] of the door width (0 = right edge, 1 = left edge).
PointCloud remove_lateral_band(
  const PointCloud & robot_cloud, const SceneConfig & config, const GroundTruth & truth,
  double lo_frac, double hi_frac);

}  // namespace graspsim

#endif  // GRASPSIM_SCENE_HPP_
