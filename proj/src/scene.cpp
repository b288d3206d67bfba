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

#include "graspsim/scene.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>

#include "graspsim/error.hpp"
#include "graspsim/rng.hpp"

namespace graspsim
{

namespace
{

void require(bool ok, const std::string & field, const std::string & what)
{
  if (!ok) {
    throw Error(ErrorCode::kConfig, "scene." + field + ": " + what);
  }
}

// Axis-aligned rectangle in the world frame, fixed along one axis.
struct Face
{
  int fixed_axis;  // 0 = x, 1 = y, 2 = z
  double fixed;
  Interval a;  // first free axis (ascending order of the remaining axes)
  Interval b;

  double area() const {return (a.hi - a.lo) * (b.hi - b.lo);}

  Point3 at(double u, double v) const
  {
    const double pa = a.lo + u * (a.hi - a.lo);
    const double pb = b.lo + v * (b.hi - b.lo);
    switch (fixed_axis) {
      case 0: return {fixed, pa, pb};
      case 1: return {pa, fixed, pb};
      default: return {pa, pb, fixed};
    }
  }
};

std::array<Face, 7> scene_faces(
  const SceneConfig & c, const DriftSample & drift, double door_offset)
{
  const double plane_x = c.nominal_plane_distance + door_offset;
  const double half_w = 0.5 * c.plane_width;
  const double hy = c.handle_center.x + drift.handle_dx;
  const double hz = c.handle_center.y + drift.handle_dy;
  const Interval handle_y{hy - 0.5 * c.handle_width, hy + 0.5 * c.handle_width};
  const Interval handle_z{hz - 0.5 * c.handle_height, hz + 0.5 * c.handle_height};
  const Interval handle_x{plane_x - c.handle_protrusion, plane_x};
  return {{
    {0, plane_x, {-half_w, half_w}, {0.0, c.plane_height}},  // door
    {0, plane_x - c.handle_protrusion, handle_y, handle_z},  // handle front
    {2, handle_z.hi, handle_x, handle_y},  // handle top
    {2, handle_z.lo, handle_x, handle_y},  // handle bottom
    {1, handle_y.lo, handle_x, handle_z},  // handle end caps
    {1, handle_y.hi, handle_x, handle_z},
    {2, 0.0, {c.nominal_plane_distance - c.floor_depth, c.nominal_plane_distance},
      {-half_w, half_w}},  // floor strip
  }};
}

// First intersection of the ray from the camera through s with the sphere,
// if the ray passes within the radius in front of s.
std::optional<Point3> occlude(const Point3 & s, const Point3 & center, double radius)
{
  const double range = s.norm();
  if (range <= 0.0) {
    return std::nullopt;
  }
  const Point3 dir = s / range;
  const double along = center.dot(dir);
  const Point3 closest = dir * along;
  const double miss2 = (center - closest).dot(center - closest);
  if (miss2 > radius * radius) {
    return std::nullopt;
  }
  const double t0 = along - std::sqrt(radius * radius - miss2);
  if (t0 <= 0.0 || t0 >= range) {
    return std::nullopt;
  }
  return dir * t0;
}

}  // namespace

void SceneConfig::validate() const
{
  require(plane_width > 0.0, "plane_width", "must be > 0");
  require(plane_height > 0.0, "plane_height", "must be > 0");
  require(nominal_plane_distance > 0.0, "nominal_plane_distance", "must be > 0");
  require(handle_width > 0.0, "handle_width", "must be > 0");
  require(handle_height > 0.0, "handle_height", "must be > 0");
  require(handle_protrusion > 0.0, "handle_protrusion", "must be > 0");
  require(floor_depth >= 0.0, "floor_depth", "must be >= 0");
  require(noise_sigma >= 0.0, "noise_sigma", "must be >= 0");
  require(points_per_cloud >= 1, "points_per_cloud", "must be >= 1");
  require(lateral_drift_range.well_ordered(), "lateral_drift_range", "lo must be <= hi");
  require(frontal_drift_range.well_ordered(), "frontal_drift_range", "lo must be <= hi");
  require(yaw_drift_range_deg.well_ordered(), "yaw_drift_range_deg", "lo must be <= hi");
  require(handle_jitter_range.well_ordered(), "handle_jitter_range", "lo must be <= hi");
  require(constant_residual.sigma_pose >= 0.0, "constant_residual.sigma_pose", "must be >= 0");
  require(constant_residual.sigma_yaw_deg >= 0.0, "constant_residual.sigma_yaw_deg",
          "must be >= 0");

  const double jitter = std::max(std::abs(handle_jitter_range.lo),
      std::abs(handle_jitter_range.hi));
  require(std::abs(handle_center.x) + 0.5 * handle_width + jitter <= 0.5 * plane_width,
          "handle_center", "handle bar leaves the door laterally");
  require(handle_center.y - 0.5 * handle_height - jitter >= 0.0 &&
          handle_center.y + 0.5 * handle_height + jitter <= plane_height,
          "handle_center", "handle bar leaves the door vertically");
}

RobotPose pose_from_drift(const DriftSample & drift)
{
  return {drift.frontal, drift.lateral, drift.yaw};
}

RobotPose apply_motion(const RobotPose & pose, double rotate_by, double advance_by)
{
  const double yaw = pose.yaw + rotate_by;
  return {pose.x + advance_by * std::cos(yaw), pose.y + advance_by * std::sin(yaw), yaw};
}

Point3 world_to_robot(const Point3 & world, const RobotPose & pose)
{
  return rot_z(-pose.yaw) * (world - Point3{pose.x, pose.y, 0.0});
}

Point3 robot_to_world(const Point3 & robot, const RobotPose & pose)
{
  return rot_z(pose.yaw) * robot + Point3{pose.x, pose.y, 0.0};
}

PointCloud world_to_robot(const PointCloud & world, const RobotPose & pose)
{
  const RigidTransform to_robot =
    RigidTransform{rot_z(pose.yaw), {pose.x, pose.y, 0.0}}.inverse();
  return to_robot.apply(world);
}

Point3 GroundTruth::plane_normal() const
{
  return {std::cos(robot.yaw), -std::sin(robot.yaw), 0.0};
}

double GroundTruth::penetration(const Point3 & p) const
{
  return plane_normal().dot(p) - true_plane_distance;
}

GroundTruth ground_truth(
  const SceneConfig & config, const DriftSample & drift, const RobotPose & pose,
  double door_offset)
{
  const double plane_x = config.nominal_plane_distance + door_offset;
  const Point3 handle_world{
    plane_x - 0.5 * config.handle_protrusion,
    config.handle_center.x + drift.handle_dx,
    config.handle_center.y + drift.handle_dy};
  GroundTruth truth;
  truth.true_plane_distance = plane_x - pose.x;
  truth.true_plane_yaw = pose.yaw;
  truth.true_handle_position = world_to_robot(handle_world, pose);
  truth.robot = pose;
  return truth;
}

DriftSample sample_drift(const SceneConfig & config, PoseMode mode, std::uint64_t trial_index)
{
  std::mt19937_64 rng(derive_seed(config.seed, {tag(Stream::kDrift), trial_index}));
  DriftSample d;
  if (mode == PoseMode::kConstant) {
    if (config.constant_residual.enabled) {
      std::normal_distribution<double> pose_noise(0.0, config.constant_residual.sigma_pose);
      std::normal_distribution<double> yaw_noise(
        0.0, deg2rad(config.constant_residual.sigma_yaw_deg));
      d.lateral = pose_noise(rng);
      d.frontal = pose_noise(rng);
      d.yaw = yaw_noise(rng);
    }
    return d;
  }
  auto uniform = [&rng](const Interval & r) {
      return std::uniform_real_distribution<double>(r.lo, r.hi)(rng);
    };
  d.lateral = uniform(config.lateral_drift_range);
  d.frontal = uniform(config.frontal_drift_range);
  d.yaw = deg2rad(uniform(config.yaw_drift_range_deg));
  d.handle_dx = uniform(config.handle_jitter_range);
  d.handle_dy = uniform(config.handle_jitter_range);
  return d;
}

RenderedScene render_scene(
  const SceneConfig & config, const DriftSample & drift, const RobotPose & pose,
  const CameraExtrinsics & ext, const RenderOptions & options, std::uint64_t noise_seed)
{
  const auto faces = scene_faces(config, drift, options.door_offset);
  std::array<double, faces.size()> cumulative{};
  double total = 0.0;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    total += faces[i].area();
    cumulative[i] = total;
  }

  std::mt19937_64 rng(noise_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);

  const RigidTransform robot_to_cam = ext.camera_to_robot().inverse();
  const RigidTransform world_to_rob =
    RigidTransform{rot_z(pose.yaw), {pose.x, pose.y, 0.0}}.inverse();
  const RigidTransform world_to_cam{
    robot_to_cam.rotation * world_to_rob.rotation,
    robot_to_cam.rotation * world_to_rob.translation + robot_to_cam.translation};

  RenderedScene out;
  out.cloud.reserve(config.points_per_cloud);
  for (std::size_t i = 0; i < config.points_per_cloud; ++i) {
    const double pick = unit(rng) * total;
    std::size_t f = 0;
    while (f + 1 < faces.size() && pick >= cumulative[f]) {
      ++f;
    }
    const double u = unit(rng);
    const double v = unit(rng);
    Point3 s = world_to_cam.apply(faces[f].at(u, v));
    if (config.noise_sigma > 0.0) {
      s = s + Point3{noise(rng), noise(rng), noise(rng)} * config.noise_sigma;
    }
    out.cloud.push_back(s);
  }

  if (options.occlusion) {
    const Point3 center = robot_to_cam.apply(options.occlusion->gripper_position);
    const double radius = options.occlusion->occlusion_radius;
    for (auto & s : out.cloud) {
      if (auto hit = occlude(s, center, radius)) {
        s = *hit;
      }
    }
  }

  out.truth = ground_truth(config, drift, pose, options.door_offset);
  return out;
}

RenderedScene render_cloud(
  const SceneConfig & config, const DriftSample & drift, const CameraExtrinsics & ext,
  const std::optional<GripperOcclusionSpec> & occ, std::uint64_t trial_index)
{
  RenderOptions options;
  options.occlusion = occ;
  return render_scene(
    config, drift, pose_from_drift(drift), ext, options,
    derive_seed(config.seed, {tag(Stream::kRender), trial_index}));
}

PointCloud remove_lateral_band(
  const PointCloud & robot_cloud, const SceneConfig & config, const GroundTruth & truth,
  double lo_frac, double hi_frac)
{
  const double right_edge = -0.5 * config.plane_width;
  const double lo = right_edge + lo_frac * config.plane_width;
  const double hi = right_edge + hi_frac * config.plane_width;
  PointCloud out;
  out.reserve(robot_cloud.size());
  for (const auto & p : robot_cloud) {
    const double lateral = robot_to_world(p, truth.robot).y;
    if (lateral < lo || lateral > hi) {
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace graspsim
