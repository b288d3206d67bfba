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

#include <doctest.h>

#include <cmath>

#include "graspsim/error.hpp"
#include "graspsim/perception.hpp"
#include "graspsim/scene.hpp"

using namespace graspsim;

namespace
{

const CameraExtrinsics kCamera{deg2rad(30.0), 0.0, {0.0, 0.0, 1.0}};

// Robot-frame cloud of a rendered scene with the given drift.
RenderedScene robot_scene(const SceneConfig & c, const DriftSample & d, std::uint64_t index)
{
  RenderedScene r = render_cloud(c, d, kCamera, std::nullopt, index);
  r.cloud = camera_to_robot(r.cloud, kCamera);
  return r;
}

// Distance from p to the front face of the handle bar (aligned robot).
double apex_distance(const Point3 & p, const GroundTruth & t, const SceneConfig & c)
{
  const double ex = p.x - (t.true_handle_position.x - 0.5 * c.handle_protrusion);
  const double ey = std::max(0.0, std::abs(p.y - t.true_handle_position.y) - 0.5 * c.handle_width);
  const double ez = std::max(0.0, std::abs(p.z - t.true_handle_position.z) - 0.5 * c.handle_height);
  return std::sqrt(ex * ex + ey * ey + ez * ez);
}

}  // namespace

TEST_CASE("crop_roi examples")
{
  const RoiLimits roi;
  CHECK(crop_roi({}, roi).empty());
  const PointCloud two{{0.5, 0.0, 0.5}, {5.0, 0.0, 0.5}};
  const PointCloud kept = crop_roi(two, roi);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0] == two[0]);
}

TEST_CASE("crop_roi drops the floor")
{
  SceneConfig c;
  c.seed = 1;
  const RenderedScene r = robot_scene(c, {}, 0);
  std::size_t floor_before = 0;
  for (const auto & p : r.cloud) {
    floor_before += std::abs(p.z) < 0.03 ? 1 : 0;
  }
  REQUIRE(floor_before > 100);
  RoiLimits roi;
  roi.min_z = 0.05;
  roi.max_z = 1.5;
  for (const auto & p : crop_roi(r.cloud, roi)) {
    CHECK(p.z >= 0.05);
  }
}

TEST_CASE("line_of_sight keeps the nearest point per bearing")
{
  const PointCloud pts{{1.0, 0.0, 0}, {2.0, 0.0, 0}, {0.0, 1.0, 0}, {0.0, 3.0, 0}};
  auto idx = line_of_sight(pts, 0.5);
  std::sort(idx.begin(), idx.end());
  CHECK(idx == std::vector<std::size_t>{0, 2});
}

TEST_CASE("edge of an aligned noiseless plane")
{
  PointCloud plane;
  for (int i = 0; i <= 80; ++i) {
    for (int k = 0; k < 5; ++k) {
      plane.push_back({0.60, -0.4 + 0.01 * i, 0.1 + 0.15 * k});
    }
  }
  const EdgeEstimate e = estimate_edge(plane, RansacParams{});
  CHECK(std::abs(e.omega) <= 1e-6);
  CHECK(std::abs(e.standoff_distance - 0.60) <= 1e-6);
  CHECK(e.inlier_count >= 4);
}

TEST_CASE("edge of a yawed noisy scene")
{
  SceneConfig c;
  c.seed = 10;
  DriftSample d;
  d.yaw = deg2rad(10.0);
  const RenderedScene r = robot_scene(c, d, 0);
  const EdgeEstimate e = estimate_edge(crop_roi(r.cloud, RoiLimits{}), RansacParams{});
  CHECK(std::abs(rad2deg(e.omega) - 10.0) <= 0.5);
  CHECK(std::abs(e.standoff_distance - r.truth.true_plane_distance) <= 0.01);
  CHECK(e.standoff_distance > 0.0);
}

TEST_CASE("edge survives removal of the middle 40 percent")
{
  SceneConfig c;
  c.seed = 11;
  for (std::uint64_t i = 0; i < 10; ++i) {
    const DriftSample d = sample_drift(c, PoseMode::kRandom, i);
    const RenderedScene r = robot_scene(c, d, i);
    const PointCloud cut = remove_lateral_band(r.cloud, c, r.truth, 0.3, 0.7);
    const EdgeEstimate e = estimate_edge(crop_roi(cut, RoiLimits{}), RansacParams{});
    CHECK(std::abs(e.omega - r.truth.true_plane_yaw) <= deg2rad(0.5));
  }
}

TEST_CASE("edge errors")
{
  CHECK_THROWS_AS(estimate_edge({}, RansacParams{}), Error);
  CHECK_THROWS_AS(estimate_edge(PointCloud{{0.6, 0, 0.5}}, RansacParams{}), Error);
}

TEST_CASE("pose_correction examples")
{
  EdgeEstimate e;
  e.omega = 0.0;
  e.standoff_distance = 0.60;
  PoseDelta d = pose_correction(e, 0.60);
  CHECK(d.rotate_by == 0.0);
  CHECK(d.advance_by == 0.0);

  e.omega = deg2rad(5.0);
  e.standoff_distance = 0.70;
  d = pose_correction(e, 0.60);
  CHECK(d.rotate_by == doctest::Approx(deg2rad(-5.0)));
  CHECK(d.advance_by == doctest::Approx(0.10));
}

TEST_CASE("p_c lands on the handle apex")
{
  // The raw argmin is pulled toward the camera by roughly two noise sigmas,
  // so the 1 cm apex bound is checked at low noise.
  for (double sigma : {0.0, 0.002}) {
    SceneConfig c;
    c.seed = 12;
    c.noise_sigma = sigma;
    for (std::uint64_t i = 0; i < 20; ++i) {
      DriftSample d = sample_drift(c, PoseMode::kRandom, i);
      d.lateral = d.frontal = d.yaw = 0.0;
      const RenderedScene r = robot_scene(c, d, i);
      const RoiLimits roi;
      const HandleEstimate h = detect_handle(r.cloud, roi);
      CHECK(roi.contains(h.position));
      CHECK(apex_distance(h.position, r.truth, c) <= 0.01);
      CHECK(h.margin >= 0.015);
    }
  }
}

TEST_CASE("grasp center under default noise")
{
  SceneConfig c;
  c.seed = 13;
  for (std::uint64_t i = 0; i < 50; ++i) {
    DriftSample d = sample_drift(c, PoseMode::kRandom, i);
    d.lateral = d.frontal = d.yaw = 0.0;
    const RenderedScene r = robot_scene(c, d, i);
    const HandleEstimate h = detect_handle(r.cloud, RoiLimits{});
    CHECK(distance(h.grasp_center, r.truth.true_handle_position) <= 0.03);
  }
}

TEST_CASE("occluded handle is never reported")
{
  SceneConfig c;
  c.seed = 14;
  const Point3 cam = kCamera.camera_to_robot().translation;
  int low_margin = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    DriftSample d = sample_drift(c, PoseMode::kRandom, i);
    d.lateral = d.frontal = d.yaw = 0.0;
    const GroundTruth t = ground_truth(c, d, pose_from_drift(d));
    const Point3 ray = t.true_handle_position - cam;
    const Point3 gripper = t.true_handle_position - ray / ray.norm() * 0.12;
    const RenderedScene r = render_cloud(c, d, kCamera, GripperOcclusionSpec{gripper, 0.05}, i);
    try {
      const HandleEstimate h = detect_handle(camera_to_robot(r.cloud, kCamera), RoiLimits{});
      CHECK(distance(h.position, t.true_handle_position) >= 0.05);
    } catch (const Error & e) {
      CHECK(e.code() == ErrorCode::kLowMargin);
      ++low_margin;
    }
  }
  MESSAGE("low-margin errors: " << low_margin);
}

TEST_CASE("detect_handle errors")
{
  try {
    detect_handle({}, RoiLimits{});
    FAIL("expected empty-cloud");
  } catch (const Error & e) {
    CHECK(e.code() == ErrorCode::kEmptyCloud);
  }
  PointCloud flat;
  for (int i = 0; i < 50; ++i) {
    flat.push_back({0.6, -0.2 + 0.01 * i, 0.5});
  }
  try {
    detect_handle(flat, RoiLimits{});
    FAIL("expected low-margin");
  } catch (const Error & e) {
    CHECK(e.code() == ErrorCode::kLowMargin);
  }
}
