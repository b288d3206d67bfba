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

#include "graspsim/geometry.hpp"

#include <algorithm>
#include <string>

#include "graspsim/error.hpp"

namespace graspsim
{

Point3 Rotation3::operator*(const Point3 & v) const
{
  return {
    m_[0][0] * v.x + m_[0][1] * v.y + m_[0][2] * v.z,
    m_[1][0] * v.x + m_[1][1] * v.y + m_[1][2] * v.z,
    m_[2][0] * v.x + m_[2][1] * v.y + m_[2][2] * v.z};
}

Rotation3 Rotation3::operator*(const Rotation3 & other) const
{
  Rows out{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      out[r][c] = m_[r][0] * other.m_[0][c] + m_[r][1] * other.m_[1][c] +
        m_[r][2] * other.m_[2][c];
    }
  }
  return Rotation3{out};
}

Rotation3 Rotation3::transpose() const
{
  Rows out{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      out[r][c] = m_[c][r];
    }
  }
  return Rotation3{out};
}

double Rotation3::determinant() const
{
  return m_[0][0] * (m_[1][1] * m_[2][2] - m_[1][2] * m_[2][1]) -
         m_[0][1] * (m_[1][0] * m_[2][2] - m_[1][2] * m_[2][0]) +
         m_[0][2] * (m_[1][0] * m_[2][1] - m_[1][1] * m_[2][0]);
}

double Rotation3::orthonormality_error() const
{
  const Rotation3 gram = transpose() * (*this);
  double worst = 0.0;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const double expected = r == c ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(gram(r, c) - expected));
    }
  }
  return worst;
}

Rotation3 rot_y(double phi)
{
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return Rotation3{{{{c, 0.0, s}, {0.0, 1.0, 0.0}, {-s, 0.0, c}}}};
}

Rotation3 rot_z(double theta)
{
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return Rotation3{{{{c, -s, 0.0}, {s, c, 0.0}, {0.0, 0.0, 1.0}}}};
}

PointCloud RigidTransform::apply(const PointCloud & cloud) const
{
  PointCloud out;
  out.reserve(cloud.size());
  for (const auto & p : cloud) {
    out.push_back(apply(p));
  }
  return out;
}

RigidTransform RigidTransform::inverse() const
{
  const Rotation3 rt = rotation.transpose();
  return {rt, -(rt * translation)};
}

void CameraExtrinsics::validate() const
{
  if (!(tilt >= -kPi / 2.0 && tilt <= kPi / 2.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "camera tilt must lie in [-pi/2, pi/2], got " + std::to_string(tilt));
  }
  if (!(pan > -kPi && pan <= kPi)) {
    throw Error(ErrorCode::kInvalidArgument,
                "camera pan must lie in (-pi, pi], got " + std::to_string(pan));
  }
  if (!translation.is_finite()) {
    throw Error(ErrorCode::kInvalidArgument, "camera translation must be finite");
  }
}

RigidTransform CameraExtrinsics::camera_to_robot() const
{
  return {rot_y(tilt) * rot_z(pan), translation};
}

PointCloud camera_to_robot(const PointCloud & cloud, const CameraExtrinsics & ext)
{
  return ext.camera_to_robot().apply(cloud);
}

PointCloud robot_to_camera(const PointCloud & cloud, const CameraExtrinsics & ext)
{
  return ext.camera_to_robot().inverse().apply(cloud);
}

double point_line_distance(const Point3 & p1, const Point3 & p2, const Point3 & q)
{
  const double base = (p2 - p1).norm();
  if (base < kDegenerateLineTolerance) {
    throw Error(ErrorCode::kDegenerateLine, "line support points coincide");
  }
  return (q - p1).cross(q - p2).norm() / base;
}

double angle_to_frontal_normal(const Point3 & l_dir)
{
  const double len = l_dir.norm();
  if (!(len > 0.0)) {
    throw Error(ErrorCode::kZeroVector, "edge direction has zero length");
  }
  // n = (1, 0, 0), |n| = 1
  const double cos_omega = std::clamp(l_dir.x / len, -1.0, 1.0);
  return std::acos(cos_omega);
}

bool LineModel::is_valid() const
{
  return (support_b - support_a).norm() >= kDegenerateLineTolerance &&
         std::abs(direction.norm() - 1.0) <= 1e-9;
}

LineModel rotate_line_z(const LineModel & line, double omega)
{
  const Rotation3 r = rot_z(omega);
  return {
    r * line.support_a,
    r * line.support_b,
    r * line.direction,
    {r * line.extreme_points[0], r * line.extreme_points[1]}};
}

}  // namespace graspsim
