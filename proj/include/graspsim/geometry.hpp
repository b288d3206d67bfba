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

#ifndef GRASPSIM_GEOMETRY_HPP_
#define GRASPSIM_GEOMETRY_HPP_

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace graspsim
{

// Robot frame: x forward (toward the obstacle), y left, z up. With zero pan
// and tilt the camera axes coincide with the robot axes; positive tilt
// pitches the optical axis downward.

constexpr double kPi = std::numbers::pi;

constexpr double deg2rad(double degrees) {return degrees * kPi / 180.0;}
constexpr double rad2deg(double radians) {return radians * 180.0 / kPi;}

/// Metric 3D point, also used as a free vector.
struct Point3
{
  double x{0.0};
  double y{0.0};
  double z{0.0};

  constexpr Point3 operator+(const Point3 & o) const {return {x + o.x, y + o.y, z + o.z};}
  constexpr Point3 operator-(const Point3 & o) const {return {x - o.x, y - o.y, z - o.z};}
  constexpr Point3 operator-() const {return {-x, -y, -z};}
  constexpr Point3 operator*(double s) const {return {x * s, y * s, z * s};}
  constexpr Point3 operator/(double s) const {return {x / s, y / s, z / s};}
  constexpr bool operator==(const Point3 &) const = default;

  constexpr double dot(const Point3 & o) const {return x * o.x + y * o.y + z * o.z;}
  constexpr Point3 cross(const Point3 & o) const
  {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const {return std::sqrt(dot(*this));}
  bool is_finite() const {return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);}
};

inline constexpr Point3 operator*(double s, const Point3 & p) {return p * s;}

inline double distance(const Point3 & a, const Point3 & b) {return (a - b).norm();}

using PointCloud = std::vector<Point3>;

/// Row-major 3x3 rotation matrix.
class Rotation3
{
public:
  using Rows = std::array<std::array<double, 3>, 3>;

  constexpr Rotation3()
  : m_{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}} {}
  constexpr explicit Rotation3(const Rows & rows)
  : m_(rows) {}

  static constexpr Rotation3 identity() {return Rotation3{};}

  constexpr double operator()(int r, int c) const {return m_[r][c];}
  constexpr const Rows & rows() const {return m_;}

  Point3 operator*(const Point3 & v) const;
  Rotation3 operator*(const Rotation3 & other) const;
  Rotation3 transpose() const;
  double determinant() const;

  /// Largest entry of |R^T R - I|.
  double orthonormality_error() const;

private:
  Rows m_;
};

/// Rotation about the y axis (camera tilt).
Rotation3 rot_y(double phi);

/// Rotation about the z axis (camera pan, robot yaw).
Rotation3 rot_z(double theta);

struct RigidTransform
{
  Rotation3 rotation;
  Point3 translation;

  Point3 apply(const Point3 & p) const {return rotation * p + translation;}
  PointCloud apply(const PointCloud & cloud) const;
  RigidTransform inverse() const;
};

/// Pose of the 3-DOF head camera relative to the robot base.
struct CameraExtrinsics
{
  double tilt{0.0};  // radians, in [-pi/2, pi/2]
  double pan{0.0};  // radians, in (-pi, pi]
  Point3 translation;

  /// Throws Error(kInvalidArgument) when the angles are out of range.
  void validate() const;

  /// p = R_Y(tilt) * R_Z(pan) * s + t
  RigidTransform camera_to_robot() const;
};

PointCloud camera_to_robot(const PointCloud & cloud, const CameraExtrinsics & ext);
PointCloud robot_to_camera(const PointCloud & cloud, const CameraExtrinsics & ext);

/**
 * @brief Distance from q to the infinite line through p1 and p2,
 * |(q - p1) x (q - p2)| / |p2 - p1|.
 *
 * Throws Error(kDegenerateLine) when |p2 - p1| < kDegenerateLineTolerance.
 */
double point_line_distance(const Point3 & p1, const Point3 & p2, const Point3 & q);

constexpr double kDegenerateLineTolerance = 1e-12;

/// Unsigned angle in [0, pi] between l_dir and the frontal normal (1, 0, 0).
double angle_to_frontal_normal(const Point3 & l_dir);

/// Line in the XY plane produced by the edge fitter.
struct LineModel
{
  Point3 support_a;
  Point3 support_b;
  Point3 direction;  // unit, oriented so that y > 0 (or x > 0 when y == 0)
  std::array<Point3, 2> extreme_points;  // inliers at min / max projection

  bool is_valid() const;
};

/// Rotates every point of the line (and its direction) by R_Z(omega).
LineModel rotate_line_z(const LineModel & line, double omega);

}  // namespace graspsim

#endif  // GRASPSIM_GEOMETRY_HPP_
