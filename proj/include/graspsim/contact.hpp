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

#ifndef GRASPSIM_CONTACT_HPP_
#define GRASPSIM_CONTACT_HPP_

#include <cstdint>
#include <random>

#include "graspsim/geometry.hpp"
#include "graspsim/scene.hpp"

namespace graspsim
{

struct ForceReading
{
  double fx{0.0};
  double fy{0.0};
  double fz{0.0};
  double tx{0.0};
  double ty{0.0};
  double tz{0.0};
};

struct GripperState
{
  Point3 position;  // fingertip, robot frame
  Point3 approach_axis{1.0, 0.0, 0.0};  // hand X force axis, unit
  double aperture{0.08};
  bool closed{false};
};

struct ContactResult
{
  bool contacted{false};
  Point3 contact_position;
  double travel{0.0};
  double peak_travel{0.0};  // deepest probe position before backing off
  ForceReading final_reading;
};

struct ForceSensorParams
{
  double stiffness{500.0};  // N/m, linear spring against the door plane
  double noise_sigma{0.1};  // N (N*m on torque channels)
};

/**
 * @brief Simulated 6-axis wrist sensor. fx is the spring reaction along the
 * approach axis once the fingertip reaches the door plane; every channel
 * carries Gaussian noise. The noise stream is seeded per instance.
 */
class ForceSensor
{
public:
  ForceSensor(const ForceSensorParams & params, std::uint64_t seed);

  ForceReading measure(const GripperState & gripper, const GroundTruth & truth);

  const ForceSensorParams & params() const {return params_;}

private:
  ForceSensorParams params_;
  std::mt19937_64 rng_;
  std::normal_distribution<double> noise_{0.0, 1.0};
};

ForceReading simulate_force(
  const GripperState & gripper, const GroundTruth & truth, ForceSensor & sensor);

struct ApproachParams
{
  double threshold{2.0};  // N
  double step{0.005};  // m
  double max_travel{0.25};  // m
};

/**
 * @brief Steps the gripper along its approach axis, reading the sensor at
 * every step, until |fx| >= threshold or max_travel is reached.
 *
 * On contact the gripper backs off by the spring deflection implied by the
 * reading, keeping a residual preload of 3 sigma of the sensor noise, so it
 * rests on the surface rather than one step inside it.
 *
 * Throws Error(kInvalidArgument) when the threshold is within 3 sigma of the
 * noise floor or the step is not positive.
 */
ContactResult advance_until_contact(
  const GripperState & gripper, const GroundTruth & truth, const ApproachParams & approach,
  ForceSensor & sensor);

}  // namespace graspsim

#endif  // GRASPSIM_CONTACT_HPP_
