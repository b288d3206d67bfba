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

#include "graspsim/contact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "graspsim/error.hpp"

namespace graspsim
{

ForceSensor::ForceSensor(const ForceSensorParams & params, std::uint64_t seed)
: params_(params), rng_(seed) {}

ForceReading ForceSensor::measure(const GripperState & gripper, const GroundTruth & truth)
{
  const double depth = truth.penetration(gripper.position);
  const double contact = depth > 0.0 ?
    params_.stiffness * depth * truth.plane_normal().dot(gripper.approach_axis) :
    0.0;
  const double s = params_.noise_sigma;
  ForceReading r;
  r.fx = contact + s * noise_(rng_);
  r.fy = s * noise_(rng_);
  r.fz = s * noise_(rng_);
  r.tx = s * noise_(rng_);
  r.ty = s * noise_(rng_);
  r.tz = s * noise_(rng_);
  return r;
}

ForceReading simulate_force(
  const GripperState & gripper, const GroundTruth & truth, ForceSensor & sensor)
{
  return sensor.measure(gripper, truth);
}

ContactResult advance_until_contact(
  const GripperState & gripper, const GroundTruth & truth, const ApproachParams & approach,
  ForceSensor & sensor)
{
  const double noise_floor = 3.0 * sensor.params().noise_sigma;
  if (!(approach.threshold > noise_floor)) {
    throw Error(ErrorCode::kInvalidArgument,
                "contact threshold " + std::to_string(approach.threshold) +
                " N is not above the 3-sigma noise floor " + std::to_string(noise_floor) + " N");
  }
  if (!(approach.step > 0.0) || !(approach.max_travel >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "contact step must be > 0, max_travel >= 0");
  }

  const Point3 start = gripper.position;
  const Point3 axis = gripper.approach_axis;
  GripperState probe = gripper;
  ContactResult result;
  for (long i = 0;; ++i) {
    const double travel = std::min(static_cast<double>(i) * approach.step, approach.max_travel);
    probe.position = start + axis * travel;
    const ForceReading reading = sensor.measure(probe, truth);
    result.final_reading = reading;
    result.travel = travel;
    result.peak_travel = travel;
    if (std::abs(reading.fx) >= approach.threshold) {
      result.contacted = true;
      const double settle = (std::abs(reading.fx) - noise_floor) / sensor.params().stiffness;
      result.travel = std::max(0.0, travel - std::max(0.0, settle));
      break;
    }
    if (travel >= approach.max_travel) {
      break;
    }
  }
  result.contact_position = start + axis * result.travel;
  return result;
}

}  // namespace graspsim
