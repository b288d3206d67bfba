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
#include <random>

#include "graspsim/contact.hpp"
#include "graspsim/error.hpp"

using namespace graspsim;

namespace
{

// Door plane straight ahead of an unrotated robot.
GroundTruth plane_at(double x)
{
  GroundTruth t;
  t.true_plane_distance = x;
  return t;
}

GripperState tip_at(double x)
{
  GripperState g;
  g.position = {x, 0.0, 0.75};
  return g;
}

}  // namespace

TEST_CASE("no contact reads noise only")
{
  ForceSensor sensor({}, 1);
  const GroundTruth t = plane_at(0.60);
  int above = 0;
  double sum = 0.0;
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    const ForceReading r = sensor.measure(tip_at(0.55), t);
    above += std::abs(r.fx) > 3.0 * sensor.params().noise_sigma ? 1 : 0;
    sum += r.fx;
  }
  CHECK(above <= n / 100);
  CHECK(std::abs(sum / n) <= 3.0 * 0.1 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("spring reaction at 1 cm penetration")
{
  ForceSensor sensor({}, 2);
  const GroundTruth t = plane_at(0.60);
  for (int i = 0; i < 200; ++i) {
    const ForceReading r = sensor.measure(tip_at(0.61), t);
    CHECK(std::abs(r.fx - 5.0) <= 3.0 * 0.1 + 0.1);
  }
  ForceSensor quiet({500.0, 0.0}, 0);
  CHECK(quiet.measure(tip_at(0.61), t).fx == doctest::Approx(5.0));
}

TEST_CASE("sensor is deterministic per seed")
{
  ForceSensor a({}, 9);
  ForceSensor b({}, 9);
  const GroundTruth t = plane_at(0.6);
  for (int i = 0; i < 10; ++i) {
    CHECK(a.measure(tip_at(0.5), t).fx == b.measure(tip_at(0.5), t).fx);
  }
}

TEST_CASE("contact 0.10 m ahead")
{
  ApproachParams ap;
  ap.max_travel = 0.20;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    ForceSensor sensor({}, seed);
    const ContactResult r = advance_until_contact(tip_at(0.50), plane_at(0.60), ap, sensor);
    CHECK(r.contacted);
    CHECK(r.travel >= 0.10);
    CHECK(r.travel <= 0.11);
    CHECK(std::abs(r.final_reading.fx) >= ap.threshold);
    CHECK(r.contact_position.x == doctest::Approx(0.50 + r.travel));
  }
}

TEST_CASE("plane out of reach")
{
  ApproachParams ap;
  ap.max_travel = 0.20;
  ForceSensor sensor({}, 3);
  const ContactResult r = advance_until_contact(tip_at(0.30), plane_at(0.60), ap, sensor);
  CHECK(!r.contacted);
  CHECK(r.travel == 0.20);
}

TEST_CASE("threshold inside the noise floor is rejected")
{
  ApproachParams ap;
  ap.threshold = 0.2;
  ForceSensor sensor({}, 4);
  CHECK_THROWS_AS(advance_until_contact(tip_at(0.5), plane_at(0.6), ap, sensor), Error);
  ap.threshold = 2.0;
  ap.step = 0.0;
  CHECK_THROWS_AS(advance_until_contact(tip_at(0.5), plane_at(0.6), ap, sensor), Error);
}

TEST_CASE("approach invariants over random setups")
{
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(0.0, 0.4);
  for (std::uint64_t k = 0; k < 200; ++k) {
    ApproachParams ap;
    ForceSensor sensor({}, k);
    const double d = dist(rng);
    const ContactResult r = advance_until_contact(tip_at(0.5), plane_at(0.5 + d), ap, sensor);
    CHECK(r.travel <= ap.max_travel);
    CHECK(r.peak_travel <= ap.max_travel);
    CHECK(r.travel <= r.peak_travel);
    if (r.contacted) {
      CHECK(std::abs(r.final_reading.fx) >= ap.threshold);
      CHECK(r.travel >= d - 1e-12);
      CHECK(r.travel - d <= ap.step);
    }
  }
}

TEST_CASE("yawed plane reads the normal component")
{
  GroundTruth t = plane_at(0.6);
  t.robot.yaw = deg2rad(20.0);
  ForceSensor quiet({500.0, 0.0}, 0);
  GripperState g;
  g.position = t.plane_normal() * 0.61;
  g.approach_axis = {1.0, 0.0, 0.0};
  CHECK(quiet.measure(g, t).fx == doctest::Approx(500.0 * 0.01 * std::cos(deg2rad(20.0))));
}
