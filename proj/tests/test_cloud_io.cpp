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

#include <sstream>

#include "graspsim/cloud_io.hpp"
#include "graspsim/error.hpp"

using namespace graspsim;

TEST_CASE("cloud round trip")
{
  const PointCloud cloud{{0.1, -0.25, 1.5}, {1e-7, 3.0, -0.000001}};
  std::stringstream buf;
  write_cloud(buf, cloud, CloudFrame::kRobot);
  const FramedCloud back = read_cloud(buf);
  CHECK(back.frame == CloudFrame::kRobot);
  REQUIRE(back.points.size() == 2);
  CHECK(back.points[0].x == doctest::Approx(0.1));
  CHECK(back.points[0].z == doctest::Approx(1.5));
  CHECK(back.points[1].y == doctest::Approx(3.0));
}

TEST_CASE("cloud header format")
{
  std::stringstream buf;
  write_cloud(buf, PointCloud{{1, 2, 3}}, CloudFrame::kCamera);
  CHECK(buf.str() == "# frame=camera n=1\n1.000000 2.000000 3.000000\n");
}

TEST_CASE("malformed cloud files")
{
  std::istringstream empty("");
  CHECK_THROWS_AS(read_cloud(empty), Error);
  std::istringstream bad_header("frame camera\n");
  CHECK_THROWS_AS(read_cloud(bad_header), Error);
  std::istringstream bad_frame("# frame=world n=0\n");
  CHECK_THROWS_AS(read_cloud(bad_frame), Error);
  std::istringstream short_file("# frame=camera n=2\n1 2 3\n");
  CHECK_THROWS_AS(read_cloud(short_file), Error);
  std::istringstream bad_point("# frame=camera n=1\n1 two 3\n");
  CHECK_THROWS_AS(read_cloud(bad_point), Error);
  CHECK_THROWS_AS(read_cloud(std::string("/nonexistent/cloud.xyz")), Error);
}
