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

#ifndef GRASPSIM_CLOUD_IO_HPP_
#define GRASPSIM_CLOUD_IO_HPP_

#include <iosfwd>
#include <string>

#include "graspsim/geometry.hpp"

namespace graspsim
{

// ASCII cloud dump:
//   # frame=<camera|robot> n=<count>
//   x y z          (meters, 6 decimals, one point per line)

enum class CloudFrame
{
  kCamera,
  kRobot,
};

struct FramedCloud
{
  CloudFrame frame{CloudFrame::kCamera};
  PointCloud points;
};

void write_cloud(std::ostream & out, const PointCloud & cloud, CloudFrame frame);
void write_cloud(const std::string & path, const PointCloud & cloud, CloudFrame frame);

/// Throws Error(kIo) on a malformed header, bad line or count mismatch.
FramedCloud read_cloud(std::istream & in);
FramedCloud read_cloud(const std::string & path);

}  // namespace graspsim

#endif  // GRASPSIM_CLOUD_IO_HPP_
