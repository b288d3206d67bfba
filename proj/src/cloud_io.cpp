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

#include "graspsim/cloud_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "graspsim/error.hpp"

namespace graspsim
{

void write_cloud(std::ostream & out, const PointCloud & cloud, CloudFrame frame)
{
  out << "# frame=" << (frame == CloudFrame::kCamera ? "camera" : "robot")
      << " n=" << cloud.size() << '\n';
  char line[96];
  for (const auto & p : cloud) {
    std::snprintf(line, sizeof(line), "%.6f %.6f %.6f\n", p.x, p.y, p.z);
    out << line;
  }
}

void write_cloud(const std::string & path, const PointCloud & cloud, CloudFrame frame)
{
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::kIo, "cannot open " + path + " for writing");
  }
  write_cloud(out, cloud, frame);
  if (!out) {
    throw Error(ErrorCode::kIo, "write failed: " + path);
  }
}

FramedCloud read_cloud(std::istream & in)
{
  std::string header;
  if (!std::getline(in, header)) {
    throw Error(ErrorCode::kIo, "cloud file is empty");
  }
  char frame_name[16] = {};
  unsigned long long count = 0;
  if (std::sscanf(header.c_str(), "# frame=%15s n=%llu", frame_name, &count) != 2) {
    throw Error(ErrorCode::kIo, "bad cloud header: " + header);
  }
  FramedCloud out;
  const std::string frame(frame_name);
  if (frame == "camera") {
    out.frame = CloudFrame::kCamera;
  } else if (frame == "robot") {
    out.frame = CloudFrame::kRobot;
  } else {
    throw Error(ErrorCode::kIo, "unknown cloud frame: " + frame);
  }
  out.points.reserve(count);
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    std::istringstream fields(line);
    Point3 p;
    if (!(fields >> p.x >> p.y >> p.z)) {
      throw Error(ErrorCode::kIo, "bad point on line " + std::to_string(line_no));
    }
    out.points.push_back(p);
  }
  if (out.points.size() != count) {
    throw Error(ErrorCode::kIo, "header announces " + std::to_string(count) +
                " points, file has " + std::to_string(out.points.size()));
  }
  return out;
}

FramedCloud read_cloud(const std::string & path)
{
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path);
  }
  return read_cloud(in);
}

}  // namespace graspsim
