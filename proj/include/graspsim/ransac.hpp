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

#ifndef GRASPSIM_RANSAC_HPP_
#define GRASPSIM_RANSAC_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "graspsim/geometry.hpp"

namespace graspsim
{

struct RansacParams
{
  double success_prob{0.99};  // p
  double outlier_ratio{0.5};  // epsilon
  std::size_t sample_size{2};  // s, minimal sample for a line
  double inlier_threshold{0.01};  // MIN, meters
  std::size_t max_iterations_cap{1000};
  std::uint64_t seed{0};

  void validate() const;
};

struct FitResult
{
  LineModel model;
  std::vector<std::size_t> inlier_indices;  // ascending
  std::size_t iterations_used{0};
};

/**
 * @brief Number of draws needed to hit an outlier-free sample with
 * probability p: ceil(log(1 - p) / log(1 - (1 - eps)^s)), at least 1.
 *
 * eps == 0 needs a single draw. Throws Error(kDomain) when the arguments
 * leave the formula undefined.
 */
std::size_t required_iterations(double p, double eps, std::size_t s);

/**
 * @brief Robust line fit over the XY projection of `points` (z is ignored).
 *
 * Draws N = min(required_iterations, cap) minimal samples; each hypothesis
 * is the line through the first two sampled points and is scored by its
 * inlier count within `inlier_threshold`. Ties go to the lower mean inlier
 * distance, then to the earlier hypothesis. When every point pair fits in
 * the iteration cap (and s == 2) all pairs are enumerated instead of sampled.
 *
 * The winning consensus set is refit by total least squares; the refit is
 * kept only if every consensus point stays within the threshold of it.
 *
 * Throws Error(kInsufficientPoints) or Error(kNoConsensus) (best consensus
 * below 2 * sample_size).
 */
FitResult fit_line(std::span<const Point3> points, const RansacParams & params);

/// Line through two XY points; throws Error(kDegenerateLine) if they coincide.
LineModel line_through(const Point3 & a, const Point3 & b);

/// Orthogonal-regression line through the XY projection of the selected points.
/// Extreme points are the selected points at min / max projection.
LineModel fit_total_least_squares(
  std::span<const Point3> points,
  std::span<const std::size_t> indices);

/// Points whose XY distance to `line` is at most `threshold`, ascending.
std::vector<std::size_t> collect_inliers(
  std::span<const Point3> points, const LineModel & line, double threshold);

/// Perpendicular distance in the XY plane.
double xy_distance(const LineModel & line, const Point3 & q);

}  // namespace graspsim

#endif  // GRASPSIM_RANSAC_HPP_
