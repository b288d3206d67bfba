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

#include "graspsim/ransac.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>

#include "graspsim/error.hpp"

namespace graspsim
{

namespace
{

Point3 flatten(const Point3 & p) {return {p.x, p.y, 0.0};}

Point3 canonical_direction(Point3 d)
{
  d.z = 0.0;
  d = d / d.norm();
  if (d.y < 0.0 || (d.y == 0.0 && d.x < 0.0)) {
    d = -d;
  }
  return d;
}

void set_extremes(
  LineModel & line, std::span<const Point3> points, std::span<const std::size_t> indices)
{
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const std::size_t i : indices) {
    const Point3 q = flatten(points[i]);
    const double t = (q - line.support_a).dot(line.direction);
    if (t < lo) {
      lo = t;
      line.extreme_points[0] = q;
    }
    if (t > hi) {
      hi = t;
      line.extreme_points[1] = q;
    }
  }
}

struct Hypothesis
{
  LineModel line;
  std::vector<std::size_t> inliers;
  double mean_distance{0.0};
  std::size_t iteration{0};
};

// Strict ordering: more inliers, then tighter fit, then earlier draw.
bool better(const Hypothesis & a, const Hypothesis & b)
{
  if (a.inliers.size() != b.inliers.size()) {
    return a.inliers.size() > b.inliers.size();
  }
  if (a.mean_distance != b.mean_distance) {
    return a.mean_distance < b.mean_distance;
  }
  return a.iteration < b.iteration;
}

std::optional<Hypothesis> score(
  std::span<const Point3> points, const Point3 & a, const Point3 & b,
  double threshold, std::size_t iteration)
{
  const Point3 fa = flatten(a);
  const Point3 fb = flatten(b);
  if ((fb - fa).norm() < kDegenerateLineTolerance) {
    return std::nullopt;
  }
  Hypothesis h;
  h.line = line_through(fa, fb);
  h.iteration = iteration;
  double sum = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = point_line_distance(fa, fb, flatten(points[i]));
    if (d <= threshold) {
      h.inliers.push_back(i);
      sum += d;
    }
  }
  h.mean_distance = h.inliers.empty() ? 0.0 : sum / static_cast<double>(h.inliers.size());
  return h;
}

}  // namespace

void RansacParams::validate() const
{
  if (!(success_prob > 0.0 && success_prob < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "ransac.success_prob must lie in (0, 1)");
  }
  if (!(outlier_ratio >= 0.0 && outlier_ratio < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "ransac.outlier_ratio must lie in [0, 1)");
  }
  if (sample_size < 2) {
    throw Error(ErrorCode::kInvalidArgument, "ransac.sample_size must be >= 2");
  }
  if (!(inlier_threshold > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "ransac.inlier_threshold must be > 0");
  }
  if (max_iterations_cap < 1) {
    throw Error(ErrorCode::kInvalidArgument, "ransac.max_iterations_cap must be >= 1");
  }
}

std::size_t required_iterations(double p, double eps, std::size_t s)
{
  if (!(p > 0.0 && p < 1.0) || !(eps >= 0.0 && eps < 1.0) || s < 1) {
    throw Error(ErrorCode::kDomain, "required_iterations: p in (0,1), eps in [0,1), s >= 1");
  }
  if (eps == 0.0) {
    return 1;  // outlier-free data: any draw succeeds
  }
  // log(1 - (1 - eps)^s) via log1p/expm1; the naive form loses the last
  // bits and can round an exact-boundary ratio down by one.
  const double log_all_inlier = static_cast<double>(s) * std::log1p(-eps);
  const double miss = log_all_inlier > -std::log(2.0) ?
    std::log(-std::expm1(log_all_inlier)) :
    std::log1p(-std::exp(log_all_inlier));
  if (!(miss < 0.0)) {
    throw Error(ErrorCode::kDomain, "required_iterations: (1 - eps)^s underflows to 0");
  }
  const double n = std::ceil(std::log1p(-p) / miss);
  if (!(n < 1e18)) {
    throw Error(ErrorCode::kDomain, "required_iterations: iteration count overflows");
  }
  return std::max<std::size_t>(1, static_cast<std::size_t>(n));
}

double xy_distance(const LineModel & line, const Point3 & q)
{
  return point_line_distance(line.support_a, line.support_b, flatten(q));
}

LineModel line_through(const Point3 & a, const Point3 & b)
{
  const Point3 fa = flatten(a);
  const Point3 fb = flatten(b);
  if ((fb - fa).norm() < kDegenerateLineTolerance) {
    throw Error(ErrorCode::kDegenerateLine, "line support points coincide");
  }
  LineModel line;
  line.support_a = fa;
  line.support_b = fb;
  line.direction = canonical_direction(fb - fa);
  line.extreme_points = {fa, fb};
  return line;
}

LineModel fit_total_least_squares(
  std::span<const Point3> points, std::span<const std::size_t> indices)
{
  if (indices.size() < 2) {
    throw Error(ErrorCode::kInsufficientPoints, "total least squares needs >= 2 points");
  }
  double cx = 0.0;
  double cy = 0.0;
  for (const std::size_t i : indices) {
    cx += points[i].x;
    cy += points[i].y;
  }
  const double n = static_cast<double>(indices.size());
  cx /= n;
  cy /= n;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (const std::size_t i : indices) {
    const double dx = points[i].x - cx;
    const double dy = points[i].y - cy;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx + syy < kDegenerateLineTolerance * kDegenerateLineTolerance) {
    throw Error(ErrorCode::kDegenerateLine, "all points coincide");
  }
  // Major axis of the 2x2 scatter matrix.
  const double angle = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  LineModel line;
  line.direction = canonical_direction({std::cos(angle), std::sin(angle), 0.0});
  line.support_a = {cx, cy, 0.0};
  line.support_b = line.support_a + line.direction;
  set_extremes(line, points, indices);
  return line;
}

std::vector<std::size_t> collect_inliers(
  std::span<const Point3> points, const LineModel & line, double threshold)
{
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (xy_distance(line, points[i]) <= threshold) {
      out.push_back(i);
    }
  }
  return out;
}

FitResult fit_line(std::span<const Point3> points, const RansacParams & params)
{
  params.validate();
  const std::size_t n = points.size();
  if (n < params.sample_size || n < 2) {
    throw Error(ErrorCode::kInsufficientPoints,
                "fit_line needs >= " + std::to_string(params.sample_size) + " points, got " +
                std::to_string(n));
  }
  for (const auto & p : points) {
    if (!p.is_finite()) {
      throw Error(ErrorCode::kInvalidArgument, "fit_line: non-finite point");
    }
  }

  const std::size_t budget = std::min(
    required_iterations(params.success_prob, params.outlier_ratio, params.sample_size),
    params.max_iterations_cap);
  const double threshold = params.inlier_threshold;

  std::optional<Hypothesis> best;
  auto consider = [&](std::optional<Hypothesis> h) {
      if (h && (!best || better(*h, *best))) {
        best = std::move(h);
      }
    };

  std::size_t iterations = 0;
  const std::size_t pair_count = n * (n - 1) / 2;
  if (params.sample_size == 2 && pair_count <= params.max_iterations_cap) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        consider(score(points, points[i], points[j], threshold, iterations++));
      }
    }
  } else {
    std::mt19937_64 rng(params.seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<std::size_t> sample;
    for (; iterations < budget; ++iterations) {
      sample.clear();
      while (sample.size() < params.sample_size) {
        const std::size_t k = pick(rng);
        if (std::find(sample.begin(), sample.end(), k) == sample.end()) {
          sample.push_back(k);
        }
      }
      consider(score(points, points[sample[0]], points[sample[1]], threshold, iterations));
    }
  }

  if (!best || best->inliers.size() < 2 * params.sample_size) {
    throw Error(ErrorCode::kNoConsensus,
                "fit_line: best consensus has " +
                std::to_string(best ? best->inliers.size() : 0) + " inliers, need " +
                std::to_string(2 * params.sample_size));
  }

  FitResult result;
  result.iterations_used = iterations;
  result.inlier_indices = best->inliers;
  result.model = best->line;
  set_extremes(result.model, points, result.inlier_indices);

  const LineModel refit = fit_total_least_squares(points, result.inlier_indices);
  const bool consistent = std::all_of(
    result.inlier_indices.begin(), result.inlier_indices.end(),
    [&](std::size_t i) {return xy_distance(refit, points[i]) <= threshold;});
  if (consistent) {
    result.model = refit;
  }
  return result;
}

}  // namespace graspsim
