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

#ifndef GRASPSIM_TASK_HPP_
#define GRASPSIM_TASK_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graspsim/contact.hpp"
#include "graspsim/perception.hpp"
#include "graspsim/ransac.hpp"
#include "graspsim/scene.hpp"

namespace graspsim
{

enum class FeedbackMethod
{
  kNoFeedback,
  kTactileOnly,
  kVisualOnly,
  kTactileVisual,
};

inline constexpr FeedbackMethod kAllMethods[] = {
  FeedbackMethod::kNoFeedback, FeedbackMethod::kTactileOnly,
  FeedbackMethod::kVisualOnly, FeedbackMethod::kTactileVisual};

inline constexpr PoseMode kAllModes[] = {PoseMode::kConstant, PoseMode::kRandom};

// Declaration order is the tie-break order for the most frequent cause.
enum class FailureCause
{
  kMissedHandle,
  kCollision,
  kNoConsensus,
  kOutOfReach,
  kNone,
};

std::string_view to_string(FeedbackMethod method);
std::string_view to_string(PoseMode mode);
std::string_view to_string(FailureCause cause);

/// Case-insensitive; accepts "Tactile" / "TactileOnly", "tactile-visual", ...
std::optional<FeedbackMethod> parse_method(std::string_view text);
std::optional<PoseMode> parse_mode(std::string_view text);

struct Tolerances
{
  double grasp_capture_radius{0.03};
  double collision_penetration_max{0.02};
  double align_tolerance{deg2rad(2.0)};

  void validate() const;
};

/// Robot, sensor and controller settings shared by every method.
struct TaskParams
{
  CameraExtrinsics camera{deg2rad(30.0), 0.0, {0.0, 0.0, 1.0}};
  RoiLimits roi;
  RansacParams ransac;
  EdgeOptions edge;
  double target_standoff{0.60};
  double standoff_tolerance{0.01};
  int max_correction_rounds{3};
  double handle_protrusion_min{0.015};
  double approach_offset{0.12};  // pre-grasp distance in front of the handle
  double grasp_depth{0.02};  // fingertip ahead of the grasp center
  double door_swing_depth{0.35};
  double occlusion_radius{0.06};
  ApproachParams approach;
  ForceSensorParams force;

  void validate() const;
};

enum class TaskState
{
  kPerceiveEdge,
  kCorrectPose,
  kDetectHandle,
  kMovePregrasp,
  kMoveGrasp,
  kOcclusionCheck,
  kApproachContact,
  kCloseGripper,
  kVerifyDoor,
  kAbort,
};

std::string_view to_string(TaskState state);

struct StepRecord
{
  TaskState state;
  std::string detail;
};

struct TrialOutcome
{
  bool success{false};
  FailureCause failure_cause{FailureCause::kNone};
  double grasp_error{0.0};  // |grasp center - true handle| at close, meters
  bool gripper_closed{false};
  double max_penetration{0.0};  // deepest fingertip excursion past the door plane
  DriftSample drift;
  std::vector<StepRecord> steps_log;
};

/**
 * @brief Runs one door-opening attempt.
 *
 *  - NoFeedback: dead-reckon the gripper to the nominal handle and close.
 *  - TactileOnly: dead-reckon to the nominal pre-grasp, advance until contact, close.
 *  - VisualOnly: edge-based pose correction (up to max_correction_rounds),
 *    handle detection, open-loop reach, close, visual door check.
 *  - TactileVisual: as VisualOnly, but the final approach is contact-driven
 *    while the gripper occludes the handle.
 *
 * Pure in (method, mode, scene.seed, trial_index, tol, params).
 */
TrialOutcome run_trial(
  FeedbackMethod method, PoseMode mode, const SceneConfig & scene, const Tolerances & tol,
  std::uint64_t trial_index, const TaskParams & params = {});

/// run_trial with a caller-supplied drift instead of sample_drift.
TrialOutcome run_trial_with_drift(
  FeedbackMethod method, const DriftSample & drift, const SceneConfig & scene,
  const Tolerances & tol, std::uint64_t trial_index, const TaskParams & params = {});

/// True iff the re-estimated standoff exceeds the pre-grasp standoff by
/// 0.9 * swing_depth. Perception failures count as "not opened".
bool verify_door_open(
  const PointCloud & post_cloud, const EdgeEstimate & pre_edge, double swing_depth,
  const RansacParams & ransac = {}, const EdgeOptions & options = {});

}  // namespace graspsim

#endif  // GRASPSIM_TASK_HPP_
