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

#include "graspsim/task.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <string>

#include "graspsim/error.hpp"
#include "graspsim/rng.hpp"

namespace graspsim
{

namespace
{

std::string normalize(std::string_view text)
{
  std::string out;
  for (const char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  return out;
}

std::string fmt(const char * format, double a, double b = 0.0, double c = 0.0)
{
  char buf[160];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

/// Per-trial simulation state. The robot only ever sees rendered clouds and
/// force readings; `truth` is consulted for rendering, contact and scoring.
class Trial
{
public:
  Trial(
    FeedbackMethod method, const DriftSample & drift, const SceneConfig & scene,
    const Tolerances & tol, std::uint64_t index, const TaskParams & params)
  : method_(method), scene_(scene), tol_(tol), params_(params), index_(index),
    pose_(pose_from_drift(drift)),
    sensor_(params.force, derive_seed(scene.seed, {tag(Stream::kForce), index}))
  {
    outcome_.drift = drift;
  }

  TrialOutcome run()
  {
    switch (method_) {
      case FeedbackMethod::kNoFeedback:
        run_no_feedback();
        break;
      case FeedbackMethod::kTactileOnly:
        run_tactile_only();
        break;
      case FeedbackMethod::kVisualOnly:
      case FeedbackMethod::kTactileVisual:
        run_visual();
        break;
    }
    return outcome_;
  }

private:
  static constexpr Point3 kAxis{1.0, 0.0, 0.0};

  GroundTruth truth(double door_offset = 0.0) const
  {
    return ground_truth(scene_, outcome_.drift, pose_, door_offset);
  }

  void log(TaskState state, std::string detail = {})
  {
    outcome_.steps_log.push_back({state, std::move(detail)});
  }

  void fail(FailureCause cause, const std::string & why)
  {
    outcome_.success = false;
    outcome_.failure_cause = cause;
    log(TaskState::kAbort, why);
  }

  // Nominal handle center in the robot frame, as given by the map.
  Point3 nominal_handle() const
  {
    return {
      scene_.nominal_plane_distance - 0.5 * scene_.handle_protrusion,
      scene_.handle_center.x, scene_.handle_center.y};
  }

  Point3 tip_for(const Point3 & center) const {return center + kAxis * params_.grasp_depth;}

  void move_grasp_center(TaskState state, const Point3 & center)
  {
    grasp_center_ = center;
    const double depth = truth().penetration(tip_for(center));
    outcome_.max_penetration = std::max(outcome_.max_penetration, depth);
    log(state, fmt("center=(%.4f, %.4f, %.4f)", center.x, center.y, center.z));
  }

  PointCloud perceive(const RenderOptions & options = {})
  {
    const std::uint64_t seed = renders_ == 0 ?
      derive_seed(scene_.seed, {tag(Stream::kRender), index_}) :
      derive_seed(scene_.seed, {tag(Stream::kRender), index_, renders_});
    ++renders_;
    const RenderedScene frame =
      render_scene(scene_, outcome_.drift, pose_, params_.camera, options, seed);
    return crop_roi(camera_to_robot(frame.cloud, params_.camera), params_.roi);
  }

  EdgeEstimate edge_of(const PointCloud & cloud)
  {
    RansacParams ransac = params_.ransac;
    ransac.seed = derive_seed(scene_.seed, {tag(Stream::kRansac), index_, fits_++});
    return estimate_edge(cloud, ransac, params_.edge);
  }

  bool aligned(const EdgeEstimate & edge) const
  {
    return std::abs(edge.omega) <= tol_.align_tolerance &&
           std::abs(edge.standoff_distance - params_.target_standoff) <=
           params_.standoff_tolerance;
  }

  void close_gripper()
  {
    outcome_.gripper_closed = true;
    log(TaskState::kCloseGripper);
  }

  // Scores the closed grasp; true when it holds the handle without collision.
  bool score_grasp()
  {
    const GroundTruth now = truth();
    outcome_.grasp_error = distance(grasp_center_, now.true_handle_position);
    if (outcome_.max_penetration > tol_.collision_penetration_max) {
      fail(FailureCause::kCollision,
           fmt("penetrated %.4f m past the door plane", outcome_.max_penetration));
      return false;
    }
    if (!outcome_.gripper_closed) {
      return false;
    }
    if (outcome_.grasp_error > tol_.grasp_capture_radius) {
      fail(FailureCause::kMissedHandle, fmt("grasp error %.4f m", outcome_.grasp_error));
      return false;
    }
    outcome_.success = true;
    outcome_.failure_cause = FailureCause::kNone;
    return true;
  }

  bool approach_by_contact(const Point3 & pregrasp_center)
  {
    GripperState gripper;
    gripper.position = tip_for(pregrasp_center);
    gripper.approach_axis = kAxis;
    const ContactResult contact =
      advance_until_contact(gripper, truth(), params_.approach, sensor_);
    const Point3 tip = contact.contact_position;
    outcome_.max_penetration = std::max(
      outcome_.max_penetration,
      truth().penetration(gripper.position + kAxis * contact.peak_travel));
    log(TaskState::kApproachContact,
        fmt("travel=%.4f fx=%.3f contacted=%.0f", contact.travel, contact.final_reading.fx,
        contact.contacted ? 1.0 : 0.0));
    if (!contact.contacted) {
      grasp_center_ = tip - kAxis * params_.grasp_depth;
      fail(FailureCause::kOutOfReach, "no contact within max travel");
      return false;
    }
    grasp_center_ = tip - kAxis * params_.grasp_depth;
    return true;
  }

  void run_no_feedback()
  {
    const Point3 target = nominal_handle();
    move_grasp_center(TaskState::kMovePregrasp, target - kAxis * params_.approach_offset);
    move_grasp_center(TaskState::kMoveGrasp, target);
    close_gripper();
    score_grasp();
  }

  void run_tactile_only()
  {
    const Point3 pregrasp = nominal_handle() - kAxis * params_.approach_offset;
    move_grasp_center(TaskState::kMovePregrasp, pregrasp);
    if (!approach_by_contact(pregrasp)) {
      score_grasp();
      return;
    }
    close_gripper();
    score_grasp();
  }

  void run_visual()
  {
    const bool tactile = method_ == FeedbackMethod::kTactileVisual;
    EdgeEstimate edge;
    PointCloud cloud;
    try {
      cloud = perceive();
      edge = edge_of(cloud);
      log(TaskState::kPerceiveEdge,
          fmt("omega=%.3f deg standoff=%.4f", rad2deg(edge.omega), edge.standoff_distance));
      for (int round = 0; round < params_.max_correction_rounds && !aligned(edge); ++round) {
        const PoseDelta delta = pose_correction(edge, params_.target_standoff);
        pose_ = apply_motion(pose_, delta.rotate_by, delta.advance_by);
        log(TaskState::kCorrectPose,
            fmt("rotate=%.3f deg advance=%.4f", rad2deg(delta.rotate_by), delta.advance_by));
        cloud = perceive();
        edge = edge_of(cloud);
        log(TaskState::kPerceiveEdge,
            fmt("omega=%.3f deg standoff=%.4f", rad2deg(edge.omega), edge.standoff_distance));
      }
    } catch (const Error & e) {
      fail(FailureCause::kNoConsensus, e.what());
      return;
    }
    if (std::abs(edge.omega) > tol_.align_tolerance) {
      fail(FailureCause::kNoConsensus, "pose correction did not converge");
      return;
    }

    HandleEstimate handle;
    try {
      handle = detect_handle(cloud, params_.roi, params_.handle_protrusion_min);
    } catch (const Error & e) {
      fail(FailureCause::kNoConsensus, e.what());
      return;
    }
    log(TaskState::kDetectHandle,
        fmt("p_c.x=%.4f margin=%.4f", handle.position.x, handle.margin));

    const Point3 target = handle.grasp_center;
    const Point3 pregrasp = target - kAxis * params_.approach_offset;
    move_grasp_center(TaskState::kMovePregrasp, pregrasp);

    if (tactile) {
      // The hand now hides the handle from the head camera; the door edge
      // stays visible and only confirms the alignment.
      RenderOptions occluded;
      occluded.occlusion = GripperOcclusionSpec{pregrasp, params_.occlusion_radius};
      const PointCloud view = perceive(occluded);
      std::string detail;
      try {
        const EdgeEstimate recheck = edge_of(view);
        detail = fmt("edge omega=%.3f deg standoff=%.4f", rad2deg(recheck.omega),
            recheck.standoff_distance);
      } catch (const Error & e) {
        detail = std::string("edge lost: ") + e.what();
      }
      try {
        const HandleEstimate seen =
          detect_handle(view, params_.roi, params_.handle_protrusion_min);
        detail += fmt("; closest point %.4f m from handle estimate",
            distance(seen.grasp_center, target));
      } catch (const Error & e) {
        detail += std::string("; handle hidden: ") + e.what();
      }
      log(TaskState::kOcclusionCheck, detail);
      if (!approach_by_contact(pregrasp)) {
        score_grasp();
        return;
      }
    } else {
      move_grasp_center(TaskState::kMoveGrasp, target);
    }
    close_gripper();
    if (!score_grasp()) {
      return;
    }

    RenderOptions opened;
    opened.door_offset = params_.door_swing_depth;
    RansacParams ransac = params_.ransac;
    ransac.seed = derive_seed(scene_.seed, {tag(Stream::kRansac), index_, fits_++});
    const bool open = verify_door_open(
      perceive(opened), edge, params_.door_swing_depth, ransac, params_.edge);
    log(TaskState::kVerifyDoor, open ? "door open" : "door still closed");
    if (!open) {
      fail(FailureCause::kMissedHandle, "door-open verification failed");
    }
  }

  FeedbackMethod method_;
  const SceneConfig & scene_;
  const Tolerances & tol_;
  const TaskParams & params_;
  std::uint64_t index_;
  RobotPose pose_;
  ForceSensor sensor_;
  TrialOutcome outcome_;
  Point3 grasp_center_;
  std::uint64_t renders_{0};
  std::uint64_t fits_{0};
};

}  // namespace

std::string_view to_string(FeedbackMethod method)
{
  switch (method) {
    case FeedbackMethod::kNoFeedback: return "NoFeedback";
    case FeedbackMethod::kTactileOnly: return "Tactile";
    case FeedbackMethod::kVisualOnly: return "Visual";
    case FeedbackMethod::kTactileVisual: return "TactileVisual";
  }
  return "?";
}

std::string_view to_string(PoseMode mode)
{
  return mode == PoseMode::kConstant ? "Constant" : "Random";
}

std::string_view to_string(FailureCause cause)
{
  switch (cause) {
    case FailureCause::kMissedHandle: return "MissedHandle";
    case FailureCause::kCollision: return "Collision";
    case FailureCause::kNoConsensus: return "NoConsensus";
    case FailureCause::kOutOfReach: return "OutOfReach";
    case FailureCause::kNone: return "None";
  }
  return "?";
}

std::string_view to_string(TaskState state)
{
  switch (state) {
    case TaskState::kPerceiveEdge: return "perceive_edge";
    case TaskState::kCorrectPose: return "correct_pose";
    case TaskState::kDetectHandle: return "detect_handle";
    case TaskState::kMovePregrasp: return "move_pregrasp";
    case TaskState::kMoveGrasp: return "move_grasp";
    case TaskState::kOcclusionCheck: return "occlusion_check";
    case TaskState::kApproachContact: return "approach_contact";
    case TaskState::kCloseGripper: return "close_gripper";
    case TaskState::kVerifyDoor: return "verify_door";
    case TaskState::kAbort: return "abort";
  }
  return "?";
}

std::optional<FeedbackMethod> parse_method(std::string_view text)
{
  const std::string key = normalize(text);
  if (key == "nofeedback" || key == "none") {
    return FeedbackMethod::kNoFeedback;
  }
  if (key == "tactile" || key == "tactileonly") {
    return FeedbackMethod::kTactileOnly;
  }
  if (key == "visual" || key == "visualonly") {
    return FeedbackMethod::kVisualOnly;
  }
  if (key == "tactilevisual" || key == "visualtactile") {
    return FeedbackMethod::kTactileVisual;
  }
  return std::nullopt;
}

std::optional<PoseMode> parse_mode(std::string_view text)
{
  const std::string key = normalize(text);
  if (key == "constant") {
    return PoseMode::kConstant;
  }
  if (key == "random") {
    return PoseMode::kRandom;
  }
  return std::nullopt;
}

void Tolerances::validate() const
{
  if (!(grasp_capture_radius > 0.0)) {
    throw Error(ErrorCode::kConfig, "tolerances.grasp_capture_radius: must be > 0");
  }
  if (!(collision_penetration_max > 0.0)) {
    throw Error(ErrorCode::kConfig, "tolerances.collision_penetration_max: must be > 0");
  }
  if (!(align_tolerance > 0.0)) {
    throw Error(ErrorCode::kConfig, "tolerances.align_tolerance_deg: must be > 0");
  }
}

void TaskParams::validate() const
{
  auto require = [](bool ok, const char * what) {
      if (!ok) {
        throw Error(ErrorCode::kConfig, std::string("task.") + what);
      }
    };
  try {
    camera.validate();
    ransac.validate();
  } catch (const Error & e) {
    throw Error(ErrorCode::kConfig, std::string("task: ") + e.what());
  }
  roi.validate();
  require(edge.bearing_bin_deg > 0.0, "bearing_bin_deg: must be > 0");
  require(target_standoff > 0.0, "target_standoff: must be > 0");
  require(standoff_tolerance > 0.0, "standoff_tolerance: must be > 0");
  require(max_correction_rounds >= 0, "max_correction_rounds: must be >= 0");
  require(handle_protrusion_min > ransac.inlier_threshold,
          "handle_protrusion_min: must exceed the RANSAC inlier threshold");
  require(approach_offset >= 0.0, "approach_offset: must be >= 0");
  require(grasp_depth >= 0.0, "grasp_depth: must be >= 0");
  require(door_swing_depth > 0.0, "door_swing_depth: must be > 0");
  require(occlusion_radius >= 0.0, "occlusion_radius: must be >= 0");
  require(approach.step > 0.0, "contact.step: must be > 0");
  require(approach.max_travel >= 0.0, "contact.max_travel: must be >= 0");
  require(approach.threshold > 3.0 * force.noise_sigma,
          "contact.threshold: must exceed 3 sigma of the force noise");
  require(force.stiffness > 0.0, "contact.stiffness: must be > 0");
  require(force.noise_sigma >= 0.0, "contact.noise_sigma: must be >= 0");
}

bool verify_door_open(
  const PointCloud & post_cloud, const EdgeEstimate & pre_edge, double swing_depth,
  const RansacParams & ransac, const EdgeOptions & options)
{
  if (post_cloud.empty()) {
    return false;
  }
  try {
    const EdgeEstimate post = estimate_edge(post_cloud, ransac, options);
    return post.standoff_distance > pre_edge.standoff_distance + 0.9 * swing_depth;
  } catch (const Error &) {
    return false;
  }
}

TrialOutcome run_trial_with_drift(
  FeedbackMethod method, const DriftSample & drift, const SceneConfig & scene,
  const Tolerances & tol, std::uint64_t trial_index, const TaskParams & params)
{
  return Trial(method, drift, scene, tol, trial_index, params).run();
}

TrialOutcome run_trial(
  FeedbackMethod method, PoseMode mode, const SceneConfig & scene, const Tolerances & tol,
  std::uint64_t trial_index, const TaskParams & params)
{
  return run_trial_with_drift(
    method, sample_drift(scene, mode, trial_index), scene, tol, trial_index, params);
}

}  // namespace graspsim
