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

// graspsim: run experiments, render clouds, estimate edge/handle offline.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "graspsim/cloud_io.hpp"
#include "graspsim/error.hpp"
#include "graspsim/harness.hpp"
#include "graspsim/perception.hpp"
#include "graspsim/scene.hpp"

namespace
{

using namespace graspsim;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitPerception = 3;

struct RunArgs
{
  std::string config{"paper_repro"};
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> methods;
  std::optional<std::string> mode;
  std::optional<std::string> out;
  std::optional<std::string> dump_clouds;
};

struct EstimateArgs
{
  std::string cloud;
  std::string config{"paper_repro"};
};

struct RenderArgs
{
  std::string config{"paper_repro"};
  std::string out;
  std::uint64_t trial{0};
  std::string mode{"random"};
  std::string frame{"camera"};
  std::optional<std::uint64_t> seed;
};

// --seed beats GRASPSIM_SEED beats the config file.
ExperimentConfig resolve_config(
  const std::string & path, const std::optional<std::uint64_t> & seed)
{
  ExperimentConfig config = load_config(path);
  apply_seed_env(config);
  if (seed) {
    config.master_seed = *seed;
  }
  return config;
}

int run(const RunArgs & args)
{
  ExperimentConfig config = resolve_config(args.config, args.seed);
  if (args.trials) {
    config.trials_per_cell = *args.trials;
  }
  if (!args.methods.empty()) {
    config.methods.clear();
    for (const auto & name : args.methods) {
      const auto m = parse_method(name);
      if (!m) {
        throw Error(ErrorCode::kConfig, "--method: unknown method '" + name + "'");
      }
      config.methods.push_back(*m);
    }
  }
  if (args.mode) {
    const auto m = parse_mode(*args.mode);
    if (!m) {
      throw Error(ErrorCode::kConfig, "--mode: unknown mode '" + *args.mode + "'");
    }
    config.modes = {*m};
  }
  if (args.out) {
    config.output_path = *args.out;
  }
  if (args.dump_clouds) {
    config.dump_clouds_dir = *args.dump_clouds;
  }

  const ResultsTable table = run_experiment(config);
  emit_results(table, config.output_path);
  std::cout << format_results_csv(table);
  return kExitOk;
}

int render(const RenderArgs & args)
{
  const ExperimentConfig config = resolve_config(args.config, args.seed);
  const auto mode = parse_mode(args.mode);
  if (!mode) {
    throw Error(ErrorCode::kConfig, "--mode: unknown mode '" + args.mode + "'");
  }
  config.validate();
  SceneConfig scene = config.scene;
  scene.seed = config.master_seed;
  const DriftSample drift = sample_drift(scene, *mode, args.trial);
  const RenderedScene frame =
    render_cloud(scene, drift, config.task.camera, std::nullopt, args.trial);
  if (args.frame == "robot") {
    write_cloud(args.out, camera_to_robot(frame.cloud, config.task.camera), CloudFrame::kRobot);
  } else {
    write_cloud(args.out, frame.cloud, CloudFrame::kCamera);
  }
  std::printf(
    "wrote %zu points to %s (true distance %.4f m, true yaw %.3f deg)\n",
    frame.cloud.size(), args.out.c_str(), frame.truth.true_plane_distance,
    rad2deg(frame.truth.true_plane_yaw));
  return kExitOk;
}

int estimate(const EstimateArgs & args)
{
  const ExperimentConfig config = load_config(args.config);
  config.validate();
  const TaskParams & task = config.task;
  const FramedCloud input = read_cloud(args.cloud);
  const PointCloud robot = input.frame == CloudFrame::kCamera ?
    camera_to_robot(input.points, task.camera) : input.points;
  const PointCloud cloud = crop_roi(robot, task.roi);

  try {
    const EdgeEstimate edge = estimate_edge(cloud, task.ransac, task.edge);
    std::printf("omega_deg %.4f\n", rad2deg(edge.omega));
    std::printf("standoff_m %.4f\n", edge.standoff_distance);
    std::printf("edge_inliers %zu\n", edge.inlier_count);
    if (std::abs(edge.omega) > config.tolerances.align_tolerance) {
      // The closest-point test assumes the camera faces the door squarely.
      std::fprintf(stderr, "note: |omega| above %.2f deg, p_c may sit on the door edge\n",
        rad2deg(config.tolerances.align_tolerance));
    }
    const HandleEstimate handle = detect_handle(cloud, task.roi, task.handle_protrusion_min);
    std::printf(
      "p_c %.4f %.4f %.4f\n", handle.position.x, handle.position.y, handle.position.z);
    std::printf("handle_margin_m %.4f\n", handle.margin);
  } catch (const Error & e) {
    std::fprintf(stderr, "estimate: %s: %s\n", to_string(e.code()), e.what());
    return kExitPerception;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Door-grasp simulation with visual and tactile feedback"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto * run_cmd = app.add_subcommand("run", "Run the Monte Carlo experiment");
  run_cmd->add_option("--config", run_args.config, "Config file or shipped config name")
  ->capture_default_str();
  run_cmd->add_option("--trials", run_args.trials, "Trials per (mode, method) cell");
  run_cmd->add_option("--seed", run_args.seed, "Master seed");
  run_cmd->add_option("--method", run_args.methods, "Feedback method (repeatable)");
  run_cmd->add_option("--mode", run_args.mode, "constant or random");
  run_cmd->add_option("--out", run_args.out, "Results CSV path");
  run_cmd->add_option("--dump-clouds", run_args.dump_clouds, "Directory for per-trial clouds");

  EstimateArgs est_args;
  auto * est_cmd = app.add_subcommand("estimate", "Edge and handle estimate on a dumped cloud");
  est_cmd->add_option("--cloud", est_args.cloud, "Cloud file")->required();
  est_cmd->add_option("--config", est_args.config, "Config file or shipped config name")
  ->capture_default_str();

  RenderArgs render_args;
  auto * render_cmd = app.add_subcommand("render", "Dump one synthetic cloud");
  render_cmd->add_option("--config", render_args.config, "Config file or shipped config name")
  ->capture_default_str();
  render_cmd->add_option("--out", render_args.out, "Output cloud file")->required();
  render_cmd->add_option("--trial", render_args.trial, "Trial index")->capture_default_str();
  render_cmd->add_option("--mode", render_args.mode, "constant or random")
  ->capture_default_str();
  render_cmd->add_option("--frame", render_args.frame, "Output frame")
  ->check(CLI::IsMember({"camera", "robot"}))
  ->capture_default_str();
  render_cmd->add_option("--seed", render_args.seed, "Scene seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run_cmd) {
      return run(run_args);
    }
    if (*est_cmd) {
      return estimate(est_args);
    }
    return render(render_args);
  } catch (const Error & e) {
    std::fprintf(stderr, "graspsim: %s: %s\n", to_string(e.code()), e.what());
    return e.code() == ErrorCode::kConfig || e.code() == ErrorCode::kIo ?
           kExitConfig : kExitPerception;
  }
}
