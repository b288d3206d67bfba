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

#include "graspsim/harness.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "graspsim/cloud_io.hpp"
#include "graspsim/error.hpp"
#include "graspsim/rng.hpp"

#ifndef GRASPSIM_CONFIG_DIR
#define GRASPSIM_CONFIG_DIR "configs"
#endif

namespace graspsim
{

namespace
{

using nlohmann::json;

[[noreturn]] void config_error(const std::string & field, const std::string & what)
{
  throw Error(ErrorCode::kConfig, field + ": " + what);
}

// JSON object reader that remembers which keys were consumed so typos
// surface as errors instead of silently keeping a default.
class Section
{
public:
  Section(const json & node, std::string path)
  : node_(node), path_(std::move(path))
  {
    if (!node_.is_object()) {
      config_error(path_.empty() ? "<root>" : path_, "expected an object");
    }
  }

  std::string field(const std::string & key) const
  {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json * find(const std::string & key)
  {
    const auto it = node_.find(key);
    if (it == node_.end()) {
      return nullptr;
    }
    seen_.insert(key);
    return &*it;
  }

  void number(const std::string & key, double & out)
  {
    if (const json * v = find(key)) {
      if (!v->is_number()) {
        config_error(field(key), "expected a number");
      }
      out = v->get<double>();
    }
  }

  void degrees(const std::string & key, double & radians)
  {
    double deg = rad2deg(radians);
    number(key, deg);
    radians = deg2rad(deg);
  }

  template<typename Int>
  void count(const std::string & key, Int & out)
  {
    if (const json * v = find(key)) {
      if (!v->is_number_integer() || v->get<long long>() < 0) {
        config_error(field(key), "expected a non-negative integer");
      }
      out = static_cast<Int>(v->get<unsigned long long>());
    }
  }

  void integer(const std::string & key, int & out)
  {
    if (const json * v = find(key)) {
      if (!v->is_number_integer()) {
        config_error(field(key), "expected an integer");
      }
      out = v->get<int>();
    }
  }

  void boolean(const std::string & key, bool & out)
  {
    if (const json * v = find(key)) {
      if (!v->is_boolean()) {
        config_error(field(key), "expected true or false");
      }
      out = v->get<bool>();
    }
  }

  void text(const std::string & key, std::string & out)
  {
    if (const json * v = find(key)) {
      if (!v->is_string()) {
        config_error(field(key), "expected a string");
      }
      out = v->get<std::string>();
    }
  }

  void interval(const std::string & key, Interval & out)
  {
    if (const json * v = find(key)) {
      if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number()) {
        config_error(field(key), "expected [lo, hi]");
      }
      out = {(*v)[0].get<double>(), (*v)[1].get<double>()};
    }
  }

  void point(const std::string & key, Point3 & out)
  {
    if (const json * v = find(key)) {
      if (!v->is_array() || v->size() != 3 ||
        !std::all_of(v->begin(), v->end(), [](const json & e) {return e.is_number();}))
      {
        config_error(field(key), "expected [x, y, z]");
      }
      out = {(*v)[0].get<double>(), (*v)[1].get<double>(), (*v)[2].get<double>()};
    }
  }

  template<typename Fn>
  void child(const std::string & key, Fn && fn)
  {
    if (const json * v = find(key)) {
      Section sub(*v, field(key));
      fn(sub);
      sub.finish();
    }
  }

  void finish() const
  {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.count(it.key())) {
        config_error(field(it.key()), "unknown key");
      }
    }
  }

private:
  const json & node_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_scene(Section & s, SceneConfig & c)
{
  s.number("plane_width", c.plane_width);
  s.number("plane_height", c.plane_height);
  s.number("nominal_plane_distance", c.nominal_plane_distance);
  s.point("handle_center", c.handle_center);
  s.number("handle_width", c.handle_width);
  s.number("handle_height", c.handle_height);
  s.number("handle_protrusion", c.handle_protrusion);
  s.number("floor_depth", c.floor_depth);
  s.number("noise_sigma", c.noise_sigma);
  s.count("points_per_cloud", c.points_per_cloud);
  s.interval("lateral_drift_range", c.lateral_drift_range);
  s.interval("frontal_drift_range", c.frontal_drift_range);
  s.interval("yaw_drift_range_deg", c.yaw_drift_range_deg);
  s.interval("handle_jitter_range", c.handle_jitter_range);
  s.child("constant_residual", [&c](Section & r) {
      r.boolean("enabled", c.constant_residual.enabled);
      r.number("sigma_pose", c.constant_residual.sigma_pose);
      r.number("sigma_yaw_deg", c.constant_residual.sigma_yaw_deg);
    });
}

void read_task(Section & s, TaskParams & t)
{
  s.child("camera", [&t](Section & c) {
      c.degrees("tilt_deg", t.camera.tilt);
      c.degrees("pan_deg", t.camera.pan);
      c.point("translation", t.camera.translation);
    });
  s.child("roi", [&t](Section & r) {
      r.number("min_x", t.roi.min_x);
      r.number("max_x", t.roi.max_x);
      r.number("min_y", t.roi.min_y);
      r.number("max_y", t.roi.max_y);
      r.number("min_z", t.roi.min_z);
      r.number("max_z", t.roi.max_z);
    });
  s.child("ransac", [&t](Section & r) {
      r.number("success_prob", t.ransac.success_prob);
      r.number("outlier_ratio", t.ransac.outlier_ratio);
      r.count("sample_size", t.ransac.sample_size);
      r.number("inlier_threshold", t.ransac.inlier_threshold);
      r.count("max_iterations_cap", t.ransac.max_iterations_cap);
    });
  s.child("edge", [&t](Section & e) {
      e.number("bearing_bin_deg", t.edge.bearing_bin_deg);
      e.number("refine_window_factor", t.edge.refine_window_factor);
      e.integer("max_refine_iterations", t.edge.max_refine_iterations);
    });
  s.number("target_standoff", t.target_standoff);
  s.number("standoff_tolerance", t.standoff_tolerance);
  s.integer("max_correction_rounds", t.max_correction_rounds);
  s.number("handle_protrusion_min", t.handle_protrusion_min);
  s.number("approach_offset", t.approach_offset);
  s.number("grasp_depth", t.grasp_depth);
  s.number("door_swing_depth", t.door_swing_depth);
  s.number("occlusion_radius", t.occlusion_radius);
  s.child("contact", [&t](Section & c) {
      c.number("threshold", t.approach.threshold);
      c.number("step", t.approach.step);
      c.number("max_travel", t.approach.max_travel);
      c.number("stiffness", t.force.stiffness);
      c.number("noise_sigma", t.force.noise_sigma);
    });
}

std::optional<std::vector<std::string>> name_list(Section & s, const std::string & key)
{
  const json * v = s.find(key);
  if (v == nullptr) {
    return std::nullopt;
  }
  if (!v->is_array() ||
    !std::all_of(v->begin(), v->end(), [](const json & e) {return e.is_string();}))
  {
    config_error(s.field(key), "expected a list of names");
  }
  return v->get<std::vector<std::string>>();
}

template<typename T, typename Parse>
void read_names(Section & s, const std::string & key, std::vector<T> & out, Parse parse)
{
  const auto names = name_list(s, key);
  if (!names) {
    return;
  }
  out.clear();
  for (const auto & name : *names) {
    const std::optional<T> value = parse(name);
    if (!value) {
      config_error(s.field(key), "unknown name '" + name + "'");
    }
    out.push_back(*value);
  }
}

void read_experiment(Section & s, ExperimentConfig & c)
{
  read_names(s, "methods", c.methods, [](const std::string & n) {return parse_method(n);});
  read_names(s, "modes", c.modes, [](const std::string & n) {return parse_mode(n);});
  s.count("trials_per_cell", c.trials_per_cell);
  s.count("master_seed", c.master_seed);
  s.text("output", c.output_path);
  s.text("dump_clouds", c.dump_clouds_dir);
}

std::uint64_t mode_tag(PoseMode mode) {return static_cast<std::uint64_t>(mode) + 1;}
std::uint64_t method_tag(FeedbackMethod method) {return static_cast<std::uint64_t>(method) + 1;}

std::size_t cell_rank(const CellResult & c)
{
  return static_cast<std::size_t>(c.mode) * 16 + static_cast<std::size_t>(c.method);
}

}  // namespace

void ExperimentConfig::validate() const
{
  if (trials_per_cell < 1) {
    config_error("experiment.trials_per_cell", "must be >= 1");
  }
  if (methods.empty()) {
    config_error("experiment.methods", "must name at least one method");
  }
  if (modes.empty()) {
    config_error("experiment.modes", "must name at least one mode");
  }
  scene.validate();
  tolerances.validate();
  task.validate();
}

ExperimentConfig parse_config(const std::string & json_text)
{
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error & e) {
    throw Error(ErrorCode::kConfig, std::string("<root>: invalid JSON: ") + e.what());
  }
  ExperimentConfig config;
  Section top(root, "");
  top.child("scene", [&config](Section & s) {read_scene(s, config.scene);});
  top.child("tolerances", [&config](Section & s) {
      s.number("grasp_capture_radius", config.tolerances.grasp_capture_radius);
      s.number("collision_penetration_max", config.tolerances.collision_penetration_max);
      s.degrees("align_tolerance_deg", config.tolerances.align_tolerance);
    });
  top.child("task", [&config](Section & s) {read_task(s, config.task);});
  top.child("experiment", [&config](Section & s) {read_experiment(s, config);});
  top.finish();
  return config;
}

ExperimentConfig load_config(const std::string & path_or_name)
{
  namespace fs = std::filesystem;
  std::vector<fs::path> candidates{path_or_name, path_or_name + ".json"};
  if (fs::path(path_or_name).parent_path().empty()) {
    candidates.push_back(fs::path(GRASPSIM_CONFIG_DIR) / (path_or_name + ".json"));
  }
  for (const auto & candidate : candidates) {
    std::error_code ec;
    if (!fs::is_regular_file(candidate, ec)) {
      continue;
    }
    std::ifstream in(candidate);
    if (!in) {
      throw Error(ErrorCode::kConfig, "cannot read config " + candidate.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
  }
  throw Error(ErrorCode::kConfig, "config not found: " + path_or_name);
}

void apply_seed_env(ExperimentConfig & config)
{
  const char * value = std::getenv("GRASPSIM_SEED");
  if (value == nullptr || *value == '\0') {
    return;
  }
  char * end = nullptr;
  errno = 0;
  const unsigned long long seed = std::strtoull(value, &end, 10);
  if (errno != 0 || end == value || *end != '\0' || value[0] == '-') {
    config_error("GRASPSIM_SEED", std::string("not an unsigned integer: '") + value + "'");
  }
  config.master_seed = seed;
}

double CellResult::success_rate() const
{
  return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
}

FailureCause CellResult::top_failure_cause() const
{
  FailureCause top = FailureCause::kNone;
  std::size_t best = 0;
  for (const auto & [cause, n] : failures) {
    if (cause != FailureCause::kNone && n > best) {
      best = n;
      top = cause;
    }
  }
  return top;
}

void CellResult::merge(const CellResult & other)
{
  trials += other.trials;
  successes += other.successes;
  for (const auto & [cause, n] : other.failures) {
    failures[cause] += n;
  }
}

void ResultsTable::add(PoseMode mode, FeedbackMethod method, const TrialOutcome & outcome)
{
  CellResult one;
  one.mode = mode;
  one.method = method;
  one.trials = 1;
  one.successes = outcome.success ? 1 : 0;
  if (!outcome.success) {
    one.failures[outcome.failure_cause] = 1;
  }
  auto it = std::find_if(cells.begin(), cells.end(), [&](const CellResult & c) {
        return c.mode == mode && c.method == method;
      });
  if (it != cells.end()) {
    it->merge(one);
    return;
  }
  cells.push_back(one);
  std::sort(cells.begin(), cells.end(), [](const CellResult & a, const CellResult & b) {
      return cell_rank(a) < cell_rank(b);
    });
}

const CellResult * ResultsTable::find(PoseMode mode, FeedbackMethod method) const
{
  for (const auto & c : cells) {
    if (c.mode == mode && c.method == method) {
      return &c;
    }
  }
  return nullptr;
}

std::uint64_t trial_seed(
  std::uint64_t master_seed, PoseMode mode, FeedbackMethod method, std::uint64_t index)
{
  return derive_seed(master_seed, {mode_tag(mode), method_tag(method), index});
}

ResultsTable run_experiment(const ExperimentConfig & config)
{
  config.validate();
  if (!config.dump_clouds_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(config.dump_clouds_dir, ec);
    if (ec) {
      throw Error(ErrorCode::kIo, "cannot create " + config.dump_clouds_dir + ": " +
                  ec.message());
    }
  }

  std::set<PoseMode> modes(config.modes.begin(), config.modes.end());
  std::set<FeedbackMethod> methods(config.methods.begin(), config.methods.end());
  ResultsTable table;
  for (const PoseMode mode : modes) {
    for (const FeedbackMethod method : methods) {
      for (std::size_t i = 0; i < config.trials_per_cell; ++i) {
        SceneConfig scene = config.scene;
        scene.seed = trial_seed(config.master_seed, mode, method, i);
        const TrialOutcome outcome =
          run_trial(method, mode, scene, config.tolerances, i, config.task);
        table.add(mode, method, outcome);

        if (!config.dump_clouds_dir.empty()) {
          const RenderedScene frame =
            render_cloud(scene, outcome.drift, config.task.camera, std::nullopt, i);
          std::ostringstream name;
          name << to_string(mode) << '_' << to_string(method) << '_'
               << std::setw(4) << std::setfill('0') << i << ".xyz";
          write_cloud(
            (std::filesystem::path(config.dump_clouds_dir) / name.str()).string(),
            frame.cloud, CloudFrame::kCamera);
        }
      }
    }
  }
  return table;
}

std::string format_results_csv(const ResultsTable & table)
{
  std::ostringstream out;
  out << "mode,method,trials,successes,success_rate,top_failure_cause\n";
  for (const auto & c : table.cells) {
    out << to_string(c.mode) << ',' << to_string(c.method) << ',' << c.trials << ','
        << c.successes << ',' << std::fixed << std::setprecision(2) << c.success_rate()
        << ',' << to_string(c.top_failure_cause()) << '\n';
  }
  return out.str();
}

void emit_results(const ResultsTable & table, const std::string & path)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIo, path + ": " + std::strerror(errno));
  }
  out << format_results_csv(table);
  out.flush();
  if (!out) {
    throw Error(ErrorCode::kIo, path + ": " + std::strerror(errno));
  }
}

}  // namespace graspsim
