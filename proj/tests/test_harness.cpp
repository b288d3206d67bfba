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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "graspsim/error.hpp"
#include "graspsim/harness.hpp"

using namespace graspsim;

namespace
{

std::string slurp(const std::string & path)
{
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ErrorCode config_error_code(const std::string & text)
{
  try {
    parse_config(text);
  } catch (const Error & e) {
    return e.code();
  }
  return ErrorCode::kIo;  // no error at all
}

std::string config_error_text(const std::string & text)
{
  try {
    parse_config(text);
  } catch (const Error & e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("empty JSON object keeps defaults")
{
  const ExperimentConfig c = parse_config("{}");
  CHECK(c.trials_per_cell == 10);
  CHECK(c.master_seed == 42);
  CHECK(c.methods.size() == 4);
  CHECK(c.modes.size() == 2);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("degree fields convert at the boundary")
{
  const ExperimentConfig c = parse_config(
    R"({"tolerances": {"align_tolerance_deg": 4.0},
        "task": {"camera": {"tilt_deg": 45.0}},
        "scene": {"yaw_drift_range_deg": [-5, 5]}})");
  CHECK(c.tolerances.align_tolerance == doctest::Approx(deg2rad(4.0)));
  CHECK(c.task.camera.tilt == doctest::Approx(deg2rad(45.0)));
  CHECK(c.scene.yaw_drift_range_deg.hi == 5.0);
}

TEST_CASE("config errors name the field")
{
  CHECK(config_error_code("{") == ErrorCode::kConfig);
  CHECK(config_error_text(R"({"scene": {"noise": 0.1}})").find("scene.noise") !=
    std::string::npos);
  CHECK(config_error_text(R"({"scene": {"noise_sigma": "loud"}})").find("scene.noise_sigma") !=
    std::string::npos);
  CHECK(config_error_text(R"({"experiment": {"methods": ["Sonar"]}})").find("methods") !=
    std::string::npos);
  CHECK(config_error_code(R"({"experiment": {"trials_per_cell": -1}})") == ErrorCode::kConfig);

  ExperimentConfig zero = parse_config(R"({"experiment": {"trials_per_cell": 0}})");
  try {
    zero.validate();
    FAIL("expected validation error");
  } catch (const Error & e) {
    CHECK(e.code() == ErrorCode::kConfig);
    CHECK(std::string(e.what()).find("trials_per_cell") != std::string::npos);
  }
  ExperimentConfig no_methods = parse_config(R"({"experiment": {"methods": []}})");
  CHECK_THROWS_AS(no_methods.validate(), Error);
}

TEST_CASE("shipped config loads by name")
{
  const ExperimentConfig c = load_config("paper_repro");
  CHECK(c.trials_per_cell == 10);
  CHECK(c.scene.constant_residual.enabled);
  CHECK_NOTHROW(c.validate());
  CHECK_THROWS_AS(load_config("no_such_config"), Error);
}

TEST_CASE("seed environment variable")
{
  ExperimentConfig c;
  ::setenv("GRASPSIM_SEED", "977", 1);
  apply_seed_env(c);
  CHECK(c.master_seed == 977);
  ::setenv("GRASPSIM_SEED", "12abc", 1);
  CHECK_THROWS_AS(apply_seed_env(c), Error);
  ::unsetenv("GRASPSIM_SEED");
  apply_seed_env(c);
  CHECK(c.master_seed == 977);
}

TEST_CASE("trial seeds are distinct")
{
  std::set<std::uint64_t> seen;
  std::size_t n = 0;
  for (PoseMode mode : kAllModes) {
    for (FeedbackMethod m : kAllMethods) {
      for (std::uint64_t i = 0; i < 5000; ++i) {
        seen.insert(trial_seed(42, mode, m, i));
        ++n;
      }
    }
  }
  CHECK(seen.size() == n);
}

TEST_CASE("cell statistics")
{
  CellResult c;
  CHECK(c.top_failure_cause() == FailureCause::kNone);
  c.trials = 3;
  c.successes = 1;
  c.failures[FailureCause::kCollision] = 1;
  c.failures[FailureCause::kMissedHandle] = 1;
  CHECK(c.success_rate() == 1.0 / 3.0);
  CHECK(c.top_failure_cause() == FailureCause::kMissedHandle);
  c.failures[FailureCause::kCollision] = 2;
  CHECK(c.top_failure_cause() == FailureCause::kCollision);
}

TEST_CASE("table keeps canonical order")
{
  ResultsTable t;
  TrialOutcome ok;
  ok.success = true;
  t.add(PoseMode::kRandom, FeedbackMethod::kTactileVisual, ok);
  t.add(PoseMode::kConstant, FeedbackMethod::kVisualOnly, ok);
  t.add(PoseMode::kConstant, FeedbackMethod::kNoFeedback, ok);
  t.add(PoseMode::kConstant, FeedbackMethod::kNoFeedback, ok);
  REQUIRE(t.cells.size() == 3);
  CHECK(t.cells[0].method == FeedbackMethod::kNoFeedback);
  CHECK(t.cells[0].trials == 2);
  CHECK(t.cells[1].method == FeedbackMethod::kVisualOnly);
  CHECK(t.cells[2].mode == PoseMode::kRandom);
  CHECK(t.find(PoseMode::kRandom, FeedbackMethod::kNoFeedback) == nullptr);
}

TEST_CASE("CSV format")
{
  CHECK(format_results_csv({}) == "mode,method,trials,successes,success_rate,top_failure_cause\n");
  ResultsTable t;
  TrialOutcome ok;
  ok.success = true;
  t.add(PoseMode::kConstant, FeedbackMethod::kVisualOnly, ok);
  CHECK(format_results_csv(t) ==
    "mode,method,trials,successes,success_rate,top_failure_cause\n"
    "Constant,Visual,1,1,1.00,None\n");
}

TEST_CASE("experiment run and emit")
{
  ExperimentConfig c = load_config("paper_repro");
  c.trials_per_cell = 2;
  const ResultsTable t = run_experiment(c);
  CHECK(t.cells.size() == 8);
  for (const auto & cell : t.cells) {
    CHECK(cell.trials == 2);
  }
  const auto path = (std::filesystem::temp_directory_path() / "graspsim_test.csv").string();
  emit_results(t, path);
  const std::string text = slurp(path);
  CHECK(text == format_results_csv(t));
  CHECK(std::count(text.begin(), text.end(), '\n') == 9);
  std::remove(path.c_str());

  try {
    emit_results(t, "/nonexistent-dir/out.csv");
    FAIL("expected an I/O error");
  } catch (const Error & e) {
    CHECK(e.code() == ErrorCode::kIo);
    CHECK(std::string(e.what()).find("No such file") != std::string::npos);
  }
}

TEST_CASE("experiment subsets and cloud dumps")
{
  ExperimentConfig c;
  c.trials_per_cell = 1;
  c.methods = {FeedbackMethod::kVisualOnly, FeedbackMethod::kNoFeedback};
  c.modes = {PoseMode::kRandom};
  const auto dir = std::filesystem::temp_directory_path() / "graspsim_dump_test";
  std::filesystem::remove_all(dir);
  c.dump_clouds_dir = dir.string();
  const ResultsTable t = run_experiment(c);
  REQUIRE(t.cells.size() == 2);
  CHECK(t.cells[0].method == FeedbackMethod::kNoFeedback);
  CHECK(std::filesystem::exists(dir / "Random_Visual_0000.xyz"));
  std::filesystem::remove_all(dir);
}
