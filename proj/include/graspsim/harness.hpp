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

#ifndef GRASPSIM_HARNESS_HPP_
#define GRASPSIM_HARNESS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graspsim/scene.hpp"
#include "graspsim/task.hpp"

namespace graspsim
{

struct ExperimentConfig
{
  SceneConfig scene;
  Tolerances tolerances;
  TaskParams task;
  std::vector<FeedbackMethod> methods{std::begin(kAllMethods), std::end(kAllMethods)};
  std::vector<PoseMode> modes{std::begin(kAllModes), std::end(kAllModes)};
  std::size_t trials_per_cell{10};
  std::uint64_t master_seed{42};
  std::string output_path{"results.csv"};
  std::string dump_clouds_dir;  // empty: no dumps

  /// Throws Error(kConfig) with the offending field in the message.
  void validate() const;
};

/// Parses a JSON config; absent keys keep their defaults, unknown keys are errors.
ExperimentConfig parse_config(const std::string & json_text);

/**
 * @brief Loads a config by path, or by name from the shipped configs
 * directory ("paper_repro" resolves to configs/paper_repro.json).
 */
ExperimentConfig load_config(const std::string & path_or_name);

/// Applies GRASPSIM_SEED to master_seed when the variable is set.
void apply_seed_env(ExperimentConfig & config);

struct CellResult
{
  PoseMode mode{PoseMode::kConstant};
  FeedbackMethod method{FeedbackMethod::kNoFeedback};
  std::size_t trials{0};
  std::size_t successes{0};
  std::map<FailureCause, std::size_t> failures;

  double success_rate() const;
  /// Most frequent failure; ties go to the earlier cause; None without failures.
  FailureCause top_failure_cause() const;
  void merge(const CellResult & other);
};

struct ResultsTable
{
  std::vector<CellResult> cells;  // canonical order: mode, then method

  void add(PoseMode mode, FeedbackMethod method, const TrialOutcome & outcome);
  const CellResult * find(PoseMode mode, FeedbackMethod method) const;
};

/// hash(master_seed, mode, method, index)
std::uint64_t trial_seed(
  std::uint64_t master_seed, PoseMode mode, FeedbackMethod method, std::uint64_t index);

ResultsTable run_experiment(const ExperimentConfig & config);

std::string format_results_csv(const ResultsTable & table);

/// Throws Error(kIo) with the OS error text when the file cannot be written.
void emit_results(const ResultsTable & table, const std::string & path);

}  // namespace graspsim

#endif  // GRASPSIM_HARNESS_HPP_
