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

#ifndef GRASPSIM_ERROR_HPP_
#define GRASPSIM_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace graspsim
{

enum class ErrorCode
{
  kDegenerateLine,
  kZeroVector,
  kDomain,
  kInsufficientPoints,
  kNoConsensus,
  kEmptyCloud,
  kLowMargin,
  kInvalidArgument,
  kConfig,
  kIo,
};

const char * to_string(ErrorCode code);

/**
 * @brief Exception type for every failure raised by the library.
 *
 * Perception failures (no consensus, low handle margin, ...) are ordinary
 * outcomes for the task state machines, so callers usually switch on code().
 */
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string & message)
  : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept {return code_;}

private:
  ErrorCode code_;
};

}  // namespace graspsim

#endif  // GRASPSIM_ERROR_HPP_
