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

#include "graspsim/error.hpp"

namespace graspsim
{

const char * to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::kDegenerateLine: return "degenerate-line";
    case ErrorCode::kZeroVector: return "zero-vector";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kInsufficientPoints: return "insufficient-points";
    case ErrorCode::kNoConsensus: return "no-consensus";
    case ErrorCode::kEmptyCloud: return "empty-cloud";
    case ErrorCode::kLowMargin: return "low-margin";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

}  // namespace graspsim
