// Copyright 2026 The gestmpc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gestmpc/error.hpp"

namespace gestmpc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid_argument";
    case ErrorKind::kOverflow: return "overflow";
    case ErrorKind::kShapeMismatch: return "shape_mismatch";
    case ErrorKind::kRandomnessReuse: return "randomness_reuse";
    case ErrorKind::kRandomnessExhausted: return "randomness_exhausted";
    case ErrorKind::kProtocol: return "protocol";
    case ErrorKind::kSessionAborted: return "session_aborted";
    case ErrorKind::kMissingGrant: return "missing_grant";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kFormat: return "format";
  }
  return "unknown";
}

}  // namespace gestmpc
