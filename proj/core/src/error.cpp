// Copyright 2026 The gicirc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gicirc/error.hpp"

namespace gicirc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kArity: return "arity";
    case ErrorKind::kPhysicality: return "physicality";
    case ErrorKind::kDimension: return "dimension";
    case ErrorKind::kRange: return "range";
    case ErrorKind::kDegenerate: return "degenerate";
    case ErrorKind::kInstability: return "instability";
    case ErrorKind::kNoSolution: return "no_solution";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kSemantic: return "semantic";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kUsage: return "usage";
  }
  return "unknown";
}

}  // namespace gicirc
