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

#pragma once

// JSON circuit documents ("schema": "gicirc/1").
//
//   {
//     "schema": "gicirc/1",
//     "n_modes": 2,
//     "inputs": [{"type": "vacuum"}, {"type": "coherent", "alpha": [6, 0]}],
//     "elements": [
//       {"type": "single_mode_squeezer", "mode": 0, "g": 0.75},
//       {"type": "bs", "modes": [0, 1], "T": 0.5, "convention": "mzi_minus"},
//       {"type": "phase", "mode": 1, "phi": 3.141592653589793},
//       {"type": "bs", "modes": [0, 1]},
//       {"type": "loss", "mode": 0, "L": 0.15}
//     ],
//     "detect": {"mode": 0, "theta": 1.5707963267948966},
//     "signal_element": 2
//   }
//
// Unknown keys are rejected. Omitted "inputs" means all vacuum, omitted
// "elements" means none; T defaults to 0.5, convention to mzi_minus and
// theta to pi/2. Serialization always writes every field.

#include <string>
#include <string_view>

#include "gicirc/circuit.hpp"

namespace gicirc {

inline constexpr std::string_view kCircuitSchema = "gicirc/1";

/// Throws kParse (with line and column) on malformed JSON and kSemantic
/// naming the element index and violated constraint otherwise.
CircuitSpec parse_circuit(std::string_view text);

std::string serialize_circuit(const CircuitSpec& circuit);

}  // namespace gicirc
