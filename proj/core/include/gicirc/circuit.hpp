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

// Declarative circuits: input preparation, an ordered element list, and a
// homodyne detection target.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gicirc/elements.hpp"
#include "gicirc/gaussian_state.hpp"
#include "gicirc/pa_noise.hpp"

namespace gicirc {

struct PaElement {
  ModePair modes;
  PaGain gain;
};

struct SqueezerElement {
  std::size_t mode = 0;
  PaGain gain;
};

struct BsElement {
  ModePair modes;
  double transmission = 0.5;
  BsConvention convention = BsConvention::kMziMinus;
};

struct PhaseElement {
  std::size_t mode = 0;
  double phi = 0.0;
};

struct LossElement {
  std::size_t mode = 0;
  LossSpec loss;
};

struct NoisyPaElement {
  ModePair modes;
  NoisyPaParams params;
};

using Element =
    std::variant<PaElement, SqueezerElement, BsElement, PhaseElement, LossElement, NoisyPaElement>;

/// Tag used in circuit documents ("pa", "bs", ...).
std::string element_tag(const Element& element);

struct Detection {
  std::size_t mode = 0;
  double theta = kPi / 2.0;
};

struct CircuitSpec {
  std::size_t n_modes = 1;
  std::vector<ModePrep> inputs;
  std::vector<Element> elements;
  Detection detect;
  /// Index of the phase element carrying the sensed phase, if any.
  std::optional<std::size_t> signal_element;

  /// Throws kSemantic naming the offending element and constraint.
  void validate() const;
};

ElementMap to_map(std::size_t n_modes, const Element& element);

/// Input state pushed through every element.
GaussianState simulate(const CircuitSpec& circuit);

/// Mean vector only, skipping covariance work.
Vector simulate_mean(const CircuitSpec& circuit);

/// Homodyne statistics at the circuit's detection target.
QuadratureStats detect(const CircuitSpec& circuit);

/// Copy of `circuit` with the signal phase element shifted by `delta`.
/// Throws kSemantic when no signal element is set.
CircuitSpec with_signal_offset(const CircuitSpec& circuit, double delta);

}  // namespace gicirc
