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

#include "gicirc/circuit.hpp"

#include <fmt/format.h>

#include "gicirc/error.hpp"

namespace gicirc {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

[[noreturn]] void semantic(std::size_t index, const std::string& what) {
  throw Error(ErrorKind::kSemantic, fmt::format("{} at element {}", what, index));
}

void check_mode(std::size_t index, std::size_t mode, std::size_t n_modes) {
  if (mode >= n_modes) semantic(index, fmt::format("mode {} outside [0,{})", mode, n_modes));
}

void check_pair(std::size_t index, ModePair pair, std::size_t n_modes) {
  check_mode(index, pair.a, n_modes);
  check_mode(index, pair.b, n_modes);
  if (pair.a == pair.b) semantic(index, fmt::format("modes must differ, got {} twice", pair.a));
}

}  // namespace

std::string element_tag(const Element& element) {
  return std::visit(Overloaded{
                        [](const PaElement&) { return "pa"; },
                        [](const SqueezerElement&) { return "single_mode_squeezer"; },
                        [](const BsElement&) { return "bs"; },
                        [](const PhaseElement&) { return "phase"; },
                        [](const LossElement&) { return "loss"; },
                        [](const NoisyPaElement&) { return "noisy_pa"; },
                    },
                    element);
}

void CircuitSpec::validate() const {
  if (n_modes == 0) throw Error(ErrorKind::kSemantic, "n_modes must be positive");
  if (inputs.size() != n_modes) {
    throw Error(ErrorKind::kSemantic,
                fmt::format("expected {} inputs, got {}", n_modes, inputs.size()));
  }
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    if (const auto* th = std::get_if<Thermal>(&inputs[k]); th && !(th->variance >= 1.0)) {
      throw Error(ErrorKind::kSemantic,
                  fmt::format("thermal variance {} below 1 at input {}", th->variance, k));
    }
  }
  for (std::size_t i = 0; i < elements.size(); ++i) {
    std::visit(Overloaded{
                   [&](const PaElement& e) { check_pair(i, e.modes, n_modes); },
                   [&](const SqueezerElement& e) { check_mode(i, e.mode, n_modes); },
                   [&](const BsElement& e) {
                     check_pair(i, e.modes, n_modes);
                     if (!(e.transmission >= 0.0 && e.transmission <= 1.0)) {
                       semantic(i, "T outside [0,1]");
                     }
                   },
                   [&](const PhaseElement& e) { check_mode(i, e.mode, n_modes); },
                   [&](const LossElement& e) { check_mode(i, e.mode, n_modes); },
                   [&](const NoisyPaElement& e) {
                     check_pair(i, e.modes, n_modes);
                     try {
                       e.params.validate();
                     } catch (const Error& err) {
                       semantic(i, err.what());
                     }
                   },
               },
               elements[i]);
  }
  if (detect.mode >= n_modes) {
    throw Error(ErrorKind::kSemantic,
                fmt::format("detect mode {} outside [0,{})", detect.mode, n_modes));
  }
  if (signal_element) {
    if (*signal_element >= elements.size() ||
        !std::holds_alternative<PhaseElement>(elements[*signal_element])) {
      throw Error(ErrorKind::kSemantic,
                  fmt::format("signal_element {} is not a phase element", *signal_element));
    }
  }
}

ElementMap to_map(std::size_t n, const Element& element) {
  return std::visit(
      Overloaded{
          [n](const PaElement& e) { return parametric_amplifier(n, e.modes, e.gain); },
          [n](const SqueezerElement& e) { return single_mode_squeezer(n, e.mode, e.gain); },
          [n](const BsElement& e) {
            return beamsplitter(n, e.modes, e.transmission, e.convention);
          },
          [n](const PhaseElement& e) { return phase_shift(n, e.mode, e.phi); },
          [n](const LossElement& e) { return loss_channel(n, e.mode, e.loss); },
          [n](const NoisyPaElement& e) { return noisy_pa(n, e.modes, e.params); },
      },
      element);
}

GaussianState simulate(const CircuitSpec& circuit) {
  circuit.validate();
  GaussianState state = make_state(circuit.n_modes, circuit.inputs);
  for (const Element& e : circuit.elements) state = apply(state, to_map(circuit.n_modes, e));
  return state;
}

Vector simulate_mean(const CircuitSpec& circuit) {
  circuit.validate();
  Vector mean = make_state(circuit.n_modes, circuit.inputs).mean();
  for (const Element& e : circuit.elements) mean = apply_mean(mean, to_map(circuit.n_modes, e));
  return mean;
}

QuadratureStats detect(const CircuitSpec& circuit) {
  return quadrature_stats(simulate(circuit), circuit.detect.mode, circuit.detect.theta);
}

CircuitSpec with_signal_offset(const CircuitSpec& circuit, double delta) {
  if (!circuit.signal_element) {
    throw Error(ErrorKind::kSemantic, "circuit has no signal_element to perturb");
  }
  CircuitSpec out = circuit;
  auto* phase = std::get_if<PhaseElement>(&out.elements.at(*circuit.signal_element));
  if (phase == nullptr) {
    throw Error(ErrorKind::kSemantic,
                fmt::format("signal_element {} is not a phase element", *circuit.signal_element));
  }
  phase->phi += delta;
  return out;
}

}  // namespace gicirc
