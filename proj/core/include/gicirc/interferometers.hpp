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

// Built-in topologies: plain MZI (an SQ-MZI with g = 0), the squeezed-light
// MZI (SQ-MZI), and the SU(2)-in-SU(1,1) nested interferometer (SISNI).
//
// The interferometer phase is read out in the phase quadrature X2 of the
// detected dark port. The set point is the dark fringe phi0 = pi.
//
// Mode layouts:
//   SQ-MZI  0: squeezed dark-port input (detected), 1: bright coherent input
//   SISNI   0: PA1 input a / signal arm (detected k), 1: PA1 input b / idler
//           (second output j), 2: bright coherent MZI input

#include <cstddef>
#include <optional>
#include <variant>

#include "gicirc/circuit.hpp"
#include "gicirc/elements.hpp"
#include "gicirc/pa_noise.hpp"

namespace gicirc {

inline constexpr double kDarkFringe = kPi;
inline constexpr double kDefaultFdStep = 1e-3;

struct SqMziParams {
  PaGain g;  // dark-port squeezer; g = 0 is the plain MZI
  LossSpec L_i;
  LossSpec L_e;
  double alpha = 0.0;  // bright-port amplitude, |alpha|^2 photons
  double phi = kDarkFringe;
  double T = 0.5;

  void validate() const;
};

struct SisniParams {
  PaGain g1;
  PaGain g2;
  LossSpec L_is;
  LossSpec L_ii;
  LossSpec L_e;
  double alpha = 0.0;
  double phi_signal = kDarkFringe;
  double phi_pump = kPi;  // relative PA phase; pi is minimum net amplification
  double T = 0.5;
  /// When set, the corresponding amplifier is the lossy noisy model and
  /// g1/g2 are ignored.
  std::optional<NoisyPaParams> noisy1;
  std::optional<NoisyPaParams> noisy2;

  void validate() const;
  bool ideal() const { return !noisy1 && !noisy2; }
};

using Topology = std::variant<SqMziParams, SisniParams>;

/// Plain MZI with the given bright amplitude and losses.
SqMziParams plain_mzi(double alpha, double L_i = 0.0, double L_e = 0.0);

struct BuiltCircuit {
  CircuitSpec circuit;
  std::size_t detected_mode = 0;
};

/// squeezer -> BS -> internal loss on both arms -> phase on the bright arm
/// -> BS -> external loss on the detected port.
BuiltCircuit build_sq_mzi(const SqMziParams& params);

/// PA1 -> idler loss and pump phase -> nested MZI on the signal arm with
/// internal loss on both MZI arms -> PA2 -> external loss on both outputs.
BuiltCircuit build_sisni(const SisniParams& params);

BuiltCircuit build(const Topology& topology);

enum class SisniPort { kK, kJ };

struct OutputReport {
  double mean_X2 = 0.0;         // signal <Delta X2> for the phase step dphi
  double var_X2 = 1.0;          // noise variance at the set point
  double snr = 0.0;             // mean_X2^2 / var_X2
  double phase_variance = 0.0;  // var_X2 / (d<X2>/dphi)^2, rad^2
  std::size_t detected_mode = 0;
};

// Closed forms, valid at the dark fringe to first order in dphi.

double snr_sq_mzi_closed(const SqMziParams& params, double dphi);
/// Requires ideal amplifiers and phi_pump = pi.
double snr_sisni_closed(const SisniParams& params, double dphi);
/// Throws kDegenerate for alpha = 0.
double phase_variance_closed(const Topology& topology);
OutputReport mean_signal_and_variance(const Topology& topology, double dphi);

/// Engine report for any circuit with a signal element: variance at the
/// set point, signal from the symmetric difference of the detected mean at
/// set point +- fd_step, scaled to dphi.
OutputReport engine_report(const CircuitSpec& circuit, double dphi,
                           double fd_step = kDefaultFdStep);

OutputReport engine_report(const Topology& topology, double dphi,
                           double fd_step = kDefaultFdStep, SisniPort port = SisniPort::kK);

/// d<X(theta)>/dphi at the set point on the detected mode, by symmetric
/// difference.
double engine_slope(const Topology& topology, double theta, double fd_step = kDefaultFdStep);

}  // namespace gicirc
