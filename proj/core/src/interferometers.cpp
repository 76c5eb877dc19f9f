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

#include "gicirc/interferometers.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "gicirc/error.hpp"

namespace gicirc {
namespace {

void check_common(double alpha, double T) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::kRange, fmt::format("alpha must be finite and >= 0, got {}", alpha));
  }
  if (!(T >= 0.0 && T <= 1.0)) {
    throw Error(ErrorKind::kRange, fmt::format("T outside [0,1]: {}", T));
  }
}

void require_balanced(double T) {
  if (T != 0.5) {
    throw Error(ErrorKind::kRange,
                fmt::format("closed forms assume T = 0.5, got {}; use the engine", T));
  }
}

void require_alpha(double alpha) {
  if (alpha == 0.0) {
    throw Error(ErrorKind::kDegenerate, "phase variance is undefined for alpha = 0");
  }
}

Element pa_element(ModePair pair, PaGain ideal, const std::optional<NoisyPaParams>& noisy) {
  if (noisy) return NoisyPaElement{pair, *noisy};
  return PaElement{pair, ideal};
}

// Closed-form dark-fringe noise variance of X2 for each topology.
double closed_variance(const SqMziParams& p) {
  const double li = p.L_i.value();
  const double le = p.L_e.value();
  const double eta = (1.0 - li) * (1.0 - le);
  const double squeeze = p.g.G() + p.g.g();
  return eta / (squeeze * squeeze) + li * (1.0 - le) + le;
}

double closed_variance(const SisniParams& p) {
  const double G1 = p.g1.G(), g1 = p.g1.g();
  const double G2 = p.g2.G(), g2 = p.g2.g();
  const double le = p.L_e.value();
  const double eta_s = (1.0 - p.L_is.value()) * (1.0 - le);
  const double eta_i = (1.0 - p.L_ii.value()) * (1.0 - le);
  const double loss_noise =
      le + g2 * g2 * (1.0 - le) * p.L_ii.value() + G2 * G2 * (1.0 - le) * p.L_is.value();
  const double amp = std::sqrt(eta_s) * G1 * G2 - std::sqrt(eta_i) * g1 * g2;
  const double conj = std::sqrt(eta_s) * g1 * G2 - std::sqrt(eta_i) * G1 * g2;
  return loss_noise + amp * amp + conj * conj;
}

// d<X2>/dphi at the dark fringe.
double closed_slope(const SqMziParams& p) {
  return -std::sqrt((1.0 - p.L_i.value()) * (1.0 - p.L_e.value())) * p.alpha;
}

double closed_slope(const SisniParams& p) {
  return -std::sqrt((1.0 - p.L_is.value()) * (1.0 - p.L_e.value())) * p.g2.G() * p.alpha;
}

void check_closed(const SqMziParams& p) {
  p.validate();
  require_balanced(p.T);
}

void check_closed(const SisniParams& p) {
  p.validate();
  require_balanced(p.T);
  if (!p.ideal()) {
    throw Error(ErrorKind::kRange, "closed forms require ideal amplifiers; use the engine");
  }
  if (p.phi_pump != kPi) {
    throw Error(ErrorKind::kRange,
                fmt::format("closed forms assume phi_pump = pi, got {}", p.phi_pump));
  }
}

double detected_mean(const CircuitSpec& circuit) {
  const Vector mean = simulate_mean(circuit);
  const auto i = static_cast<Eigen::Index>(2 * circuit.detect.mode);
  return std::cos(circuit.detect.theta) * mean(i) + std::sin(circuit.detect.theta) * mean(i + 1);
}

double slope_of(const CircuitSpec& circuit, double fd_step) {
  if (!(fd_step > 0.0)) {
    throw Error(ErrorKind::kRange, fmt::format("finite-difference step must be > 0, got {}",
                                               fd_step));
  }
  const double up = detected_mean(with_signal_offset(circuit, fd_step));
  const double down = detected_mean(with_signal_offset(circuit, -fd_step));
  return (up - down) / (2.0 * fd_step);
}

}  // namespace

void SqMziParams::validate() const {
  check_common(alpha, T);
  if (!std::isfinite(phi)) throw Error(ErrorKind::kRange, "phi must be finite");
}

void SisniParams::validate() const {
  check_common(alpha, T);
  if (!std::isfinite(phi_signal) || !std::isfinite(phi_pump)) {
    throw Error(ErrorKind::kRange, "phases must be finite");
  }
  if (noisy1) noisy1->validate();
  if (noisy2) noisy2->validate();
}

SqMziParams plain_mzi(double alpha, double L_i, double L_e) {
  SqMziParams p;
  p.L_i = LossSpec(L_i);
  p.L_e = LossSpec(L_e);
  p.alpha = alpha;
  return p;
}

BuiltCircuit build_sq_mzi(const SqMziParams& p) {
  p.validate();
  CircuitSpec c;
  c.n_modes = 2;
  c.inputs = {Vacuum{}, Coherent{{p.alpha, 0.0}}};
  c.elements = {
      SqueezerElement{0, p.g},
      BsElement{{0, 1}, p.T, BsConvention::kMziMinus},
      LossElement{0, p.L_i},
      LossElement{1, p.L_i},
      PhaseElement{1, p.phi},
      BsElement{{0, 1}, p.T, BsConvention::kMziMinus},
      LossElement{0, p.L_e},
  };
  c.signal_element = 4;
  c.detect = {0, kPi / 2.0};
  return {std::move(c), 0};
}

BuiltCircuit build_sisni(const SisniParams& p) {
  p.validate();
  CircuitSpec c;
  c.n_modes = 3;
  c.inputs = {Vacuum{}, Vacuum{}, Coherent{{p.alpha, 0.0}}};
  c.elements = {
      pa_element({0, 1}, p.g1, p.noisy1),
      LossElement{1, p.L_ii},
      PhaseElement{1, p.phi_pump},
      BsElement{{0, 2}, p.T, BsConvention::kMziMinus},
      LossElement{0, p.L_is},
      LossElement{2, p.L_is},
      PhaseElement{2, p.phi_signal},
      BsElement{{0, 2}, p.T, BsConvention::kMziMinus},
      pa_element({0, 1}, p.g2, p.noisy2),
      LossElement{0, p.L_e},
      LossElement{1, p.L_e},
  };
  c.signal_element = 6;
  c.detect = {0, kPi / 2.0};
  return {std::move(c), 0};
}

BuiltCircuit build(const Topology& topology) {
  if (const auto* sq = std::get_if<SqMziParams>(&topology)) return build_sq_mzi(*sq);
  return build_sisni(std::get<SisniParams>(topology));
}

double snr_sq_mzi_closed(const SqMziParams& p, double dphi) {
  check_closed(p);
  const double signal = closed_slope(p) * dphi;
  return signal * signal / closed_variance(p);
}

double snr_sisni_closed(const SisniParams& p, double dphi) {
  check_closed(p);
  const double signal = closed_slope(p) * dphi;
  return signal * signal / closed_variance(p);
}

double phase_variance_closed(const Topology& topology) {
  return std::visit(
      [](const auto& p) {
        check_closed(p);
        require_alpha(p.alpha);
        const double slope = closed_slope(p);
        return closed_variance(p) / (slope * slope);
      },
      topology);
}

OutputReport mean_signal_and_variance(const Topology& topology, double dphi) {
  return std::visit(
      [dphi](const auto& p) {
        check_closed(p);
        OutputReport r;
        const double slope = closed_slope(p);
        r.mean_X2 = slope * dphi;
        r.var_X2 = closed_variance(p);
        r.snr = r.mean_X2 * r.mean_X2 / r.var_X2;
        r.phase_variance = slope == 0.0 ? std::numeric_limits<double>::infinity()
                                        : r.var_X2 / (slope * slope);
        r.detected_mode = 0;
        return r;
      },
      topology);
}

OutputReport engine_report(const CircuitSpec& circuit, double dphi, double fd_step) {
  const QuadratureStats base = detect(circuit);
  const double slope = slope_of(circuit, fd_step);
  OutputReport r;
  r.mean_X2 = slope * dphi;
  r.var_X2 = base.variance;
  r.snr = r.mean_X2 * r.mean_X2 / r.var_X2;
  r.phase_variance =
      slope == 0.0 ? std::numeric_limits<double>::infinity() : r.var_X2 / (slope * slope);
  r.detected_mode = circuit.detect.mode;
  return r;
}

OutputReport engine_report(const Topology& topology, double dphi, double fd_step,
                           SisniPort port) {
  BuiltCircuit built = build(topology);
  if (port == SisniPort::kJ) {
    if (!std::holds_alternative<SisniParams>(topology)) {
      throw Error(ErrorKind::kRange, "the j output exists only for SISNI");
    }
    built.circuit.detect.mode = 1;
  }
  return engine_report(built.circuit, dphi, fd_step);
}

double engine_slope(const Topology& topology, double theta, double fd_step) {
  BuiltCircuit built = build(topology);
  built.circuit.detect.theta = theta;
  return slope_of(built.circuit, fd_step);
}

}  // namespace gicirc
