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

// Figure-level computations: loss-plane advantage maps, homodyne slope
// versus LO angle, Wigner panels of the detected mode, and SNR-vs-power
// fits. All dB values are 10 log10 of power-like ratios.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gicirc/interferometers.hpp"

namespace gicirc {

/// The standard-quantum-limit reference for a topology: a g = 0 MZI with
/// the same alpha and external loss, internal loss L_i (SQ-MZI) or L_is
/// (SISNI).
SqMziParams sql_baseline(const Topology& topology);

/// 10 log10(phase variance ratio). Negative values are an advantage.
double advantage_db(const Topology& topology, const Topology& baseline);

/// 10 log10(SNR ratio) = -advantage_db. Positive values are an advantage.
double snr_gain_db(const Topology& topology, const Topology& baseline);

/// Inclusive linear range start:stop:count.
struct SweepAxis {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 2;

  /// Throws kRange for count < 2 or non-finite bounds.
  std::vector<double> values() const;
};

/// values(row, col) is at (y.values()[row], x.values()[col]).
struct SweepGrid {
  SweepAxis x;
  SweepAxis y;
  Matrix values;
};

/// Advantage (dB, variance ratio against sql_baseline at each point) over
/// internal loss (y) and external loss (x). For SISNI the internal axis sets
/// L_is and L_ii together. Losses must lie in [0, 0.99].
SweepGrid loss_plane(const Topology& fixed, const SweepAxis& internal,
                     const SweepAxis& external);

struct SlopePoint {
  double theta = 0.0;
  double slope = 0.0;
};

/// theta_k = 2 pi k / count, k < count.
std::vector<double> theta_grid(std::size_t count);

std::vector<SlopePoint> slope_vs_theta(const Topology& topology, std::span<const double> thetas,
                                       double fd_step = kDefaultFdStep);

struct WignerGrid {
  double x_min = -12.0;
  double x_max = 12.0;
  std::size_t nx = 481;
  double p_min = -12.0;
  double p_max = 12.0;
  std::size_t np = 481;

  void validate() const;
};

struct WignerSlice {
  double phi = 0.0;
  double L_e = 0.0;
  Eigen::Vector2d mean;
  Eigen::Matrix2d cov;
  WignerGrid grid;
  Matrix density;  // rows: p, cols: x
  double integral = 0.0;
};

/// Square grid centred on the origin wide enough to hold every listed
/// single-mode Gaussian out to `sigmas` standard deviations.
WignerGrid covering_grid(std::span<const Eigen::Vector2d> means,
                         std::span<const Eigen::Matrix2d> covs, double sigmas = 8.0,
                         std::size_t points = 481);

/// Detected-mode Wigner densities for every (phi, L_e) pair, phi-major.
/// phi is the interferometer (signal) phase. Without an explicit grid all
/// slices share covering_grid of the panel's states.
std::vector<WignerSlice> wigner_panel(const Topology& topology, std::span<const double> phis,
                                      std::span<const double> external_losses,
                                      const std::optional<WignerGrid>& grid = std::nullopt);

struct PowerPoint {
  double alpha2 = 0.0;
  double snr = 0.0;
};

struct LinearFit {
  double A = 0.0;  // SNR = A |alpha|^2
  double residual_rms = 0.0;
};

/// Least squares through the origin. Throws kArity for fewer than two
/// points and kRange for non-positive |alpha|^2.
LinearFit fit_snr_vs_power(std::span<const PowerPoint> points);

}  // namespace gicirc
