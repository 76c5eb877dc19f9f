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

// SNR advantage of a SISNI built from noisy amplifiers over the plain MZI,
// as a function of the amplifier QNGs, and a least-squares fit of the
// amplifier noise parameters to measured advantage curves.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gicirc/interferometers.hpp"

namespace gicirc {

struct SisniLosses {
  double L_is = 0.16;
  double L_ii = 0.10;
  double L_e = 0.15;

  void validate() const;
};

/// Noise parameters of one amplifier. kappa is derived from the QNG.
struct PaNoise {
  double rho = 0.0;
  double epsilon2 = 1.0;
};

/// SISNI with noisy PAs at the given QNGs (kappa from kappa_from_qng).
SisniParams noisy_sisni(double qng1_db, double qng2_db, const SisniLosses& losses,
                        const PaNoise& pa1, const PaNoise& pa2, double alpha = 1.0);

/// 10 log10(SNR_SISNI / SNR_MZI) at equal alpha, with the MZI internal loss
/// equal to L_is and the same external loss. Positive favours the SISNI.
double noisy_advantage_db(double qng1_db, double qng2_db, const SisniLosses& losses,
                          const PaNoise& pa1, const PaNoise& pa2);

std::vector<double> advantage_vs_qng(double qng1_db, std::span<const double> qng2_grid_db,
                                     const SisniLosses& losses, const PaNoise& pa1,
                                     const PaNoise& pa2);

struct AdvantagePoint {
  double qng1_db = 0.0;
  double qng2_db = 0.0;
  double advantage_db = 0.0;
  std::optional<double> sigma_db;  // enables weighted least squares
};

struct FitBounds {
  double rho_min = 0.0;
  double rho_max = 0.1;
  double epsilon2_min = 1.0;
  double epsilon2_max = 1e4;

  void validate() const;
};

struct FitOptions {
  std::uint64_t seed = 7;
  std::size_t restarts = 8;
  std::size_t max_evaluations = 6000;  // per simplex run
};

struct FitResult {
  double rho1 = 0.0;
  double rho2 = 0.0;
  double eps1_sq = 1.0;
  double eps2_sq = 1.0;
  double residual_rms = 0.0;  // unweighted, dB
  std::size_t iterations = 0;  // summed over all simplex runs
  bool converged = false;
};

/// Minimizes the (optionally sigma-weighted) sum of squared dB residuals
/// over (rho1, rho2, eps1^2, eps2^2) with simplex searches from `restarts`
/// seeded random starts plus a final polish. Deterministic for a fixed seed.
/// rho is searched on a log scale; a lower bound of 0 is represented by
/// 1e-10.
FitResult fit_noise_model(std::span<const AdvantagePoint> data, const SisniLosses& losses,
                          const FitBounds& bounds = {}, const FitOptions& options = {});

}  // namespace gicirc
