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

// Lossy parametric amplifier with thermal auxiliary inputs.
//
//   out_a = Gbar a + gbar b^dagger + Gbar' a0 + gbar' b0^dagger
//   out_b = Gbar b + gbar a^dagger + Gbar' b0 + gbar' a0^dagger
//
// with a0, b0 thermal (variance epsilon2 in each quadrature) and
//
//   M      = (1 + rho)^2 / 4 - kappa^2
//   Gbar   = ((1 - rho^2) / 4 + kappa^2) / M
//   gbar   = kappa / M
//   Gbar'  = sqrt(rho) (1 + rho) / (2 M)
//   gbar'  = kappa sqrt(rho) / M
//
// rho = 0 reduces to the ideal amplifier with g = gbar.

#include <cstddef>

#include "gicirc/elements.hpp"
#include "gicirc/gaussian_state.hpp"

namespace gicirc {

struct NoisyPaParams {
  double rho = 0.0;       // loss parameter, >= 0
  double kappa = 0.0;     // gain parameter, >= 0
  double epsilon2 = 1.0;  // auxiliary thermal variance, >= 1

  /// (1 + rho)^2 / 4 - kappa^2; the model is stable while this is positive.
  double stability() const;
  /// Throws kRange for out-of-range fields and kInstability when M <= 0.
  void validate() const;
};

struct CouplingFactors {
  double Gbar = 1.0;
  double gbar = 0.0;
  double Gbar_p = 0.0;
  double gbar_p = 0.0;
};

CouplingFactors coupling_factors(const NoisyPaParams& params);

/// Channel on the pair: linear part from (Gbar, gbar), additive noise from
/// tracing out the auxiliaries.
ElementMap noisy_pa(std::size_t n_modes, ModePair pair, const NoisyPaParams& params);

/// Vacuum-input output variance, Gbar^2 + gbar^2 + epsilon2 (Gbar'^2 + gbar'^2).
double noisy_qng(const NoisyPaParams& params);

/// The kappa in [0, (1 + rho)/2) at which noisy_qng hits the target.
/// Throws kNoSolution when the target is below the kappa = 0 noise floor.
double kappa_from_qng(double qng_db, double rho, double epsilon2);

}  // namespace gicirc
