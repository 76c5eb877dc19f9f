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

#include "gicirc/pa_noise.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "gicirc/error.hpp"

namespace gicirc {

double NoisyPaParams::stability() const {
  return (1.0 + rho) * (1.0 + rho) / 4.0 - kappa * kappa;
}

void NoisyPaParams::validate() const {
  if (!(rho >= 0.0) || !std::isfinite(rho)) {
    throw Error(ErrorKind::kRange, fmt::format("rho must be >= 0, got {}", rho));
  }
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw Error(ErrorKind::kRange, fmt::format("kappa must be >= 0, got {}", kappa));
  }
  if (!(epsilon2 >= 1.0) || !std::isfinite(epsilon2)) {
    throw Error(ErrorKind::kRange, fmt::format("epsilon2 must be >= 1, got {}", epsilon2));
  }
  if (!(stability() > 0.0)) {
    throw Error(ErrorKind::kInstability,
                fmt::format("kappa {} at or beyond the pole (1 + rho)/2 = {}", kappa,
                            (1.0 + rho) / 2.0));
  }
}

CouplingFactors coupling_factors(const NoisyPaParams& params) {
  params.validate();
  const double m = params.stability();
  const double rho = params.rho;
  const double k = params.kappa;
  const double sr = std::sqrt(rho);
  return {((1.0 - rho * rho) / 4.0 + k * k) / m, k / m, sr * (1.0 + rho) / (2.0 * m), k * sr / m};
}

ElementMap noisy_pa(std::size_t n_modes, ModePair pair, const NoisyPaParams& params) {
  const CouplingFactors c = coupling_factors(params);
  ElementMap map = parametric_amplifier(n_modes, pair, PaGain::from_g(0.0));
  const auto a = static_cast<Eigen::Index>(2 * pair.a);
  const auto b = static_cast<Eigen::Index>(2 * pair.b);
  const Eigen::Matrix2d conj = Eigen::Vector2d(1.0, -1.0).asDiagonal();
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();

  map.linear.block<2, 2>(a, a) = c.Gbar * id;
  map.linear.block<2, 2>(b, b) = c.Gbar * id;
  map.linear.block<2, 2>(a, b) = c.gbar * conj;
  map.linear.block<2, 2>(b, a) = c.gbar * conj;

  // Auxiliaries enter through the same two-mode structure with (Gbar', gbar').
  const double diag = params.epsilon2 * (c.Gbar_p * c.Gbar_p + c.gbar_p * c.gbar_p);
  const double cross = params.epsilon2 * 2.0 * c.Gbar_p * c.gbar_p;
  map.noise.block<2, 2>(a, a) = diag * id;
  map.noise.block<2, 2>(b, b) = diag * id;
  map.noise.block<2, 2>(a, b) = cross * conj;
  map.noise.block<2, 2>(b, a) = cross * conj;
  return map;
}

double noisy_qng(const NoisyPaParams& params) {
  const CouplingFactors c = coupling_factors(params);
  return c.Gbar * c.Gbar + c.gbar * c.gbar +
         params.epsilon2 * (c.Gbar_p * c.Gbar_p + c.gbar_p * c.gbar_p);
}

double kappa_from_qng(double qng_db, double rho, double epsilon2) {
  if (!(qng_db >= 0.0) || !std::isfinite(qng_db)) {
    throw Error(ErrorKind::kRange, fmt::format("QNG must be >= 0 dB, got {}", qng_db));
  }
  NoisyPaParams{rho, 0.0, epsilon2}.validate();

  // With u = kappa^2, QNG * M^2 = (a + u)^2 + u + c (b + u) where
  // a = (1 - rho^2)/4, b = (1 + rho)^2/4 = M + u and c = epsilon2 * rho.
  // QNG is increasing in u on [0, b), so the quadratic has one root there.
  const double q = from_db(qng_db);
  const double a = (1.0 - rho * rho) / 4.0;
  const double b = (1.0 + rho) * (1.0 + rho) / 4.0;
  const double c = epsilon2 * rho;
  const double floor = (a * a + c * b) / (b * b);
  const double tol = 1e-12 * std::max(1.0, q);
  if (q < floor - tol) {
    throw Error(ErrorKind::kNoSolution,
                fmt::format("QNG {} dB is below the noise floor {} dB for rho={}, epsilon2={}",
                            qng_db, to_db(floor), rho, epsilon2));
  }
  if (q <= floor) return 0.0;

  const double qa = q - 1.0;
  const double qb = 2.0 * q * b + 2.0 * a + 1.0 + c;  // negated linear coefficient
  const double qc = q * b * b - a * a - c * b;
  const double disc = std::max(qb * qb - 4.0 * qa * qc, 0.0);
  const double half = 0.5 * (qb + std::sqrt(disc));
  double u = qc / half;
  if (!(u >= 0.0 && u < b) && qa != 0.0) u = half / qa;
  if (!(u >= 0.0 && u < b)) {
    throw Error(ErrorKind::kNoSolution,
                fmt::format("no kappa below the pole reaches QNG {} dB", qng_db));
  }
  return std::sqrt(u);
}

}  // namespace gicirc
