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

#include "gicirc/noise_fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include <fmt/format.h>

#include "gicirc/error.hpp"
#include "gicirc/nelder_mead.hpp"
#include "gicirc/pa_noise.hpp"

namespace gicirc {
namespace {

// Represents rho = 0 on the log scale.
constexpr double kRhoFloor = 1e-10;
constexpr double kInfeasiblePenalty = 1e10;

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double mzi_snr(const SisniLosses& losses) {
  SqMziParams mzi = plain_mzi(1.0, losses.L_is, losses.L_e);
  return engine_report(Topology{mzi}, 1.0).snr;
}

double sisni_snr(const SisniParams& params) { return engine_report(Topology{params}, 1.0).snr; }

struct Box {
  std::array<double, 4> lo;
  std::array<double, 4> hi;
};

// Search coordinates: log10 of (rho1, eps1^2, rho2, eps2^2).
Box search_box(const FitBounds& b) {
  const double rho_lo = std::log10(std::max(b.rho_min, kRhoFloor));
  const double rho_hi = std::log10(std::max(b.rho_max, kRhoFloor));
  const double eps_lo = std::log10(b.epsilon2_min);
  const double eps_hi = std::log10(b.epsilon2_max);
  return {{rho_lo, eps_lo, rho_lo, eps_lo}, {rho_hi, eps_hi, rho_hi, eps_hi}};
}

std::array<double, 4> to_params(const Eigen::VectorXd& z, const Box& box, const FitBounds& b) {
  std::array<double, 4> p{};
  for (std::size_t k = 0; k < 4; ++k) {
    const double zk = std::clamp(z(static_cast<Eigen::Index>(k)), box.lo[k], box.hi[k]);
    p[k] = std::pow(10.0, zk);
  }
  // Map the floor back to an exact zero when the lower bound is zero.
  for (std::size_t k : {0u, 2u}) {
    if (b.rho_min == 0.0 && p[k] <= kRhoFloor * (1.0 + 1e-12)) p[k] = 0.0;
    p[k] = std::clamp(p[k], b.rho_min, b.rho_max);
  }
  for (std::size_t k : {1u, 3u}) p[k] = std::clamp(p[k], b.epsilon2_min, b.epsilon2_max);
  return p;
}

}  // namespace

void SisniLosses::validate() const {
  LossSpec{L_is};
  LossSpec{L_ii};
  LossSpec{L_e};
}

void FitBounds::validate() const {
  if (!(rho_min >= 0.0 && rho_max > rho_min && std::isfinite(rho_max))) {
    throw Error(ErrorKind::kRange,
                fmt::format("rho bounds need 0 <= min < max, got [{}, {}]", rho_min, rho_max));
  }
  if (!(epsilon2_min >= 1.0 && epsilon2_max > epsilon2_min && std::isfinite(epsilon2_max))) {
    throw Error(ErrorKind::kRange, fmt::format("epsilon2 bounds need 1 <= min < max, got [{}, {}]",
                                               epsilon2_min, epsilon2_max));
  }
}

SisniParams noisy_sisni(double qng1_db, double qng2_db, const SisniLosses& losses,
                        const PaNoise& pa1, const PaNoise& pa2, double alpha) {
  losses.validate();
  SisniParams p;
  p.L_is = LossSpec(losses.L_is);
  p.L_ii = LossSpec(losses.L_ii);
  p.L_e = LossSpec(losses.L_e);
  p.alpha = alpha;
  p.noisy1 = NoisyPaParams{pa1.rho, kappa_from_qng(qng1_db, pa1.rho, pa1.epsilon2), pa1.epsilon2};
  p.noisy2 = NoisyPaParams{pa2.rho, kappa_from_qng(qng2_db, pa2.rho, pa2.epsilon2), pa2.epsilon2};
  return p;
}

double noisy_advantage_db(double qng1_db, double qng2_db, const SisniLosses& losses,
                          const PaNoise& pa1, const PaNoise& pa2) {
  return to_db(sisni_snr(noisy_sisni(qng1_db, qng2_db, losses, pa1, pa2)) / mzi_snr(losses));
}

std::vector<double> advantage_vs_qng(double qng1_db, std::span<const double> qng2_grid_db,
                                     const SisniLosses& losses, const PaNoise& pa1,
                                     const PaNoise& pa2) {
  const double reference = mzi_snr(losses);
  std::vector<double> out;
  out.reserve(qng2_grid_db.size());
  for (double q2 : qng2_grid_db) {
    out.push_back(to_db(sisni_snr(noisy_sisni(qng1_db, q2, losses, pa1, pa2)) / reference));
  }
  return out;
}

FitResult fit_noise_model(std::span<const AdvantagePoint> data, const SisniLosses& losses,
                          const FitBounds& bounds, const FitOptions& options) {
  losses.validate();
  bounds.validate();
  if (data.size() < 4) {
    throw Error(ErrorKind::kArity,
                fmt::format("noise-model fit needs at least 4 points, got {}", data.size()));
  }
  std::set<double> qng2_values;
  for (const AdvantagePoint& pt : data) {
    if (!std::isfinite(pt.qng1_db) || !std::isfinite(pt.qng2_db) ||
        !std::isfinite(pt.advantage_db) || (pt.sigma_db && !(*pt.sigma_db > 0.0))) {
      throw Error(ErrorKind::kRange, "fit data must be finite with positive sigma");
    }
    qng2_values.insert(pt.qng2_db);
  }
  if (qng2_values.size() < 2) {
    throw Error(ErrorKind::kRange, "fit data must span at least 2 distinct QNG2 values");
  }
  if (options.restarts == 0) throw Error(ErrorKind::kRange, "restarts must be positive");

  const double reference = mzi_snr(losses);
  const Box box = search_box(bounds);

  // dB residuals, or nullopt when some QNG target is unreachable.
  auto residuals = [&](const std::array<double, 4>& p) -> std::optional<std::vector<double>> {
    std::vector<double> r;
    r.reserve(data.size());
    try {
      for (const AdvantagePoint& pt : data) {
        const double adv =
            to_db(sisni_snr(noisy_sisni(pt.qng1_db, pt.qng2_db, losses, {p[0], p[1]},
                                        {p[2], p[3]})) /
                  reference);
        r.push_back(adv - pt.advantage_db);
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kNoSolution || e.kind() == ErrorKind::kInstability) {
        return std::nullopt;
      }
      throw;
    }
    return r;
  };

  // Summed dB by which the kappa = 0 noise floors exceed the data's QNG
  // targets. Zero exactly when every point is reachable.
  auto floor_gap = [&](const std::array<double, 4>& p) {
    const double floor1 = to_db(noisy_qng({p[0], 0.0, p[1]}));
    const double floor2 = to_db(noisy_qng({p[2], 0.0, p[3]}));
    double gap = 0.0;
    for (const AdvantagePoint& pt : data) {
      gap += std::max(0.0, floor1 - pt.qng1_db) + std::max(0.0, floor2 - pt.qng2_db);
    }
    return gap;
  };

  auto objective = [&](const Eigen::VectorXd& z) {
    // Distance outside the box keeps the simplex from drifting on a plateau.
    double outside = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      const double zk = z(static_cast<Eigen::Index>(k));
      outside += std::max(0.0, box.lo[k] - zk) + std::max(0.0, zk - box.hi[k]);
    }
    const std::array<double, 4> p = to_params(z, box, bounds);
    const double gap = floor_gap(p);
    if (gap > 0.0) return kInfeasiblePenalty * (1.0 + gap) + outside * outside;
    const auto r = residuals(p);
    if (!r) return kInfeasiblePenalty * (1.0 + outside);
    double sum = 0.0;
    for (std::size_t i = 0; i < r->size(); ++i) {
      const double w = data[i].sigma_db ? 1.0 / (*data[i].sigma_db * *data[i].sigma_db) : 1.0;
      sum += w * (*r)[i] * (*r)[i];
    }
    return sum + outside * outside;
  };

  std::mt19937_64 rng(options.seed);
  NelderMeadOptions nm;
  nm.max_evaluations = options.max_evaluations;
  nm.initial_step = 0.25;

  NelderMeadResult best;
  best.value = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  for (std::size_t run = 0; run < options.restarts; ++run) {
    Eigen::VectorXd z(4);
    for (std::size_t k = 0; k < 4; ++k) {
      z(static_cast<Eigen::Index>(k)) = box.lo[k] + (box.hi[k] - box.lo[k]) * unit_uniform(rng);
    }
    NelderMeadResult r = nelder_mead(objective, z, nm);
    iterations += r.iterations;
    if (r.value < best.value) best = std::move(r);
  }
  // Polish from the best point with a fresh, smaller simplex.
  nm.initial_step = 0.05;
  NelderMeadResult polished = nelder_mead(objective, best.x, nm);
  iterations += polished.iterations;
  if (polished.value <= best.value) best = std::move(polished);

  const std::array<double, 4> p = to_params(best.x, box, bounds);
  FitResult out;
  out.rho1 = p[0];
  out.eps1_sq = p[1];
  out.rho2 = p[2];
  out.eps2_sq = p[3];
  out.iterations = iterations;
  const auto r = residuals(p);
  if (r) {
    double ss = 0.0;
    for (double v : *r) ss += v * v;
    out.residual_rms = std::sqrt(ss / static_cast<double>(r->size()));
    out.converged = best.converged;
  } else {
    out.residual_rms = std::numeric_limits<double>::infinity();
    out.converged = false;
  }
  return out;
}

}  // namespace gicirc
