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

#include "gicirc/analysis.hpp"

#include <cmath>

#include <fmt/format.h>

#include "gicirc/error.hpp"

namespace gicirc {
namespace {

void check_loss_range(const SweepAxis& axis) {
  for (double v : {axis.start, axis.stop}) {
    if (!(v >= 0.0 && v <= 0.99)) {
      throw Error(ErrorKind::kRange,
                  fmt::format("{} loss range must lie in [0, 0.99], got {}", axis.name, v));
    }
  }
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = k + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  }
  return out;
}

// Trapezoid weights along one axis.
double trapezoid(const Matrix& f, double dx, double dp) {
  const Eigen::Index rows = f.rows();
  const Eigen::Index cols = f.cols();
  double sum = 0.0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double wr = (r == 0 || r + 1 == rows) ? 0.5 : 1.0;
    for (Eigen::Index c = 0; c < cols; ++c) {
      const double wc = (c == 0 || c + 1 == cols) ? 0.5 : 1.0;
      sum += wr * wc * f(r, c);
    }
  }
  return sum * dx * dp;
}

}  // namespace

SqMziParams sql_baseline(const Topology& topology) {
  if (const auto* sq = std::get_if<SqMziParams>(&topology)) {
    SqMziParams base = plain_mzi(sq->alpha, sq->L_i.value(), sq->L_e.value());
    base.T = sq->T;
    return base;
  }
  const auto& s = std::get<SisniParams>(topology);
  SqMziParams base = plain_mzi(s.alpha, s.L_is.value(), s.L_e.value());
  base.T = s.T;
  return base;
}

double advantage_db(const Topology& topology, const Topology& baseline) {
  return to_db(phase_variance_closed(topology) / phase_variance_closed(baseline));
}

double snr_gain_db(const Topology& topology, const Topology& baseline) {
  return -advantage_db(topology, baseline);
}

std::vector<double> SweepAxis::values() const {
  if (count < 2) {
    throw Error(ErrorKind::kRange, fmt::format("{} axis needs at least 2 points", name));
  }
  if (!std::isfinite(start) || !std::isfinite(stop)) {
    throw Error(ErrorKind::kRange, fmt::format("{} axis bounds must be finite", name));
  }
  return linspace(start, stop, count);
}

SweepGrid loss_plane(const Topology& fixed, const SweepAxis& internal,
                     const SweepAxis& external) {
  check_loss_range(internal);
  check_loss_range(external);
  const std::vector<double> ys = internal.values();
  const std::vector<double> xs = external.values();

  SweepGrid grid{external, internal,
                 Matrix(static_cast<Eigen::Index>(ys.size()), static_cast<Eigen::Index>(xs.size()))};
  for (std::size_t r = 0; r < ys.size(); ++r) {
    for (std::size_t c = 0; c < xs.size(); ++c) {
      Topology point = fixed;
      if (auto* sq = std::get_if<SqMziParams>(&point)) {
        sq->L_i = LossSpec(ys[r]);
        sq->L_e = LossSpec(xs[c]);
      } else {
        auto& s = std::get<SisniParams>(point);
        s.L_is = LossSpec(ys[r]);
        s.L_ii = LossSpec(ys[r]);
        s.L_e = LossSpec(xs[c]);
      }
      grid.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          advantage_db(point, sql_baseline(point));
    }
  }
  return grid;
}

std::vector<double> theta_grid(std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(count);
  }
  return out;
}

std::vector<SlopePoint> slope_vs_theta(const Topology& topology, std::span<const double> thetas,
                                       double fd_step) {
  std::vector<SlopePoint> out;
  out.reserve(thetas.size());
  for (double theta : thetas) out.push_back({theta, engine_slope(topology, theta, fd_step)});
  return out;
}

void WignerGrid::validate() const {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(p_min) ||
      !std::isfinite(p_max) || !(x_max > x_min) || !(p_max > p_min) || nx < 2 || np < 2) {
    throw Error(ErrorKind::kRange, "Wigner grid needs finite increasing bounds and >= 2 points");
  }
}

WignerGrid covering_grid(std::span<const Eigen::Vector2d> means,
                         std::span<const Eigen::Matrix2d> covs, double sigmas,
                         std::size_t points) {
  if (means.size() != covs.size() || means.empty()) {
    throw Error(ErrorKind::kArity, "covering grid needs one mean per covariance");
  }
  double half = 0.0;
  for (std::size_t k = 0; k < means.size(); ++k) {
    const double spread = std::sqrt(std::max(covs[k].eigenvalues().real().maxCoeff(), 0.0));
    half = std::max(half, means[k].cwiseAbs().maxCoeff() + sigmas * spread);
  }
  half = std::ceil(half);
  WignerGrid grid{-half, half, points, -half, half, points};
  grid.validate();
  return grid;
}

std::vector<WignerSlice> wigner_panel(const Topology& topology, std::span<const double> phis,
                                      std::span<const double> external_losses,
                                      const std::optional<WignerGrid>& grid) {
  std::vector<WignerSlice> out;
  std::vector<GaussianState> states;
  out.reserve(phis.size() * external_losses.size());
  for (double phi : phis) {
    for (double le : external_losses) {
      Topology point = topology;
      if (auto* sq = std::get_if<SqMziParams>(&point)) {
        sq->phi = phi;
        sq->L_e = LossSpec(le);
      } else {
        auto& s = std::get<SisniParams>(point);
        s.phi_signal = phi;
        s.L_e = LossSpec(le);
      }
      const BuiltCircuit built = build(point);
      const std::size_t mode = built.detected_mode;
      const std::vector<std::size_t> keep{mode};
      states.push_back(marginal(simulate(built.circuit), keep));

      WignerSlice slice;
      slice.phi = phi;
      slice.L_e = le;
      slice.mean = states.back().mode_mean(0);
      slice.cov = states.back().mode_cov(0);
      out.push_back(std::move(slice));
    }
  }
  if (out.empty()) return out;

  WignerGrid g;
  if (grid) {
    g = *grid;
  } else {
    std::vector<Eigen::Vector2d> means;
    std::vector<Eigen::Matrix2d> covs;
    for (const WignerSlice& s : out) {
      means.push_back(s.mean);
      covs.push_back(s.cov);
    }
    g = covering_grid(means, covs);
  }
  g.validate();
  const std::vector<double> xs = linspace(g.x_min, g.x_max, g.nx);
  const std::vector<double> ps = linspace(g.p_min, g.p_max, g.np);
  const double dx = (g.x_max - g.x_min) / static_cast<double>(g.nx - 1);
  const double dp = (g.p_max - g.p_min) / static_cast<double>(g.np - 1);

  for (std::size_t k = 0; k < out.size(); ++k) {
    WignerSlice& slice = out[k];
    slice.grid = g;
    slice.density.resize(static_cast<Eigen::Index>(ps.size()), static_cast<Eigen::Index>(xs.size()));
    for (std::size_t r = 0; r < ps.size(); ++r) {
      for (std::size_t c = 0; c < xs.size(); ++c) {
        slice.density(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            wigner(states[k], 0, xs[c], ps[r]);
      }
    }
    slice.integral = trapezoid(slice.density, dx, dp);
  }
  return out;
}

LinearFit fit_snr_vs_power(std::span<const PowerPoint> points) {
  if (points.size() < 2) {
    throw Error(ErrorKind::kArity,
                fmt::format("SNR-vs-power fit needs at least 2 points, got {}", points.size()));
  }
  double sxy = 0.0;
  double sxx = 0.0;
  for (const PowerPoint& pt : points) {
    if (!(pt.alpha2 > 0.0) || !std::isfinite(pt.snr)) {
      throw Error(ErrorKind::kRange,
                  fmt::format("need |alpha|^2 > 0 and finite SNR, got ({}, {})", pt.alpha2, pt.snr));
    }
    sxy += pt.alpha2 * pt.snr;
    sxx += pt.alpha2 * pt.alpha2;
  }
  LinearFit fit;
  fit.A = sxy / sxx;
  double ss = 0.0;
  for (const PowerPoint& pt : points) {
    const double r = pt.snr - fit.A * pt.alpha2;
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / static_cast<double>(points.size()));
  return fit;
}

}  // namespace gicirc
