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

#include <algorithm>
#include <cmath>
#include <vector>

#include "gicirc/error.hpp"
#include "gtest/gtest.h"

namespace gicirc {
namespace {

SisniParams lossless_sisni(double qng_db, double alpha) {
  SisniParams p;
  p.g1 = gain_from_qng(qng_db);
  p.g2 = p.g1;
  p.alpha = alpha;
  return p;
}

SqMziParams squeezed(double alpha, double g = 0.75) {
  SqMziParams p = plain_mzi(alpha);
  p.g = PaGain::from_g(g);
  return p;
}

TEST(Advantage, KnownValues) {
  const SisniParams s = lossless_sisni(6.0, 6.0);
  EXPECT_NEAR(snr_gain_db(s, sql_baseline(s)), 3.963, 1e-3);
  EXPECT_NEAR(snr_gain_db(s, sql_baseline(s)), to_db((std::pow(10.0, 0.6) + 1.0) / 2.0), 1e-12);
  EXPECT_NEAR(snr_gain_db(squeezed(6.0), plain_mzi(6.0)), 6.0206, 1e-4);
  EXPECT_NEAR(advantage_db(squeezed(6.0), plain_mzi(6.0)), -6.0206, 1e-4);
  EXPECT_DOUBLE_EQ(advantage_db(plain_mzi(6.0, 0.2, 0.3), plain_mzi(6.0, 0.2, 0.3)), 0.0);
}

TEST(Advantage, BaselineMapping) {
  SisniParams s = lossless_sisni(6.0, 5.0);
  s.L_is = LossSpec(0.16);
  s.L_ii = LossSpec(0.10);
  s.L_e = LossSpec(0.15);
  const SqMziParams b = sql_baseline(s);
  EXPECT_EQ(b.g.g(), 0.0);
  EXPECT_EQ(b.L_i.value(), 0.16);
  EXPECT_EQ(b.L_e.value(), 0.15);
  EXPECT_EQ(b.alpha, 5.0);
}

TEST(LossPlane, SisniRowsAtZeroInternalLossAreFlat) {
  const SweepGrid grid = loss_plane(lossless_sisni(6.0, 6.0), {"internal", 0.0, 0.9, 10},
                                    {"external", 0.0, 0.99, 12});
  ASSERT_EQ(grid.values.rows(), 10);
  ASSERT_EQ(grid.values.cols(), 12);
  const double first = grid.values(0, 0);
  for (Eigen::Index c = 0; c < grid.values.cols(); ++c) {
    EXPECT_NEAR(grid.values(0, c), first, 1e-9);
  }
  EXPECT_NEAR(first, -3.963, 1e-3);
}

TEST(LossPlane, SqMziDegradesWithExternalLoss) {
  const SweepGrid grid =
      loss_plane(squeezed(6.0), {"internal", 0.0, 0.9, 7}, {"external", 0.0, 0.99, 23});
  EXPECT_NEAR(grid.values(0, 0), -6.0206, 1e-4);
  for (Eigen::Index r = 0; r < grid.values.rows(); ++r) {
    for (Eigen::Index c = 1; c < grid.values.cols(); ++c) {
      EXPECT_GE(grid.values(r, c), grid.values(r, c - 1) - 1e-12);
      EXPECT_LE(grid.values(r, c), 1e-12);
    }
  }
  EXPECT_GT(grid.values(0, grid.values.cols() - 1), -0.1);
}

TEST(LossPlane, NoGainIsZeroEverywhere) {
  SisniParams off;
  off.alpha = 6.0;
  for (const Topology& t : {Topology{off}, Topology{plain_mzi(6.0)}}) {
    const SweepGrid grid = loss_plane(t, {"internal", 0.0, 0.9, 5}, {"external", 0.0, 0.9, 5});
    EXPECT_LT(grid.values.cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(LossPlane, RangeErrors) {
  EXPECT_THROW(loss_plane(plain_mzi(6.0), {"internal", 0.0, 1.0, 5}, {"external", 0.0, 0.5, 5}),
               Error);
  EXPECT_THROW(loss_plane(plain_mzi(6.0), {"internal", 0.0, 0.5, 1}, {"external", 0.0, 0.5, 5}),
               Error);
}

TEST(SweepAxis, InclusiveEndpoints) {
  const std::vector<double> v = SweepAxis{"x", 0.0, 0.9, 91}.values();
  ASSERT_EQ(v.size(), 91u);
  EXPECT_EQ(v.front(), 0.0);
  EXPECT_EQ(v.back(), 0.9);
  EXPECT_NEAR(v[10], 0.1, 1e-15);
}

TEST(Slope, OptimumAtPhaseQuadrature) {
  const std::vector<double> thetas = theta_grid(360);
  const SisniParams s = lossless_sisni(6.0, 6.0);
  const Topology tops[] = {plain_mzi(6.0), s};
  const double expected[] = {6.0, 6.0 * s.g2.G()};
  for (int t = 0; t < 2; ++t) {
    const auto curve = slope_vs_theta(tops[t], thetas);
    const auto best = std::max_element(curve.begin(), curve.end(), [](auto& a, auto& b) {
      return std::abs(a.slope) < std::abs(b.slope);
    });
    EXPECT_NEAR(std::fmod(best->theta, kPi), kPi / 2.0, 1e-12);
    EXPECT_NEAR(std::abs(best->slope), expected[t], 1e-5);
    // Orthogonal quadrature carries no signal.
    EXPECT_NEAR(curve[0].slope, 0.0, 1e-9);
    EXPECT_NEAR(curve[180].slope, 0.0, 1e-9);
  }
  EXPECT_NEAR(6.0 * s.g2.G(), 9.4689, 1e-4);
}

TEST(Wigner, VacuumAtDarkFringe) {
  const std::vector<double> phis{kPi};
  const std::vector<double> les{0.0};
  const auto slices = wigner_panel(plain_mzi(6.0), phis, les);
  ASSERT_EQ(slices.size(), 1u);
  EXPECT_LT(slices[0].mean.cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(slices[0].density(240, 240), 1.0 / (2.0 * kPi), 1e-12);
  EXPECT_NEAR(slices[0].integral, 1.0, 1e-6);
}

TEST(Wigner, PanelNormalizesAndDisplacesLinearly) {
  SisniParams s = lossless_sisni(6.0, 6.0);
  s.L_is = LossSpec(0.16);
  s.L_ii = LossSpec(0.10);
  const std::vector<double> phis{kPi - 0.02, kPi, kPi + 0.02};
  const std::vector<double> les{0.0, 0.5, 0.9};
  const auto slices = wigner_panel(s, phis, les);
  ASSERT_EQ(slices.size(), 9u);
  for (const WignerSlice& w : slices) EXPECT_NEAR(w.integral, 1.0, 1e-6);
  for (std::size_t k = 0; k < les.size(); ++k) {
    const double lo = slices[k].mean(1);
    const double mid = slices[3 + k].mean(1);
    const double hi = slices[6 + k].mean(1);
    EXPECT_NEAR(mid, 0.0, 1e-12);
    EXPECT_NEAR(lo, -hi, 1e-4 * std::abs(hi));
  }
}

TEST(Wigner, ExternalLossHurtsSqueezingNotSisni) {
  // Signal from the displaced slice, noise from the dark-fringe slice.
  const double dphi = 0.02;
  const std::vector<double> phis{kPi, kPi + dphi};
  const std::vector<double> les{0.0, 0.9, 0.99};
  const SisniParams s = lossless_sisni(6.0, 6.0);
  const auto sq = wigner_panel(squeezed(6.0), phis, les);
  const auto ni = wigner_panel(s, phis, les);
  const auto mzi = wigner_panel(plain_mzi(6.0), phis, les);
  EXPECT_NEAR(sq[0].cov(1, 1), 0.25, 1e-12);
  EXPECT_GT(sq[2].cov(1, 1), 0.99);

  auto snr_ratio = [&](std::size_t k) {
    const double a = ni[3 + k].mean(1) / std::sqrt(ni[k].cov(1, 1));
    const double b = mzi[3 + k].mean(1) / std::sqrt(mzi[k].cov(1, 1));
    return a / b;
  };
  for (std::size_t k = 1; k < les.size(); ++k) EXPECT_NEAR(snr_ratio(k), snr_ratio(0), 1e-9);
}

TEST(Wigner, CoveringGridAndExplicitGrid) {
  const std::vector<Eigen::Vector2d> means{Eigen::Vector2d(1.0, -2.0)};
  const std::vector<Eigen::Matrix2d> covs{Eigen::Vector2d(4.0, 0.25).asDiagonal()};
  const WignerGrid g = covering_grid(means, covs);
  EXPECT_EQ(g.x_max, 18.0);  // 2 + 8 * 2
  EXPECT_EQ(g.p_min, -18.0);
  EXPECT_EQ(g.nx, 481u);

  const std::vector<double> phis{kPi};
  const std::vector<double> les{0.0};
  const WignerGrid small{-3.0, 3.0, 61, -2.0, 2.0, 41};
  const auto slices = wigner_panel(plain_mzi(6.0), phis, les, small);
  EXPECT_EQ(slices[0].density.rows(), 41);
  EXPECT_EQ(slices[0].density.cols(), 61);
  EXPECT_LT(slices[0].integral, 0.99);
  EXPECT_THROW(wigner_panel(plain_mzi(6.0), phis, les, WignerGrid{1.0, 0.0, 5, 0.0, 1.0, 5}),
               Error);
}

TEST(PowerFit, ExactModelData) {
  const std::vector<PowerPoint> pts{{1.0, 2.0}, {2.0, 4.0}};
  EXPECT_DOUBLE_EQ(fit_snr_vs_power(pts).A, 2.0);

  SisniParams s = lossless_sisni(6.0, 1.0);
  s.g1 = gain_from_qng(4.0);
  s.L_is = LossSpec(0.16);
  s.L_ii = LossSpec(0.10);
  s.L_e = LossSpec(0.15);
  std::vector<PowerPoint> model;
  for (double a2 : {1.0, 4.0, 9.0, 16.0, 36.0, 100.0}) {
    s.alpha = std::sqrt(a2);
    model.push_back({a2, snr_sisni_closed(s, 1e-3)});
  }
  s.alpha = 1.0;
  const LinearFit fit = fit_snr_vs_power(model);
  EXPECT_NEAR(fit.A, snr_sisni_closed(s, 1e-3), 1e-15);
  EXPECT_LT(fit.residual_rms, 1e-9);
}

TEST(PowerFit, Errors) {
  const std::vector<PowerPoint> one{{1.0, 1.0}};
  EXPECT_THROW(fit_snr_vs_power(one), Error);
  const std::vector<PowerPoint> bad{{0.0, 1.0}, {1.0, 1.0}};
  EXPECT_THROW(fit_snr_vs_power(bad), Error);
}

TEST(Linearity, SnrScalesWithPower) {
  SisniParams s = lossless_sisni(6.0, 3.0);
  s.g1 = gain_from_qng(4.0);
  s.L_is = LossSpec(0.16);
  s.L_e = LossSpec(0.15);
  SqMziParams q = squeezed(3.0);
  q.L_i = LossSpec(0.1);
  const double s1 = snr_sisni_closed(s, 1e-3);
  const double q1 = snr_sq_mzi_closed(q, 1e-3);
  const double e1 = engine_report(s, 1e-3).snr;
  for (double k : {2.0, 10.0}) {
    SisniParams s2 = s;
    s2.alpha = 3.0 * std::sqrt(k);
    SqMziParams q2 = q;
    q2.alpha = 3.0 * std::sqrt(k);
    EXPECT_NEAR(snr_sisni_closed(s2, 1e-3), k * s1, 1e-13 * k * s1);
    EXPECT_NEAR(snr_sq_mzi_closed(q2, 1e-3), k * q1, 1e-13 * k * q1);
    EXPECT_NEAR(engine_report(s2, 1e-3).snr, k * e1, 1e-12 * k * e1);
  }
}

}  // namespace
}  // namespace gicirc
