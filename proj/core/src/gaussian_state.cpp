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

#include "gicirc/gaussian_state.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "gicirc/error.hpp"

namespace gicirc {
namespace {

void check_mode(std::size_t mode, std::size_t n_modes) {
  if (mode >= n_modes) {
    throw Error(ErrorKind::kRange,
                fmt::format("mode index {} out of range for {} modes", mode, n_modes));
  }
}

Matrix symmetrized(const Matrix& m) { return 0.5 * (m + m.transpose()); }

double min_hermitian_eigenvalue(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace

Matrix symplectic_form(std::size_t n_modes) {
  Matrix omega = Matrix::Zero(2 * n_modes, 2 * n_modes);
  for (std::size_t k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 2.0;
    omega(2 * k + 1, 2 * k) = -2.0;
  }
  return omega;
}

GaussianState::GaussianState(Vector mean, Matrix cov) : mean_(std::move(mean)) {
  if (mean_.size() == 0 || mean_.size() % 2 != 0 || cov.rows() != mean_.size() ||
      cov.cols() != mean_.size()) {
    throw Error(ErrorKind::kDimension,
                fmt::format("state needs a 2n mean and 2n x 2n covariance, got {} and {}x{}",
                            mean_.size(), cov.rows(), cov.cols()));
  }
  cov_ = symmetrized(cov);
}

GaussianState GaussianState::vacuum(std::size_t n_modes) {
  if (n_modes == 0) throw Error(ErrorKind::kArity, "a state needs at least one mode");
  return GaussianState(Vector::Zero(2 * n_modes), Matrix::Identity(2 * n_modes, 2 * n_modes));
}

Eigen::Vector2d GaussianState::mode_mean(std::size_t mode) const {
  check_mode(mode, n_modes());
  return mean_.segment<2>(2 * mode);
}

Eigen::Matrix2d GaussianState::mode_cov(std::size_t mode) const {
  check_mode(mode, n_modes());
  return cov_.block<2, 2>(2 * mode, 2 * mode);
}

double GaussianState::physicality_margin() const {
  // [x, p] = 2i, so the uncertainty bound is cov + i Omega / 2 >= 0.
  const Eigen::MatrixXcd h =
      cov_.cast<std::complex<double>>() +
      std::complex<double>(0.0, 0.5) * symplectic_form(n_modes()).cast<std::complex<double>>();
  return min_hermitian_eigenvalue(h);
}

ElementMap ElementMap::identity(std::size_t n_modes) {
  const auto dim = static_cast<Eigen::Index>(2 * n_modes);
  return {Matrix::Identity(dim, dim), Matrix::Zero(dim, dim), Vector::Zero(dim)};
}

ElementMap ElementMap::then(const ElementMap& next) const {
  if (next.linear.rows() != linear.rows()) {
    throw Error(ErrorKind::kDimension, "cannot compose maps of different sizes");
  }
  ElementMap out;
  out.linear = next.linear * linear;
  out.noise = symmetrized(next.linear * noise * next.linear.transpose() + next.noise);
  out.displacement = next.linear * displacement + next.displacement;
  return out;
}

double ElementMap::symplectic_defect() const {
  const Matrix omega = symplectic_form(n_modes());
  return (linear * omega * linear.transpose() - omega).cwiseAbs().maxCoeff();
}

double ElementMap::channel_margin() const {
  const Matrix omega = symplectic_form(n_modes());
  const Matrix skew = omega - linear * omega * linear.transpose();
  const Eigen::MatrixXcd h = noise.cast<std::complex<double>>() +
                             std::complex<double>(0.0, 0.5) * skew.cast<std::complex<double>>();
  return min_hermitian_eigenvalue(h);
}

GaussianState make_state(std::size_t n_modes, std::span<const ModePrep> inputs) {
  if (n_modes == 0) throw Error(ErrorKind::kArity, "a state needs at least one mode");
  if (inputs.size() != n_modes) {
    throw Error(ErrorKind::kArity, fmt::format("expected {} mode preparations, got {}", n_modes,
                                               inputs.size()));
  }
  Vector mean = Vector::Zero(2 * n_modes);
  Matrix cov = Matrix::Identity(2 * n_modes, 2 * n_modes);
  for (std::size_t k = 0; k < n_modes; ++k) {
    const auto i = static_cast<Eigen::Index>(2 * k);
    if (const auto* coh = std::get_if<Coherent>(&inputs[k])) {
      mean(i) = 2.0 * coh->alpha.real();
      mean(i + 1) = 2.0 * coh->alpha.imag();
    } else if (const auto* th = std::get_if<Thermal>(&inputs[k])) {
      if (!(th->variance >= 1.0)) {
        throw Error(ErrorKind::kPhysicality,
                    fmt::format("thermal variance {} below vacuum level 1 on mode {}",
                                th->variance, k));
      }
      cov(i, i) = th->variance;
      cov(i + 1, i + 1) = th->variance;
    }
  }
  return GaussianState(std::move(mean), std::move(cov));
}

GaussianState apply(const GaussianState& state, const ElementMap& map) {
  if (map.linear.rows() != state.mean().size() || map.linear.cols() != state.mean().size() ||
      map.noise.rows() != state.mean().size() || map.displacement.size() != state.mean().size()) {
    throw Error(ErrorKind::kDimension,
                fmt::format("map acts on {} modes but state has {}", map.n_modes(),
                            state.n_modes()));
  }
  Vector mean = map.linear * state.mean() + map.displacement;
  Matrix cov = map.linear * state.cov() * map.linear.transpose() + map.noise;
  return GaussianState(std::move(mean), std::move(cov));
}

Vector apply_mean(const Vector& mean, const ElementMap& map) {
  if (map.linear.cols() != mean.size()) {
    throw Error(ErrorKind::kDimension, "map and mean vector sizes differ");
  }
  return map.linear * mean + map.displacement;
}

QuadratureStats quadrature_stats(const GaussianState& state, std::size_t mode, double theta) {
  const Eigen::Vector2d c(std::cos(theta), std::sin(theta));
  const double variance = c.dot(state.mode_cov(mode) * c);
  return {c.dot(state.mode_mean(mode)), std::max(variance, 0.0), theta};
}

double wigner(const GaussianState& state, std::size_t mode, double x, double p) {
  const Eigen::Matrix2d sigma = state.mode_cov(mode);
  const double det = sigma.determinant();
  if (!(det > 1e-300)) {
    throw Error(ErrorKind::kDegenerate,
                fmt::format("singular marginal covariance on mode {} (det = {})", mode, det));
  }
  const Eigen::Vector2d delta = Eigen::Vector2d(x, p) - state.mode_mean(mode);
  const double q = delta.dot(sigma.inverse() * delta);
  return std::exp(-0.5 * q) / (2.0 * kPi * std::sqrt(det));
}

GaussianState marginal(const GaussianState& state, std::span<const std::size_t> modes) {
  const std::size_t n = state.n_modes();
  std::vector<bool> seen(n, false);
  for (std::size_t m : modes) {
    check_mode(m, n);
    if (seen[m]) throw Error(ErrorKind::kRange, fmt::format("mode {} listed twice", m));
    seen[m] = true;
  }
  if (modes.empty()) throw Error(ErrorKind::kArity, "marginal needs at least one mode");

  const auto k = static_cast<Eigen::Index>(modes.size());
  Vector mean(2 * k);
  Matrix cov(2 * k, 2 * k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const auto si = static_cast<Eigen::Index>(2 * modes[i]);
    mean.segment<2>(2 * i) = state.mean().segment<2>(si);
    for (Eigen::Index j = 0; j < k; ++j) {
      const auto sj = static_cast<Eigen::Index>(2 * modes[j]);
      cov.block<2, 2>(2 * i, 2 * j) = state.cov().block<2, 2>(si, sj);
    }
  }
  return GaussianState(std::move(mean), std::move(cov));
}

}  // namespace gicirc
