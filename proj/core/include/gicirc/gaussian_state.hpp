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

// Gaussian states of N optical modes and the affine channels acting on them.
//
// Quadratures follow x = a + a^dagger, p = i(a^dagger - a), so the vacuum
// has unit variance in every quadrature. Phase-space vectors are ordered
// (x1, p1, x2, p2, ...), and the symplectic form has per-mode blocks
// [[0, 2], [-2, 0]].

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace gicirc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;

/// Block-diagonal symplectic form for `n_modes` modes.
Matrix symplectic_form(std::size_t n_modes);

struct Vacuum {};
struct Coherent {
  std::complex<double> alpha;
};
struct Thermal {
  /// Quadrature variance, >= 1 (1 is vacuum).
  double variance = 1.0;
};
using ModePrep = std::variant<Vacuum, Coherent, Thermal>;

class GaussianState {
 public:
  /// Takes ownership of mean and covariance. The covariance is symmetrized.
  /// Throws kDimension when the shapes disagree or are empty.
  GaussianState(Vector mean, Matrix cov);

  static GaussianState vacuum(std::size_t n_modes);

  std::size_t n_modes() const { return static_cast<std::size_t>(mean_.size() / 2); }
  const Vector& mean() const { return mean_; }
  const Matrix& cov() const { return cov_; }

  Eigen::Vector2d mode_mean(std::size_t mode) const;
  Eigen::Matrix2d mode_cov(std::size_t mode) const;

  /// Smallest eigenvalue of the Hermitian matrix cov + i*Omega/2. Zero for
  /// pure states, negative for states violating the uncertainty relation.
  double physicality_margin() const;
  bool is_physical(double tol = 1e-9) const { return physicality_margin() >= -tol; }

 private:
  Vector mean_;
  Matrix cov_;
};

/// Affine Gaussian channel: mean -> S*mean + d, cov -> S*cov*S^T + N.
struct ElementMap {
  Matrix linear;
  Matrix noise;
  Vector displacement;

  static ElementMap identity(std::size_t n_modes);

  std::size_t n_modes() const { return static_cast<std::size_t>(linear.rows() / 2); }

  /// The channel equivalent to applying *this first and then `next`.
  ElementMap then(const ElementMap& next) const;

  /// max |S Omega S^T - Omega|.
  double symplectic_defect() const;
  bool is_symplectic(double tol = 1e-10) const { return symplectic_defect() < tol; }

  /// Smallest eigenvalue of N + i*(Omega - S*Omega*S^T)/2. A map is a valid
  /// Gaussian channel iff this is non-negative.
  double channel_margin() const;
};

/// One preparation per mode. Throws kArity on a count mismatch and
/// kPhysicality for thermal variance below 1.
GaussianState make_state(std::size_t n_modes, std::span<const ModePrep> inputs);

/// Throws kDimension when the map and state sizes disagree.
GaussianState apply(const GaussianState& state, const ElementMap& map);

/// Mean-only propagation, for callers that do not need the covariance.
Vector apply_mean(const Vector& mean, const ElementMap& map);

struct QuadratureStats {
  double mean = 0.0;
  double variance = 1.0;
  double theta = 0.0;
};

/// Homodyne statistics of X(theta) = x cos(theta) + p sin(theta) on `mode`.
/// theta = pi/2 is the phase quadrature.
QuadratureStats quadrature_stats(const GaussianState& state, std::size_t mode, double theta);

/// Wigner density of the single-mode marginal of `mode` at (x, p).
/// Throws kDegenerate when the marginal covariance is singular.
double wigner(const GaussianState& state, std::size_t mode, double x, double p);

/// Reduced state on `modes` (in the given order). Throws kRange for
/// out-of-range or repeated indices.
GaussianState marginal(const GaussianState& state, std::span<const std::size_t> modes);

}  // namespace gicirc
