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

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

namespace gicirc {

struct NelderMeadOptions {
  std::size_t max_evaluations = 20000;
  /// Stop when the simplex spread in f and in x both fall below these.
  double f_tolerance = 1e-24;
  double x_tolerance = 1e-12;
  /// Initial simplex edge along each coordinate.
  double initial_step = 0.1;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Unconstrained downhill simplex (standard reflection/expansion/
/// contraction/shrink coefficients 1, 2, 1/2, 1/2). Callers impose bounds by
/// mapping inside the objective.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& start, const NelderMeadOptions& options = {});

}  // namespace gicirc
