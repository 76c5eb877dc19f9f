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

// Gaussian channels for the optical elements: two-mode parametric
// amplifier, single-mode squeezer, beamsplitter, phase shifter and loss.
// All constructors take the system size and return a full-size ElementMap
// acting as identity on untouched modes.

#include <cstddef>

#include "gicirc/gaussian_state.hpp"

namespace gicirc {

/// Parametric amplifier gain. Only g is stored; G = sqrt(1 + g^2).
class PaGain {
 public:
  PaGain() = default;
  /// Throws kRange for negative or non-finite g.
  static PaGain from_g(double g);

  double g() const { return g_; }
  double G() const;

 private:
  explicit PaGain(double g) : g_(g) {}
  double g_ = 0.0;
};

/// Fractional intensity loss in [0, 1].
class LossSpec {
 public:
  LossSpec() = default;
  /// Throws kRange outside [0, 1].
  explicit LossSpec(double loss);

  double value() const { return loss_; }
  double transmission() const { return 1.0 - loss_; }

 private:
  double loss_ = 0.0;
};

struct ModePair {
  std::size_t a = 0;
  std::size_t b = 1;
};

enum class BsConvention {
  /// out_a = sqrt(T) a + sqrt(R) b,  out_b = sqrt(R) a - sqrt(T) b.
  kFirstPlus,
  /// out_a = sqrt(T) a + sqrt(R) b,  out_b = sqrt(T) b - sqrt(R) a.
  /// This is the sign placement used by the interferometer builders; mixing
  /// it with kFirstPlus in one MZI moves the dark fringe.
  kMziMinus,
};

/// out_a = G a + g b^dagger, out_b = G b + g a^dagger. Noiseless.
ElementMap parametric_amplifier(std::size_t n_modes, ModePair pair, PaGain gain);

/// out = G a + g a^dagger: squeezes the p quadrature by (G - g)^2.
ElementMap single_mode_squeezer(std::size_t n_modes, std::size_t mode, PaGain gain);

/// Throws kRange for T outside [0, 1].
ElementMap beamsplitter(std::size_t n_modes, ModePair pair, double transmission,
                        BsConvention convention = BsConvention::kMziMinus);

/// a -> exp(i phi) a.
ElementMap phase_shift(std::size_t n_modes, std::size_t mode, double phi);

/// Mixing with vacuum at intensity loss L, environment traced out.
ElementMap loss_channel(std::size_t n_modes, std::size_t mode, LossSpec loss);

/// Quantum noise gain G^2 + g^2 (linear, vacuum = 1).
double qng_of(PaGain gain);

/// Inverse of qng_of for a gain given in dB. Throws kRange for negative dB.
PaGain gain_from_qng(double qng_db);

/// 10 log10 for power-like ratios.
double to_db(double linear);
double from_db(double db);

}  // namespace gicirc
