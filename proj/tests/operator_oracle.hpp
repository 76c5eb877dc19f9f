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

// Test-only oracle: tracks each output mode as a linear combination of
// input annihilation and creation operators,
//
//   k = sum_j u_j a_j + v_j a_j^dagger,
//
// over an extended input set that includes every vacuum mode introduced by
// a loss and every thermal auxiliary. Homodyne statistics follow from
// independence of the inputs. Nothing here touches the quadrature engine.

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace gicirc::oracle {

using cd = std::complex<double>;

struct Input {
  cd mean = 0.0;          // <a>
  double variance = 1.0;  // quadrature variance (1 = vacuum)
};

struct Op {
  std::vector<cd> u;  // a_j coefficients
  std::vector<cd> v;  // a_j^dagger coefficients
};

class OperatorCircuit {
 public:
  /// Adds an input mode and returns its index in the extended input set.
  std::size_t add_input(Input in) {
    inputs_.push_back(in);
    for (Op& op : modes_) {
      op.u.emplace_back(0.0);
      op.v.emplace_back(0.0);
    }
    return inputs_.size() - 1;
  }

  /// Adds a system mode fed by a fresh input, returns the mode index.
  std::size_t add_mode(Input in) {
    const std::size_t j = add_input(in);
    Op op{std::vector<cd>(inputs_.size(), 0.0), std::vector<cd>(inputs_.size(), 0.0)};
    op.u[j] = 1.0;
    modes_.push_back(op);
    return modes_.size() - 1;
  }

  const Op& mode(std::size_t m) const { return modes_[m]; }
  void set(std::size_t m, Op op) { modes_[m] = std::move(op); }

  Op fresh(Input in) {
    const std::size_t j = add_input(in);
    Op op{std::vector<cd>(inputs_.size(), 0.0), std::vector<cd>(inputs_.size(), 0.0)};
    op.u[j] = 1.0;
    return op;
  }

  static Op dagger(const Op& op) {
    Op out{op.u, op.v};
    for (std::size_t j = 0; j < op.u.size(); ++j) {
      out.u[j] = std::conj(op.v[j]);
      out.v[j] = std::conj(op.u[j]);
    }
    return out;
  }

  static Op combine(cd x, const Op& a, cd y, const Op& b) {
    Op out = a;
    for (std::size_t j = 0; j < a.u.size(); ++j) {
      out.u[j] = x * a.u[j] + y * b.u[j];
      out.v[j] = x * a.v[j] + y * b.v[j];
    }
    return out;
  }

  /// Pads every tracked operator to the current input count.
  Op padded(Op op) const {
    op.u.resize(inputs_.size(), 0.0);
    op.v.resize(inputs_.size(), 0.0);
    return op;
  }

  // Elements, written as the operator relations they implement.

  // out_a = G a + g b^dagger, out_b = G b + g a^dagger.
  void pa(std::size_t a, std::size_t b, double big, double small) {
    const Op A = modes_[a], B = modes_[b];
    modes_[a] = combine(big, A, small, dagger(B));
    modes_[b] = combine(big, B, small, dagger(A));
  }

  // Noisy PA with thermal auxiliaries of variance eps2.
  void noisy_pa(std::size_t a, std::size_t b, double Gb, double gb, double Gp, double gp,
                double eps2) {
    const Op a0 = fresh({0.0, eps2});
    const Op b0 = fresh({0.0, eps2});
    const Op A = padded(modes_[a]), B = padded(modes_[b]);
    const Op a0p = padded(a0), b0p = padded(b0);
    modes_[a] = combine(1.0, combine(Gb, A, gb, dagger(B)), 1.0,
                        combine(Gp, a0p, gp, dagger(b0p)));
    modes_[b] = combine(1.0, combine(Gb, B, gb, dagger(A)), 1.0,
                        combine(Gp, b0p, gp, dagger(a0p)));
    pad_all();
  }

  // out = G a + g a^dagger.
  void squeeze(std::size_t m, double big, double small) {
    const Op A = modes_[m];
    modes_[m] = combine(big, A, small, dagger(A));
  }

  // out_a = sqrt(T) a + sqrt(R) b, out_b = sqrt(T) b - sqrt(R) a.
  void bs(std::size_t a, std::size_t b, double T) {
    const Op A = modes_[a], B = modes_[b];
    modes_[a] = combine(std::sqrt(T), A, std::sqrt(1.0 - T), B);
    modes_[b] = combine(std::sqrt(T), B, -std::sqrt(1.0 - T), A);
  }

  void phase(std::size_t m, double phi) {
    modes_[m] = combine(std::polar(1.0, phi), modes_[m], 0.0, modes_[m]);
  }

  // Beamsplitter with an explicit vacuum ancilla.
  void loss(std::size_t m, double L) {
    const Op env = fresh({});
    pad_all();
    modes_[m] = combine(std::sqrt(1.0 - L), padded(modes_[m]), std::sqrt(L), padded(env));
  }

  /// <X(theta)> and Var X(theta) with X = e^{-i theta} k + e^{i theta} k^dagger.
  std::pair<double, double> homodyne(std::size_t m, double theta) const {
    const Op op = padded(modes_[m]);
    double mean = 0.0;
    double var = 0.0;
    for (std::size_t j = 0; j < inputs_.size(); ++j) {
      const cd c = std::polar(1.0, -theta) * op.u[j] + std::polar(1.0, theta) * std::conj(op.v[j]);
      mean += 2.0 * std::real(c * inputs_[j].mean);
      var += std::norm(c) * inputs_[j].variance;
    }
    return {mean, var};
  }

 private:
  void pad_all() {
    for (Op& op : modes_) op = padded(op);
  }

  std::vector<Input> inputs_;
  std::vector<Op> modes_;
};

/// SQ-MZI, line by line from the operator chain. Returns (mean X2, var X2).
inline std::pair<double, double> sq_mzi_x2(double g, double L_i, double L_e, double alpha,
                                           double phi, double T = 0.5) {
  OperatorCircuit c;
  const std::size_t dark = c.add_mode({});
  const std::size_t bright = c.add_mode({alpha, 1.0});
  c.squeeze(dark, std::sqrt(1.0 + g * g), g);
  c.bs(dark, bright, T);
  c.loss(dark, L_i);
  c.loss(bright, L_i);
  c.phase(bright, phi);
  c.bs(dark, bright, T);
  c.loss(dark, L_e);
  return c.homodyne(dark, 3.14159265358979323846 / 2.0);
}

struct NoisyPa {
  double Gb, gb, Gp, gp, eps2;
};

/// SISNI chain. `noisy` replaces the ideal amplifier when non-null.
inline std::pair<double, double> sisni_x2(double g1, double g2, double L_is, double L_ii,
                                          double L_e, double alpha, double phi_signal,
                                          double phi_pump, const NoisyPa* noisy1 = nullptr,
                                          const NoisyPa* noisy2 = nullptr, double theta = 0.0,
                                          bool use_theta = false, std::size_t port = 0) {
  OperatorCircuit c;
  const std::size_t a = c.add_mode({});
  const std::size_t b = c.add_mode({});
  const std::size_t bright = c.add_mode({alpha, 1.0});
  if (noisy1) {
    c.noisy_pa(a, b, noisy1->Gb, noisy1->gb, noisy1->Gp, noisy1->gp, noisy1->eps2);
  } else {
    c.pa(a, b, std::sqrt(1.0 + g1 * g1), g1);
  }
  // a now carries d (signal), b carries c (idler).
  c.loss(b, L_ii);
  c.phase(b, phi_pump);
  c.bs(a, bright, 0.5);
  c.loss(a, L_is);
  c.loss(bright, L_is);
  c.phase(bright, phi_signal);
  c.bs(a, bright, 0.5);
  if (noisy2) {
    c.noisy_pa(a, b, noisy2->Gb, noisy2->gb, noisy2->Gp, noisy2->gp, noisy2->eps2);
  } else {
    c.pa(a, b, std::sqrt(1.0 + g2 * g2), g2);
  }
  c.loss(a, L_e);
  c.loss(b, L_e);
  return c.homodyne(port == 0 ? a : b, use_theta ? theta : 3.14159265358979323846 / 2.0);
}

}  // namespace gicirc::oracle
