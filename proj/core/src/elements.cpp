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

#include "gicirc/elements.hpp"

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

void check_pair(ModePair pair, std::size_t n_modes) {
  check_mode(pair.a, n_modes);
  check_mode(pair.b, n_modes);
  if (pair.a == pair.b) {
    throw Error(ErrorKind::kRange, fmt::format("two-mode element needs distinct modes, got {} twice",
                                               pair.a));
  }
}

// Writes the 2x2 quadrature image of  out_i = G in_i + g in_j^dagger  for
// both outputs of the pair into `s`.
void write_two_mode_gain(Matrix& s, ModePair pair, double big, double small) {
  const Eigen::Matrix2d conj_coupling = Eigen::Vector2d(small, -small).asDiagonal();
  const auto a = static_cast<Eigen::Index>(2 * pair.a);
  const auto b = static_cast<Eigen::Index>(2 * pair.b);
  s.block<2, 2>(a, a) = big * Eigen::Matrix2d::Identity();
  s.block<2, 2>(b, b) = big * Eigen::Matrix2d::Identity();
  s.block<2, 2>(a, b) = conj_coupling;
  s.block<2, 2>(b, a) = conj_coupling;
}

}  // namespace

PaGain PaGain::from_g(double g) {
  if (!std::isfinite(g) || g < 0.0) {
    throw Error(ErrorKind::kRange, fmt::format("gain g must be finite and >= 0, got {}", g));
  }
  return PaGain(g);
}

double PaGain::G() const { return std::sqrt(1.0 + g_ * g_); }

LossSpec::LossSpec(double loss) : loss_(loss) {
  if (!(loss >= 0.0 && loss <= 1.0)) {
    throw Error(ErrorKind::kRange, fmt::format("L outside [0,1]: {}", loss));
  }
}

ElementMap parametric_amplifier(std::size_t n_modes, ModePair pair, PaGain gain) {
  check_pair(pair, n_modes);
  ElementMap map = ElementMap::identity(n_modes);
  write_two_mode_gain(map.linear, pair, gain.G(), gain.g());
  return map;
}

ElementMap single_mode_squeezer(std::size_t n_modes, std::size_t mode, PaGain gain) {
  check_mode(mode, n_modes);
  ElementMap map = ElementMap::identity(n_modes);
  const auto i = static_cast<Eigen::Index>(2 * mode);
  map.linear(i, i) = gain.G() + gain.g();
  map.linear(i + 1, i + 1) = gain.G() - gain.g();
  return map;
}

ElementMap beamsplitter(std::size_t n_modes, ModePair pair, double transmission,
                        BsConvention convention) {
  check_pair(pair, n_modes);
  if (!(transmission >= 0.0 && transmission <= 1.0)) {
    throw Error(ErrorKind::kRange, fmt::format("T outside [0,1]: {}", transmission));
  }
  const double t = std::sqrt(transmission);
  const double r = std::sqrt(1.0 - transmission);
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  const auto a = static_cast<Eigen::Index>(2 * pair.a);
  const auto b = static_cast<Eigen::Index>(2 * pair.b);

  ElementMap map = ElementMap::identity(n_modes);
  map.linear.block<2, 2>(a, a) = t * id;
  map.linear.block<2, 2>(a, b) = r * id;
  switch (convention) {
    case BsConvention::kFirstPlus:
      map.linear.block<2, 2>(b, a) = r * id;
      map.linear.block<2, 2>(b, b) = -t * id;
      break;
    case BsConvention::kMziMinus:
      map.linear.block<2, 2>(b, a) = -r * id;
      map.linear.block<2, 2>(b, b) = t * id;
      break;
  }
  return map;
}

ElementMap phase_shift(std::size_t n_modes, std::size_t mode, double phi) {
  check_mode(mode, n_modes);
  ElementMap map = ElementMap::identity(n_modes);
  const auto i = static_cast<Eigen::Index>(2 * mode);
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  map.linear.block<2, 2>(i, i) << c, -s, s, c;
  return map;
}

ElementMap loss_channel(std::size_t n_modes, std::size_t mode, LossSpec loss) {
  check_mode(mode, n_modes);
  ElementMap map = ElementMap::identity(n_modes);
  const auto i = static_cast<Eigen::Index>(2 * mode);
  map.linear.block<2, 2>(i, i) *= std::sqrt(loss.transmission());
  map.noise.block<2, 2>(i, i) = loss.value() * Eigen::Matrix2d::Identity();
  return map;
}

double qng_of(PaGain gain) { return 1.0 + 2.0 * gain.g() * gain.g(); }

PaGain gain_from_qng(double qng_db) {
  if (!(qng_db >= 0.0) || !std::isfinite(qng_db)) {
    throw Error(ErrorKind::kRange, fmt::format("QNG must be >= 0 dB, got {}", qng_db));
  }
  return PaGain::from_g(std::sqrt((from_db(qng_db) - 1.0) / 2.0));
}

double to_db(double linear) { return 10.0 * std::log10(linear); }
double from_db(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace gicirc
