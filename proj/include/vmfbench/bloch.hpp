// Copyright 2026 The vmfbench Authors
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

// Pure qubit and spin-coherent states as points on the Bloch sphere.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vmfbench {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Vec3 = std::array<double, 3>;

// Direction (theta, phi) on the unit sphere. theta is kept in [0, pi] and
// phi in [0, 2pi). At the poles phi carries no information and is stored
// as 0, so every representation of a pole compares equal.
class BlochDirection {
 public:
  BlochDirection() = default;

  BlochDirection(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi)) {
      throw std::invalid_argument("BlochDirection: non-finite angle");
    }
    constexpr double kSlack = 1e-12;
    if (theta < -kSlack || theta > kPi + kSlack) {
      throw std::invalid_argument("BlochDirection: theta outside [0, pi]");
    }
    theta_ = std::clamp(theta, 0.0, kPi);
    if (theta_ == 0.0 || theta_ == kPi) {
      phi_ = 0.0;
    } else {
      phi_ = std::fmod(phi, kTwoPi);
      if (phi_ < 0.0) phi_ += kTwoPi;
      if (phi_ >= kTwoPi) phi_ = 0.0;
    }
  }

  // Unit vector need not be exactly normalized; it is rescaled here.
  static BlochDirection from_vector(const Vec3& v) {
    const double rho = std::hypot(v[0], v[1]);
    const double theta = std::atan2(rho, v[2]);
    const double phi = rho == 0.0 ? 0.0 : std::atan2(v[1], v[0]);
    return BlochDirection(theta, phi);
  }

  static BlochDirection north() { return {}; }

  double theta() const noexcept { return theta_; }
  double phi() const noexcept { return phi_; }

  Vec3 to_vector() const noexcept {
    const double s = std::sin(theta_);
    return {s * std::cos(phi_), s * std::sin(phi_), std::cos(theta_)};
  }

  BlochDirection antipode() const { return BlochDirection(kPi - theta_, phi_ + kPi); }

  friend bool operator==(const BlochDirection&, const BlochDirection&) = default;

 private:
  double theta_ = 0.0;
  double phi_ = 0.0;
};

// cos of the angle between two directions, clamped to [-1, 1].
inline double cos_angle_between(const BlochDirection& a, const BlochDirection& b) noexcept {
  const double c = std::cos(a.theta()) * std::cos(b.theta()) +
                   std::sin(a.theta()) * std::sin(b.theta()) * std::cos(a.phi() - b.phi());
  return std::clamp(c, -1.0, 1.0);
}

inline double angle_between(const BlochDirection& a, const BlochDirection& b) noexcept {
  return std::acos(cos_angle_between(a, b));
}

// |<a|b>|^2 = cos^2(alpha/2) for single-qubit pure states.
inline double qubit_overlap_sq(const BlochDirection& a, const BlochDirection& b) noexcept {
  return 0.5 * (1.0 + cos_angle_between(a, b));
}

// |<a|b>|^2 for N-qubit spin coherent states, cos^{2N}(alpha/2). Computed in
// log space so large N never underflows by repeated multiplication.
inline double spin_overlap_sq(const BlochDirection& a, const BlochDirection& b,
                              int n_particles) {
  if (n_particles < 1) throw std::invalid_argument("spin_overlap_sq: n_particles < 1");
  const double q = qubit_overlap_sq(a, b);
  if (q <= 0.0) return 0.0;
  return std::exp(static_cast<double>(n_particles) * std::log(q));
}

}  // namespace vmfbench
