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

// von Mises-Fisher prior on the Bloch sphere, density xi * exp(kappa cos theta),
// peaked at the north pole for kappa > 0.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "vmfbench/bloch.hpp"
#include "vmfbench/random.hpp"

namespace vmfbench {

namespace detail {

inline constexpr double kSeriesCutoff = 1e-2;

inline void require_positive_kappa(double kappa, const char* where) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument(std::string(where) + ": kappa must be finite and > 0");
  }
}

}  // namespace detail

namespace detail {

inline constexpr double kContinuedFractionCutoff = 2.0;

// L(kappa) / kappa = 1 / (3 + kappa^2 / (5 + kappa^2 / (7 + ...))), evaluated
// bottom-up; 24 levels reach full double precision for kappa < 2.
inline double langevin_ratio_continued_fraction(double kappa) {
  const double k2 = kappa * kappa;
  double tail = 0.0;
  for (int level = 24; level >= 1; --level) tail = k2 / (2.0 * level + 3.0 + tail);
  return 1.0 / (3.0 + tail);
}

}  // namespace detail

// (coth(kappa) - 1/kappa) / kappa, finite (1/3) as kappa -> 0.
inline double langevin_over_kappa(double kappa) {
  detail::require_positive_kappa(kappa, "langevin_over_kappa");
  if (kappa < detail::kSeriesCutoff) {
    const double k2 = kappa * kappa;
    return 1.0 / 3.0 - k2 * (1.0 / 45.0 - k2 * (2.0 / 945.0 - k2 / 4725.0));
  }
  if (kappa < detail::kContinuedFractionCutoff) return detail::langevin_ratio_continued_fraction(kappa);
  return (1.0 / std::tanh(kappa) - 1.0 / kappa) / kappa;
}

// Langevin function coth(kappa) - 1/kappa = <cos theta> = 1 - 2<n> per qubit.
inline double langevin(double kappa) {
  detail::require_positive_kappa(kappa, "langevin");
  if (kappa < detail::kContinuedFractionCutoff) return kappa * langevin_over_kappa(kappa);
  return 1.0 / std::tanh(kappa) - 1.0 / kappa;
}

// <cos^2 theta> under the prior, 1 - 2 L(kappa) / kappa.
inline double second_moment_cos(double kappa) {
  return 1.0 - 2.0 * langevin_over_kappa(kappa);
}

// Mean excitation of one qubit, (1 - coth kappa + 1/kappa) / 2, in (0, 1/2).
inline double mean_excitation_per_qubit(double kappa) {
  detail::require_positive_kappa(kappa, "mean_excitation_per_qubit");
  if (kappa < 1.0) return 0.5 * (1.0 - langevin(kappa));
  // 1 - coth k = -2 / (e^{2k} - 1); avoids cancellation for large kappa.
  return 0.5 * (1.0 / kappa - 2.0 / std::expm1(2.0 * kappa));
}

namespace detail {

// d<n>/dkappa for one qubit, used only to steer Newton steps.
inline double mean_excitation_slope(double kappa) {
  if (kappa < kSeriesCutoff) return -0.5 * (1.0 / 3.0 - kappa * kappa / 15.0);
  const double s = std::sinh(kappa);
  const double inv_s2 = std::isfinite(s) ? 1.0 / (s * s) : 0.0;
  return -0.5 * (1.0 / (kappa * kappa) - inv_s2);
}

}  // namespace detail

// Inverts N * mean_excitation_per_qubit(kappa) = mean_n. Safeguarded Newton
// in log(kappa) inside a shrinking bisection bracket.
inline double kappa_from_mean_n(double mean_n, int n_particles) {
  if (n_particles < 1) throw std::invalid_argument("kappa_from_mean_n: n_particles < 1");
  const double n_total = static_cast<double>(n_particles);
  if (!(mean_n > 0.0) || !(mean_n < 0.5 * n_total)) {
    throw std::domain_error("kappa_from_mean_n: mean excitation " + std::to_string(mean_n) +
                            " outside (0, N/2) for N = " + std::to_string(n_particles) +
                            "; a von Mises-Fisher prior with kappa > 0 cannot represent it");
  }
  const double target = mean_n / n_total;
  auto residual = [&](double log_k) { return mean_excitation_per_qubit(std::exp(log_k)) - target; };

  // <n>(k) >= (1 - k/3)/2 and <n>(k) <= 1/(2k) bound the root.
  double lo = std::log(std::max(1.5 * (1.0 - 2.0 * target), std::numeric_limits<double>::min()));
  double hi = std::log(1.0 / target);
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 400; ++iter) {
    const double r = residual(x);
    if (r == 0.0) return std::exp(x);
    // The residual decreases with kappa.
    if (r > 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double k = std::exp(x);
    const double slope = detail::mean_excitation_slope(k) * k;
    double next = slope != 0.0 ? x - r / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x)) ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) {
      return std::exp(next);
    }
    x = next;
  }
  return std::exp(x);
}

class VmfPrior {
 public:
  explicit VmfPrior(double kappa) : kappa_(kappa) {
    detail::require_positive_kappa(kappa, "VmfPrior");
  }

  double kappa() const noexcept { return kappa_; }

  // xi = kappa / (4 pi sinh kappa); 1/(4 pi) in the uniform limit. Underflows
  // to 0 for kappa beyond ~700, where density() stays well defined.
  double xi() const noexcept {
    if (kappa_ < detail::kSeriesCutoff) {
      const double k2 = kappa_ * kappa_;
      // kappa / sinh kappa = 1 - k^2/6 + 7 k^4/360
      return (1.0 - k2 / 6.0 + 7.0 * k2 * k2 / 360.0) / (4.0 * kPi);
    }
    return kappa_ / (4.0 * kPi * std::sinh(kappa_));
  }

  // xi * e^kappa, the peak density, kappa / (2 pi (1 - e^{-2 kappa})).
  double peak_density() const noexcept {
    if (kappa_ < detail::kSeriesCutoff) return xi() * std::exp(kappa_);
    return kappa_ / (2.0 * kPi * -std::expm1(-2.0 * kappa_));
  }

  // Density per steradian at polar angle theta.
  double density(double theta) const noexcept {
    return peak_density() * std::exp(kappa_ * (std::cos(theta) - 1.0));
  }

  double mean_excitation(int n_particles = 1) const {
    return n_particles * mean_excitation_per_qubit(kappa_);
  }

  // Exact inverse-CDF draw: cos theta = 1 + ln(u + (1 - u) e^{-2 kappa}) / kappa,
  // the same map as kappa^-1 ln(e^-kappa + 2 u sinh kappa) written to stay
  // accurate for small and large kappa.
  template <UniformSource R>
  BlochDirection sample(R& rng) const {
    const double u = rng.uniform();
    const double v = rng.uniform();
    const double spread = -std::expm1(-2.0 * kappa_);  // 1 - e^{-2 kappa}
    double cos_theta = 1.0 + std::log1p(-(1.0 - u) * spread) / kappa_;
    cos_theta = std::clamp(cos_theta, -1.0, 1.0);
    return BlochDirection(std::acos(cos_theta), kTwoPi * v);
  }

 private:
  double kappa_;
};

template <UniformSource R>
BlochDirection sample_direction(const VmfPrior& prior, R& rng) {
  return prior.sample(rng);
}

}  // namespace vmfbench
