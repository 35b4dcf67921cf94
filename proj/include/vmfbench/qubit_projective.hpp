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

// Single-qubit benchmarks with a two-outcome projective measurement along an
// axis at polar angle theta0 (azimuth 0), followed by the best guess for each
// outcome given the prior.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "vmfbench/bloch.hpp"
#include "vmfbench/prior.hpp"

namespace vmfbench {

// Guess for the "+" outcome lies at azimuth 0, for "-" at azimuth pi. The
// stored guess angles are signed polar angles in the phi = 0 half plane
// (tan theta_pm = pm B / A_pm); a negative value means the phi = pi side.
struct AxisBenchmark {
  double theta0 = 0.0;
  double a_plus = 0.0;
  double a_minus = 0.0;
  double b = 0.0;
  double guess_plus = 0.0;
  double guess_minus = 0.0;
  double fidelity = 0.0;

  BlochDirection guess(bool plus_outcome) const {
    const double g = plus_outcome ? guess_plus : guess_minus;
    return g >= 0.0 ? BlochDirection(g, 0.0) : BlochDirection(-g, kPi);
  }
};

// Guess the pole without measuring: 1 - <n>.
inline double fidelity_do_nothing(double kappa) { return 1.0 - mean_excitation_per_qubit(kappa); }

// Best guess after measuring sigma_x = +1: arctan(1/kappa).
inline double optimal_guess_equatorial(double kappa) {
  detail::require_positive_kappa(kappa, "optimal_guess_equatorial");
  return std::atan2(1.0, kappa);
}

// 1/2 [1 + L(kappa) sqrt(1 + 1/kappa^2)], written with L/kappa so the
// kappa -> 0 limit (2/3) is reached without cancellation.
inline double fidelity_equatorial(double kappa) {
  return 0.5 * (1.0 + langevin_over_kappa(kappa) * std::hypot(kappa, 1.0));
}

// Measure along the prior axis and take the outcome itself as the guess.
inline double fidelity_no_prior(double kappa) { return 1.0 - langevin_over_kappa(kappa); }

inline AxisBenchmark fidelity_axis(double kappa, double theta0) {
  detail::require_positive_kappa(kappa, "fidelity_axis");
  if (!(theta0 >= 0.0 && theta0 <= 0.5 * kPi)) {
    throw std::invalid_argument("fidelity_axis: theta0 must lie in [0, pi/2]");
  }
  const double m = langevin(kappa);             // 1 - 2<n>
  const double m_over_k = langevin_over_kappa(kappa);
  const double c0 = std::cos(theta0);
  const double s0 = std::sin(theta0);

  AxisBenchmark r;
  r.theta0 = theta0;
  // A_pm = (m/4)[1 pm (1/m - 2/kappa) cos theta0], B = m sin theta0 / (4 kappa).
  const double tilt = (1.0 - 2.0 * m_over_k) * c0 / 4.0;
  r.a_plus = m / 4.0 + tilt;
  r.a_minus = m / 4.0 - tilt;
  r.b = m_over_k * s0 / 4.0;
  r.guess_plus = std::atan2(r.b, r.a_plus);
  // Cusp tie: both branches give the same fidelity; take pi/2 on the phi = pi side.
  r.guess_minus = (r.a_minus == 0.0 && r.b == 0.0) ? -0.5 * kPi : std::atan2(-r.b, r.a_minus);
  r.fidelity = 0.5 + std::hypot(r.a_plus, r.b) + std::hypot(r.a_minus, r.b);
  return r;
}

// Probability of the "+" outcome for the axis at theta0 given the true state.
inline double axis_plus_probability(double theta0, const BlochDirection& state) {
  return qubit_overlap_sq(BlochDirection(theta0, 0.0), state);
}

struct Crossover {
  double kappa_c = 0.0;
  double n_c = 0.0;
};

// Root of <n>(kappa) = 1 / (kappa + 2), where do-nothing and no-prior
// fidelities meet (the cusp of the theta0 = 0 curve).
inline Crossover crossover_excitation() {
  auto g = [](double k) { return mean_excitation_per_qubit(k) - 1.0 / (k + 2.0); };
  // g(0.1) > 0, g(10) < 0.
  double lo = 0.1;
  double hi = 10.0;
  while (hi - lo > 1e-15 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  const double k = 0.5 * (lo + hi);
  return {k, 1.0 / (k + 2.0)};
}

}  // namespace vmfbench
