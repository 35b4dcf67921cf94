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

// Single-qubit coherent-spin POVM: the measurement returns a direction
// (theta_M, phi_M) with density cos^2(alpha/2) / (2 pi), the guess is the
// posterior-optimal direction (theta~, phi_M).

#include <algorithm>
#include <cmath>
#include <string>

#include "vmfbench/errors.hpp"
#include "vmfbench/numerics.hpp"
#include "vmfbench/prior.hpp"

namespace vmfbench {

// Marginal density of the measured direction, [1 + (1 - 2<n>) cos theta_M] / (4 pi).
inline double evidence_1q(double kappa, double theta_m) {
  return (1.0 + langevin(kappa) * std::cos(theta_m)) / (4.0 * kPi);
}

namespace detail {

// kappa / (1 - 2<n>), tends to 3 as kappa -> 0.
inline double kappa_over_langevin(double kappa) { return 1.0 / langevin_over_kappa(kappa); }

// kappa + (kappa / (1 - 2<n>) - 2) cos theta_M: the quantity whose sign
// decides which hemisphere the estimate falls in.
inline double estimator_denominator_1q(double kappa, double theta_m) {
  return kappa + (kappa_over_langevin(kappa) - 2.0) * std::cos(theta_m);
}

// 3 (1 - 2<n>) / kappa - 1 = -kappa^2/15 + ..., by series where the direct
// difference cancels.
inline double excess_over_third(double kappa) {
  if (kappa < 5e-2) {
    const double k2 = kappa * kappa;
    return k2 * (-1.0 / 15.0 + k2 * (2.0 / 315.0 + k2 * (-1.0 / 1575.0 + k2 * (2.0 / 31185.0))));
  }
  return 3.0 * langevin_over_kappa(kappa) - 1.0;
}

}  // namespace detail

// Posterior-optimal polar angle of the guess,
//   tan theta~ = sin theta_M / [kappa + (kappa / (1 - 2<n>) - 2) cos theta_M],
// on the branch in [0, pi]. Equivalently kappa^2 sinh(kappa) / (kappa cosh
// kappa - sinh kappa) for the coefficient of cos theta_M.
inline double optimal_estimator_1q(double kappa, double theta_m) {
  detail::require_positive_kappa(kappa, "optimal_estimator_1q");
  return std::atan2(std::sin(theta_m), detail::estimator_denominator_1q(kappa, theta_m));
}

// Posterior-mean fidelity at the optimal guess for a measured theta_M.
inline double conditional_fidelity_1q(double kappa, double theta_m) {
  const double m = langevin(kappa);
  const double m_over_k = langevin_over_kappa(kappa);
  const double c = std::cos(theta_m);
  const double s = std::sin(theta_m);
  const double lead = detail::estimator_denominator_1q(kappa, theta_m);
  const double d = lead * lead + s * s;
  return (1.0 + m * c + m_over_k * std::sqrt(d)) / (2.0 * (1.0 + m * c));
}

struct PovmClosedForm {
  double kappa = 0.0;
  double script_a = 0.0;
  double script_b_plus = 0.0;
  double script_b_minus = 0.0;
  double script_c_plus = 0.0;
  double script_c_minus = 0.0;
  // (3 - 6<n> - kappa) and (1 - 2<n> - kappa); both negative for kappa > 0.
  double radicand_factor_1 = 0.0;
  double radicand_factor_2 = 0.0;
  double fidelity = 0.0;
  // Set when fidelity comes from quadrature (small kappa) instead of the
  // closed form; the coefficients are still reported.
  bool via_quadrature = false;
};

// Mean fidelity: the average of conditional_fidelity_1q over evidence_1q, by
// adaptive quadrature in cos theta_M.
inline double mean_fidelity_1q_quadrature(double kappa, double tolerance = 1e-10) {
  detail::require_positive_kappa(kappa, "mean_fidelity_1q_quadrature");
  auto integrand = [kappa](double cos_m) {
    const double theta_m = std::acos(std::clamp(cos_m, -1.0, 1.0));
    return kTwoPi * conditional_fidelity_1q(kappa, theta_m) * evidence_1q(kappa, theta_m);
  };
  return numerics::integrate_adaptive(integrand, -1.0, 1.0, tolerance).value;
}

inline constexpr double kClosedFormMinKappa = 5e-2;

// Closed-form mean fidelity with the coefficients A, B_pm, C_pm.
inline PovmClosedForm mean_fidelity_1q_closed(double kappa) {
  detail::require_positive_kappa(kappa, "mean_fidelity_1q_closed");
  const double m = langevin(kappa);  // 1 - 2<n>
  const double n = mean_excitation_per_qubit(kappa);

  PovmClosedForm r;
  r.kappa = kappa;
  r.radicand_factor_1 = kappa * detail::excess_over_third(kappa);
  r.radicand_factor_2 = kappa * (langevin_over_kappa(kappa) - 1.0);
  if (!(r.radicand_factor_1 < 0.0 && r.radicand_factor_2 < 0.0)) {
    throw NumericError("mean_fidelity_1q_closed: radicand factors not both negative at kappa = " +
                       std::to_string(kappa));
  }
  const double root = std::sqrt(r.radicand_factor_1 * r.radicand_factor_2);

  r.script_a = 1.0 - kappa * kappa * m * m / (root * root);
  const double shared = kappa * (kappa - 2.0 + 4.0 * n) / root;
  r.script_b_plus = shared + root / m;
  r.script_b_minus = shared - root / m;
  const double rad_plus = r.script_a + r.script_b_plus * r.script_b_plus;
  const double rad_minus = r.script_a + r.script_b_minus * r.script_b_minus;
  constexpr double kSlack = 1e-12;
  if (rad_plus < -kSlack || rad_minus < -kSlack) {
    throw NumericError("mean_fidelity_1q_closed: negative radicand A + B^2 at kappa = " +
                       std::to_string(kappa));
  }
  r.script_c_plus = std::sqrt(std::max(rad_plus, 0.0));
  r.script_c_minus = std::sqrt(std::max(rad_minus, 0.0));

  if (kappa < kClosedFormMinKappa) {
    r.fidelity = mean_fidelity_1q_quadrature(kappa);
    r.via_quadrature = true;
    return r;
  }

  const double bp = r.script_b_plus, bm = r.script_b_minus;
  const double cp = r.script_c_plus, cm = r.script_c_minus;
  const double log_term = std::log((cp + bp) * (cm - bm) / ((cp - bp) * (cm + bm)));
  const double bracket = 2.0 * (bp * cp - bm * cm) + r.script_a * log_term;
  r.fidelity = 0.5 + m * m / (16.0 * kappa * root) * bracket;
  if (!std::isfinite(r.fidelity)) {
    throw NumericError("mean_fidelity_1q_closed: non-finite result at kappa = " + std::to_string(kappa));
  }
  return r;
}

}  // namespace vmfbench
