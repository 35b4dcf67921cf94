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

// Quadrature and one-dimensional maximization used by the benchmark modules.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "vmfbench/errors.hpp"

namespace vmfbench::numerics {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

// Adaptive Gauss-Kronrod (61-point Kronrod extension of the 30-point
// Gauss-Legendre rule) with bisection of the interval. Throws NumericError
// carrying the achieved error estimate if `tolerance` is not met.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double tolerance,
                                    unsigned max_depth = 18) {
  double error = 0.0;
  double l1 = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, a, b, max_depth, tolerance, &error, &l1);
  if (!std::isfinite(value) || error > tolerance * std::max(1.0, l1)) {
    char msg[128];
    std::snprintf(msg, sizeof msg,
                  "adaptive quadrature did not converge: error estimate %.3e exceeds tolerance %.3e",
                  error, tolerance);
    throw NumericError(msg, error);
  }
  return {value, error};
}

// Composite Gauss-Legendre rule on [a, b] with `panels` equal panels of 30
// nodes each. Used where the same nodes are reused across many integrands.
struct FixedRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  static FixedRule gauss_legendre(double a, double b, std::size_t panels) {
    using Rule = boost::math::quadrature::gauss<double, 30>;
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    FixedRule rule;
    panels = std::max<std::size_t>(panels, 1);
    const double width = (b - a) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
      const double lo = a + width * static_cast<double>(p);
      const double mid = lo + 0.5 * width;
      const double half = 0.5 * width;
      // Boost stores the non-negative half of the symmetric abscissae.
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) {
          rule.nodes.push_back(mid);
          rule.weights.push_back(half * w[i]);
          continue;
        }
        rule.nodes.push_back(mid - half * x[i]);
        rule.weights.push_back(half * w[i]);
        rule.nodes.push_back(mid + half * x[i]);
        rule.weights.push_back(half * w[i]);
      }
    }
    return rule;
  }

  template <class F>
  double apply(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

// Golden-section search for the maximum of a unimodal f on [lo, hi].
template <class F>
double golden_section_maximize(F&& f, double lo, double hi, double tolerance) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double x1 = hi - kInvPhi * (hi - lo);
  double x2 = lo + kInvPhi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tolerance) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + kInvPhi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - kInvPhi * (hi - lo);
      f1 = f(x1);
    }
  }
  return 0.5 * (lo + hi);
}

// Grid scan followed by golden-section refinement around the best node.
// Returns the arg max; ties resolve to the lowest grid index.
template <class F>
double grid_then_golden_maximize(F&& f, double lo, double hi, std::size_t grid_points,
                                 double tolerance) {
  grid_points = std::max<std::size_t>(grid_points, 3);
  const double step = (hi - lo) / static_cast<double>(grid_points - 1);
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double x = i + 1 == grid_points ? hi : lo + step * static_cast<double>(i);
    const double v = f(x);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double a = best == 0 ? lo : lo + step * static_cast<double>(best - 1);
  const double b = best + 1 >= grid_points ? hi : lo + step * static_cast<double>(best + 1);
  const double refined = golden_section_maximize(f, a, b, tolerance);
  // Keep the grid node unless refinement strictly improves on it.
  const double grid_x = best + 1 == grid_points ? hi : lo + step * static_cast<double>(best);
  return f(refined) > best_value ? refined : grid_x;
}

}  // namespace vmfbench::numerics
