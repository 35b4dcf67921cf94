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

// N-qubit spin coherent states under the coherent-spin POVM. The outcome
// density is the Husimi Q-function, (N + 1)/(4 pi) cos^{2N}(alpha/2); the
// guess keeps the measured azimuth and optimizes the polar angle
// numerically.
//
// All integrals over the true direction are done in c = cos(theta) after the
// azimuthal average, which is exact via <cos^{2j} psi> = C(2j, j) / 4^j.
// For fixed (N, kappa) the integrand is exp(kappa c) times a polynomial of
// degree <= 2N in c, so one composite Gauss-Legendre rule serves every
// measured angle and every candidate guess.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vmfbench/bloch.hpp"
#include "vmfbench/errors.hpp"
#include "vmfbench/numerics.hpp"
#include "vmfbench/prior.hpp"

namespace vmfbench {

struct EstimatorCurve {
  int n_particles = 1;
  double kappa = 0.0;
  std::vector<std::pair<double, double>> samples;  // (theta_m, theta_tilde)
  double small_angle_gain = 0.0;
};

struct FidelityPoint {
  double mean_n = 0.0;
  double kappa = 0.0;
  double fidelity = 0.0;
};

// n_particles empty means N -> infinity (the continuous-variable limit).
struct FidelityCurve {
  std::optional<int> n_particles;
  std::string strategy;
  std::vector<FidelityPoint> points;
};

// Q-function outcome density at angular distance alpha from the state.
inline double povm_likelihood(int n_particles, double alpha) {
  if (n_particles < 1) throw std::invalid_argument("povm_likelihood: n_particles < 1");
  const double q = 0.5 * (1.0 + std::cos(alpha));
  const double kernel = q <= 0.0 ? 0.0 : std::exp(n_particles * std::log(q));
  return (n_particles + 1) / (4.0 * kPi) * kernel;
}

// Mean fidelity of the heterodyne benchmark for infinitely many qubits.
inline double asymptotic_fidelity(double mean_n) {
  if (!(mean_n >= 0.0)) throw std::invalid_argument("asymptotic_fidelity: mean_n < 0");
  if (std::isinf(mean_n)) return 0.5;
  return (mean_n + 1.0) / (2.0 * mean_n + 1.0);
}

struct UniformPriorBenchmarks {
  double single_qubit_recreation = 0.0;  // (N+1)/(N+2)
  double full_state_recreation = 0.0;    // (N+1)/(2N+1)
};

inline UniformPriorBenchmarks uniform_prior_benchmarks(int n_particles) {
  if (n_particles < 1) throw std::invalid_argument("uniform_prior_benchmarks: n_particles < 1");
  const double n = n_particles;
  return {(n + 1.0) / (n + 2.0), (n + 1.0) / (2.0 * n + 1.0)};
}

struct EstimatorSearch {
  std::size_t grid_points = 129;
  double tolerance = 1e-8;
};

class SpinCoherentModel {
 public:
  SpinCoherentModel(int n_particles, double kappa, EstimatorSearch search = {})
      : n_(n_particles), prior_(kappa), search_(search) {
    if (n_particles < 1) throw std::invalid_argument("SpinCoherentModel: n_particles < 1");
    binom_.assign(static_cast<std::size_t>(n_) + 1, 1.0);
    for (int k = 1; k <= n_; ++k) binom_[k] = binom_[k - 1] * (n_ - k + 1) / k;
    cos_moment_.assign(2 * static_cast<std::size_t>(n_) + 1, 0.0);
    double central = 1.0;  // C(2j, j) / 4^j
    for (int j = 0; 2 * j <= 2 * n_; ++j) {
      cos_moment_[2 * j] = central;
      central *= (2.0 * j + 1.0) / (2.0 * j + 2.0);
    }
    rule_ = build_rule(panel_count(1));
    check_rule();
  }

  int n_particles() const noexcept { return n_; }
  double kappa() const noexcept { return prior_.kappa(); }
  const VmfPrior& prior() const noexcept { return prior_; }

  // P(theta_M, phi_M) per steradian; independent of phi_M.
  double evidence(double theta_m) const {
    const Posterior post = posterior(theta_m);
    return evidence_scale() * post.mass;
  }

  // Posterior-averaged overlap for the guess (theta_tilde, phi_M).
  double conditional_fidelity(double theta_m, double theta_tilde) const {
    const Posterior post = posterior(theta_m);
    return objective(post, theta_tilde) / post.mass;
  }

  double conditional_fidelity(const BlochDirection& measured, double theta_tilde) const {
    return conditional_fidelity(measured.theta(), theta_tilde);
  }

  // Unnormalized posterior overlap: the integral over the sphere of
  // cos^{2N}(alpha_M/2) cos^{2N}(alpha~/2) exp(kappa (cos theta - 1)).
  double unnormalized_objective(double theta_m, double theta_tilde) const {
    return kTwoPi * objective(posterior(theta_m), theta_tilde);
  }

  // arg max over theta~ in [0, pi]: grid scan then golden section.
  double optimize_estimator(double theta_m) const { return best_guess(posterior(theta_m)).first; }

  // (theta~, conditional fidelity at theta~).
  std::pair<double, double> optimal_guess(double theta_m) const {
    const Posterior post = posterior(theta_m);
    const auto [theta, value] = best_guess(post);
    return {theta, value / post.mass};
  }

  EstimatorCurve estimator_curve(std::size_t grid_size) const {
    if (grid_size < 9) throw std::invalid_argument("estimator_curve: grid_size must be >= 9");
    EstimatorCurve curve;
    curve.n_particles = n_;
    curve.kappa = kappa();
    curve.samples.reserve(grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) {
      const double theta_m =
          i + 1 == grid_size ? kPi : kPi * static_cast<double>(i) / static_cast<double>(grid_size - 1);
      curve.samples.emplace_back(theta_m, optimize_estimator(theta_m));
    }
    curve.small_angle_gain = small_angle_gain();
    return curve;
  }

  // Slope of theta~ against theta_M at the pole. theta~ is odd under
  // reflection through the pole, so theta~(h) / h = g + O(h^2); two steps
  // are combined by Richardson extrapolation. The step stays well above the
  // ~1e-8 resolution of the guess search.
  double small_angle_gain(double step = 1e-2) const {
    const double coarse = optimize_estimator(2.0 * step) / (2.0 * step);
    const double fine = optimize_estimator(step) / step;
    return (4.0 * fine - coarse) / 3.0;
  }

  // <F> = integral over measured directions of P(theta_M) F(theta_M) at the
  // optimal guess, adaptive in cos theta_M.
  double mean_fidelity(double tolerance = 1e-7) const {
    auto integrand = [this](double cos_m) {
      const double theta_m = std::acos(std::clamp(cos_m, -1.0, 1.0));
      const Posterior post = posterior(theta_m);
      return kTwoPi * evidence_scale() * best_guess(post).second;
    };
    return numerics::integrate_adaptive(integrand, -1.0, 1.0, tolerance).value;
  }

  // Guess the pole without measuring: prior average of cos^{2N}(theta/2).
  double do_nothing_fidelity() const {
    const double n = n_;
    const double integral = rule_.apply([&](double c) {
      const double q = 0.5 * (1.0 + c);
      return q <= 0.0 ? 0.0 : std::exp(n * std::log(q) + kappa() * (c - 1.0));
    });
    return kTwoPi * prior_.peak_density() * integral;
  }

 private:
  struct Posterior {
    std::vector<double> weight;   // rule weight * exp(kappa (c - 1))
    std::vector<double> cos_t;
    std::vector<double> sin_t;
    std::vector<double> moments;  // per node, T_k for k = 0..N
    double mass = 0.0;            // sum of weight * T_0
  };

  std::size_t panel_count(std::size_t refine) const {
    const double k = kappa();
    const std::size_t by_kappa = static_cast<std::size_t>(std::ceil(k / 2.0));
    const std::size_t by_degree = static_cast<std::size_t>((n_ + 9) / 10);
    return refine * std::max<std::size_t>({1, by_kappa, by_degree});
  }

  static numerics::FixedRule build_rule(std::size_t panels) {
    return numerics::FixedRule::gauss_legendre(-1.0, 1.0, panels);
  }

  // Compares the evidence against a rule with twice the panels.
  void check_rule() const {
    SpinCoherentModel refined = *this;
    refined.rule_ = build_rule(panel_count(2));
    for (double theta_m : {0.0, 0.5 * kPi, kPi}) {
      const double a = posterior(theta_m).mass;
      const double b = refined.posterior(theta_m).mass;
      const double rel = std::abs(a - b) / std::max(std::abs(b), 1e-300);
      if (!(rel < 1e-11)) {
        throw NumericError("SpinCoherentModel: quadrature rule not converged for N = " +
                               std::to_string(n_) + ", kappa = " + std::to_string(kappa()),
                           rel);
      }
    }
  }

  // (N+1)/(4 pi) * xi e^kappa: converts the rule's azimuth-averaged mass to
  // the evidence density.
  double evidence_scale() const { return (n_ + 1) / (4.0 * kPi) * prior_.peak_density() * kTwoPi; }

  // Coefficients of (a + b x)^N in powers of x.
  void expand(double a, double b, double* out) const {
    // a^{N-k} b^k built from both ends to keep zero bases exact.
    double bp = 1.0;
    for (int k = 0; k <= n_; ++k) {
      out[k] = binom_[k] * bp;
      bp *= b;
    }
    double ap = 1.0;
    for (int k = n_; k >= 0; --k) {
      out[k] *= ap;
      ap *= a;
    }
  }

  Posterior posterior(double theta_m) const {
    const std::size_t nodes = rule_.nodes.size();
    const std::size_t width = static_cast<std::size_t>(n_) + 1;
    const double cm = std::cos(theta_m);
    const double sm = std::sin(theta_m);
    Posterior post;
    post.weight.resize(nodes);
    post.cos_t.resize(nodes);
    post.sin_t.resize(nodes);
    post.moments.assign(nodes * width, 0.0);
    std::vector<double> coeff(width);
    for (std::size_t i = 0; i < nodes; ++i) {
      const double c = rule_.nodes[i];
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      post.cos_t[i] = c;
      post.sin_t[i] = s;
      post.weight[i] = rule_.weights[i] * std::exp(kappa() * (c - 1.0));
      expand(0.5 * (1.0 + cm * c), 0.5 * sm * s, coeff.data());
      double* t = &post.moments[i * width];
      for (std::size_t k = 0; k < width; ++k) {
        double acc = 0.0;
        for (std::size_t j = k % 2; j < width; j += 2) acc += coeff[j] * cos_moment_[j + k];
        t[k] = acc;
      }
      post.mass += post.weight[i] * t[0];
    }
    return post;
  }

  // Rule sum of weight * <(guess overlap) (measurement likelihood)>_psi.
  double objective(const Posterior& post, double theta_tilde) const {
    const std::size_t width = static_cast<std::size_t>(n_) + 1;
    const double cg = std::cos(theta_tilde);
    const double sg = std::sin(theta_tilde);
    thread_local std::vector<double> coeff;
    coeff.resize(width);
    double sum = 0.0;
    for (std::size_t i = 0; i < post.weight.size(); ++i) {
      expand(0.5 * (1.0 + cg * post.cos_t[i]), 0.5 * sg * post.sin_t[i], coeff.data());
      const double* t = &post.moments[i * width];
      double acc = 0.0;
      for (std::size_t k = 0; k < width; ++k) acc += coeff[k] * t[k];
      sum += post.weight[i] * acc;
    }
    return sum;
  }

  std::pair<double, double> best_guess(const Posterior& post) const {
    auto f = [&](double theta) { return objective(post, theta); };
    const double theta =
        numerics::grid_then_golden_maximize(f, 0.0, kPi, search_.grid_points, search_.tolerance);
    return {theta, f(theta)};
  }

  int n_;
  VmfPrior prior_;
  EstimatorSearch search_;
  std::vector<double> binom_;
  std::vector<double> cos_moment_;
  numerics::FixedRule rule_;
};

inline double evidence_nq(int n_particles, double kappa, double theta_m) {
  return SpinCoherentModel(n_particles, kappa).evidence(theta_m);
}

inline double conditional_fidelity_nq(int n_particles, double kappa, double theta_m,
                                      double theta_tilde) {
  return SpinCoherentModel(n_particles, kappa).conditional_fidelity(theta_m, theta_tilde);
}

inline double optimize_estimator(int n_particles, double kappa, double theta_m) {
  return SpinCoherentModel(n_particles, kappa).optimize_estimator(theta_m);
}

inline EstimatorCurve estimator_curve(int n_particles, double kappa, std::size_t grid_size) {
  return SpinCoherentModel(n_particles, kappa).estimator_curve(grid_size);
}

inline double mean_fidelity_nq(int n_particles, double kappa) {
  return SpinCoherentModel(n_particles, kappa).mean_fidelity();
}

inline double do_nothing_fidelity_nq(int n_particles, double kappa) {
  return SpinCoherentModel(n_particles, kappa).do_nothing_fidelity();
}

}  // namespace vmfbench
