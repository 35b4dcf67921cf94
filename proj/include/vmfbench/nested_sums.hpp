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

// Closed-form expansion of the N-qubit posterior overlap as nested binomial
// and factorial sums. Validation path only: the terms alternate in sign and
// grow like (2N)! / kappa^{2N+1} while the result is O(1), so the factorial
// tables and the integrals I_q = int_{-1}^{1} x^q e^{kappa x} dx are carried
// in 100-digit binary floating point; the outer sums are accumulated in
// double with Neumaier compensation.

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "vmfbench/errors.hpp"
#include "vmfbench/nqubit_povm.hpp"
#include "vmfbench/numerics.hpp"
#include "vmfbench/prior.hpp"

namespace vmfbench {

namespace detail {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace detail

class NestedSumEvaluator {
 public:
  using Wide = boost::multiprecision::cpp_bin_float_100;

  static constexpr int kMaxParticles = 12;
  static constexpr double kMinKappa = 1.0;

  NestedSumEvaluator(int n_particles, double kappa) : n_(n_particles), kappa_(kappa) {
    if (n_particles < 1) throw std::invalid_argument("NestedSumEvaluator: n_particles < 1");
    if (n_particles > kMaxParticles || !(kappa >= kMinKappa)) {
      throw StabilityError("nested sums refused for N = " + std::to_string(n_particles) +
                           ", kappa = " + std::to_string(kappa) +
                           ": requires N <= 12 and kappa >= 1");
    }
    build_tables();
  }

  int n_particles() const noexcept { return n_; }
  double kappa() const noexcept { return kappa_; }

  // The quadruple sum over (s, r, l, l') with the j and p sums folded into
  // the precomputed inner integrals. Equals
  //   int dOmega [1 + cos alpha_M]^N [1 + cos alpha~]^N e^{kappa cos theta}
  // times 2^{2N} / (2 pi).
  double nested_sum(double theta_m, double theta_tilde) const {
    const int n = n_;
    const double cg = std::cos(theta_tilde), sg = std::sin(theta_tilde);
    const double cm = std::cos(theta_m), sm = std::sin(theta_m);
    detail::CompensatedSum total;
    for (int s = 0; s <= n; ++s) {
      const double outer = std::ldexp(binom(2 * n - 2 * s, n - s), 2 * s);
      const int r_max = std::min(s, n - s);
      for (int r = -r_max; r <= r_max; ++r) {
        const double pair = binom(n, s + r) * binom(n, s - r) * ipow(sg, n - s - r) *
                            ipow(sm, n - s + r);
        if (pair == 0.0) continue;
        for (int l = 0; l <= s + r; ++l) {
          const double guess_term = binom(s + r, l) * ipow(cg, l);
          for (int lp = 0; lp <= s - r; ++lp) {
            const double meas_term = binom(s - r, lp) * ipow(cm, lp);
            total.add(outer * pair * guess_term * meas_term * inner(s, l + lp));
          }
        }
      }
    }
    return total.value();
  }

  // Posterior-averaged overlap: the nested sum scaled by
  // (N+1) xi / (2^{2N+2} pi) * 2 pi / 2^{2N} and divided by the evidence.
  double conditional_fidelity(double theta_m, double theta_tilde) const {
    const double evidence = evidence_nq(n_, kappa_, theta_m);
    return normalization() * nested_sum(theta_m, theta_tilde) / evidence;
  }

  // Mean fidelity for a given estimator theta~(theta_M): the residual
  // integral over theta_M of the nested sum, prefactor
  // (N+1) kappa / (2^{4N+2} sinh kappa).
  double mean_fidelity(const std::function<double(double)>& estimator,
                       double tolerance = 1e-9) const {
    auto integrand = [&](double theta_m) {
      return nested_sum(theta_m, estimator(theta_m)) * std::sin(theta_m);
    };
    const double integral = numerics::integrate_adaptive(integrand, 0.0, kPi, tolerance).value;
    const double prefactor =
        (n_ + 1) * kappa_ / std::sinh(kappa_) * std::ldexp(1.0, -(4 * n_ + 2));
    return prefactor * integral;
  }

 private:
  static double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
  }

  double binom(int n, int k) const { return binom_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)]; }

  double inner(int s, int q) const {
    return inner_[static_cast<std::size_t>(s) * stride_ + static_cast<std::size_t>(q)];
  }

  double normalization() const {
    const VmfPrior prior(kappa_);
    return (n_ + 1) * prior.xi() / (std::ldexp(1.0, 2 * n_ + 2) * kPi) * kTwoPi /
           std::ldexp(1.0, 2 * n_);
  }

  void build_tables() {
    const int n = n_;
    const int top = 4 * n + 2;
    std::vector<Wide> fact(static_cast<std::size_t>(top) + 1);
    fact[0] = 1;
    for (int i = 1; i <= top; ++i) fact[i] = fact[i - 1] * i;

    binom_.assign(static_cast<std::size_t>(top) + 1, std::vector<double>(static_cast<std::size_t>(top) + 1, 0.0));
    std::vector<std::vector<Wide>> binom_wide(binom_.size(), std::vector<Wide>(binom_.size(), Wide(0)));
    for (int a = 0; a <= top; ++a) {
      for (int b = 0; b <= a; ++b) {
        binom_wide[a][b] = fact[a] / (fact[b] * fact[a - b]);
        binom_[a][b] = static_cast<double>(binom_wide[a][b]);
      }
    }

    // I_q = q! sum_p (-1)^p / (kappa^{p+1} (q-p)!) [e^kappa - (-1)^{q-p} e^{-kappa}].
    const Wide k(kappa_);
    const Wide ek = exp(k);
    const Wide emk = exp(-k);
    const int q_max = 2 * n;
    std::vector<Wide> integral(static_cast<std::size_t>(q_max) + 1);
    for (int q = 0; q <= q_max; ++q) {
      Wide acc = 0;
      Wide kpow = k;  // kappa^{p+1}
      for (int p = 0; p <= q; ++p) {
        const Wide bracket = ((q - p) % 2 == 0) ? ek - emk : ek + emk;
        const Wide term = bracket / (kpow * fact[q - p]);
        acc += (p % 2 == 0) ? term : Wide(-term);
        kpow *= k;
      }
      integral[q] = fact[q] * acc;
    }

    // sum_j (-1)^j C(N-s, j) I_{L+2j} for every s and L = l + l' <= 2s.
    stride_ = static_cast<std::size_t>(q_max) + 1;
    inner_.assign((static_cast<std::size_t>(n) + 1) * stride_, 0.0);
    for (int s = 0; s <= n; ++s) {
      for (int big_l = 0; big_l <= 2 * s; ++big_l) {
        Wide acc = 0;
        for (int j = 0; j <= n - s; ++j) {
          const Wide term = binom_wide[n - s][j] * integral[big_l + 2 * j];
          acc += (j % 2 == 0) ? term : Wide(-term);
        }
        inner_[static_cast<std::size_t>(s) * stride_ + static_cast<std::size_t>(big_l)] =
            static_cast<double>(acc);
      }
    }
  }

  int n_;
  double kappa_;
  std::vector<std::vector<double>> binom_;
  std::vector<double> inner_;
  std::size_t stride_ = 0;
};

inline double conditional_fidelity_nq_nested(int n_particles, double kappa, double theta_m,
                                             double theta_tilde) {
  return NestedSumEvaluator(n_particles, kappa).conditional_fidelity(theta_m, theta_tilde);
}

}  // namespace vmfbench
