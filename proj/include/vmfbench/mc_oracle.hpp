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

// Monte Carlo replay of prepare -> measure -> guess -> score. Trials draw the
// true state from the prior, simulate the measurement outcome, apply the
// strategy's guess rule and score the spin-coherent overlap. It shares the
// estimators with the analytic modules but none of their averaging.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "vmfbench/bloch.hpp"
#include "vmfbench/nqubit_povm.hpp"
#include "vmfbench/prior.hpp"
#include "vmfbench/qubit_povm.hpp"
#include "vmfbench/qubit_projective.hpp"
#include "vmfbench/random.hpp"

namespace vmfbench {

enum class StrategyKind { DoNothing, ProjectiveAxis, CoherentPovm };

// Identity takes the measured direction itself as the guess.
enum class PovmEstimator { Optimal, Identity };

struct StrategySpec {
  StrategyKind kind = StrategyKind::DoNothing;
  double axis_theta0 = 0.5 * kPi;  // ProjectiveAxis only
  PovmEstimator estimator = PovmEstimator::Optimal;

  static StrategySpec do_nothing() { return {StrategyKind::DoNothing}; }
  static StrategySpec projective(double theta0) { return {StrategyKind::ProjectiveAxis, theta0}; }
  static StrategySpec povm(PovmEstimator e = PovmEstimator::Optimal) {
    return {StrategyKind::CoherentPovm, 0.5 * kPi, e};
  }
};

inline std::string to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::DoNothing:
      return "do-nothing";
    case StrategyKind::ProjectiveAxis:
      return "projective";
    case StrategyKind::CoherentPovm:
      return "povm";
  }
  return "unknown";
}

struct McEstimate {
  double mean_fidelity = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

// Draws a POVM outcome for the spin coherent state `truth`: the angle to the
// truth has density proportional to cos^{2N}(alpha/2) sin(alpha), sampled by
// alpha = 2 arccos(u^{1/(2N+2)}); the azimuth about the truth is uniform.
template <UniformSource R>
BlochDirection povm_sample(int n_particles, const BlochDirection& truth, R& rng) {
  if (n_particles < 1) throw std::invalid_argument("povm_sample: n_particles < 1");
  const double u = rng.uniform();
  const double beta = kTwoPi * rng.uniform();
  const double half = std::acos(std::pow(u, 1.0 / (2.0 * n_particles + 2.0)));
  const double alpha = 2.0 * half;

  const Vec3 t = truth.to_vector();
  // Any unit vector not parallel to t seeds the orthonormal frame.
  const Vec3 helper = std::abs(t[2]) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
  Vec3 e1{helper[1] * t[2] - helper[2] * t[1], helper[2] * t[0] - helper[0] * t[2],
          helper[0] * t[1] - helper[1] * t[0]};
  const double norm = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
  for (double& x : e1) x /= norm;
  const Vec3 e2{t[1] * e1[2] - t[2] * e1[1], t[2] * e1[0] - t[0] * e1[2], t[0] * e1[1] - t[1] * e1[0]};

  const double ca = std::cos(alpha), sa = std::sin(alpha);
  const double cb = std::cos(beta), sb = std::sin(beta);
  Vec3 m;
  for (int i = 0; i < 3; ++i) m[i] = ca * t[i] + sa * (cb * e1[i] + sb * e2[i]);
  return BlochDirection::from_vector(m);
}

// theta~(theta_M) tabulated on a uniform grid. Between nodes the estimate is
// interpolated linearly unless the neighbours straddle a jump between
// maxima of the posterior overlap, where the nearer node is used instead.
class EstimatorTable {
 public:
  explicit EstimatorTable(const SpinCoherentModel& model, std::size_t grid_points = 2049)
      : step_(kPi / static_cast<double>(grid_points - 1)) {
    values_.reserve(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) {
      const double theta_m = i + 1 == grid_points ? kPi : step_ * static_cast<double>(i);
      values_.push_back(model.optimize_estimator(theta_m));
    }
  }

  double operator()(double theta_m) const {
    const double x = std::clamp(theta_m, 0.0, kPi) / step_;
    const std::size_t i = std::min(static_cast<std::size_t>(x), values_.size() - 2);
    const double frac = x - static_cast<double>(i);
    const double lo = values_[i], hi = values_[i + 1];
    if (std::abs(hi - lo) > kJump) return frac < 0.5 ? lo : hi;
    return lo + frac * (hi - lo);
  }

 private:
  static constexpr double kJump = 0.05;
  double step_;
  std::vector<double> values_;
};

struct SimulateOptions {
  unsigned workers = 0;  // 0: hardware concurrency
  std::size_t estimator_grid = 2049;
  std::uint64_t block_size = 1 << 16;
};

namespace detail {

struct BlockSums {
  double sum = 0.0;
  double sum_sq = 0.0;
};

}  // namespace detail

inline McEstimate simulate(int n_particles, double kappa, const StrategySpec& strategy,
                           std::uint64_t n_samples, std::uint64_t seed,
                           const SimulateOptions& options = {}) {
  if (n_particles < 1) throw std::invalid_argument("simulate: n_particles < 1");
  detail::require_positive_kappa(kappa, "simulate");
  if (n_samples < 1000) throw std::invalid_argument("simulate: n_samples must be >= 1000");
  if (strategy.kind == StrategyKind::ProjectiveAxis) {
    if (n_particles != 1) {
      throw std::invalid_argument("simulate: projective strategy is defined for N = 1 only");
    }
    if (!(strategy.axis_theta0 >= 0.0 && strategy.axis_theta0 <= 0.5 * kPi)) {
      throw std::invalid_argument("simulate: axis_theta0 must lie in [0, pi/2]");
    }
  }

  const VmfPrior prior(kappa);
  AxisBenchmark axis;
  if (strategy.kind == StrategyKind::ProjectiveAxis) axis = fidelity_axis(kappa, strategy.axis_theta0);
  const bool tabulated = strategy.kind == StrategyKind::CoherentPovm &&
                         strategy.estimator == PovmEstimator::Optimal && n_particles > 1;
  std::vector<EstimatorTable> table;
  if (tabulated) table.emplace_back(SpinCoherentModel(n_particles, kappa), options.estimator_grid);

  auto trial = [&](std::uint64_t index) {
    CounterStream rng(seed, index);
    const BlochDirection truth = prior.sample(rng);
    BlochDirection guess;
    switch (strategy.kind) {
      case StrategyKind::DoNothing:
        guess = BlochDirection::north();
        break;
      case StrategyKind::ProjectiveAxis: {
        const bool plus = rng.uniform() < axis_plus_probability(strategy.axis_theta0, truth);
        guess = axis.guess(plus);
        break;
      }
      case StrategyKind::CoherentPovm: {
        const BlochDirection measured = povm_sample(n_particles, truth, rng);
        double theta = measured.theta();
        if (strategy.estimator == PovmEstimator::Optimal) {
          theta = tabulated ? table.front()(measured.theta())
                            : optimal_estimator_1q(kappa, measured.theta());
        }
        guess = BlochDirection(theta, measured.phi());
        break;
      }
    }
    return spin_overlap_sq(guess, truth, n_particles);
  };

  const std::uint64_t block = std::max<std::uint64_t>(options.block_size, 1);
  const std::uint64_t n_blocks = (n_samples + block - 1) / block;
  std::vector<detail::BlockSums> sums(n_blocks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t b = next++; b < n_blocks; b = next++) {
      detail::BlockSums s;
      const std::uint64_t end = std::min(n_samples, (b + 1) * block);
      for (std::uint64_t i = b * block; i < end; ++i) {
        const double f = trial(i);
        s.sum += f;
        s.sum_sq += f * f;
      }
      sums[b] = s;
    }
  };
  unsigned workers = options.workers ? options.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, n_blocks));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  double sum = 0.0, sum_sq = 0.0;
  for (const auto& s : sums) {
    sum += s.sum;
    sum_sq += s.sum_sq;
  }
  const double n = static_cast<double>(n_samples);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
  return {mean, std::sqrt(var / n), n_samples, seed};
}

}  // namespace vmfbench
