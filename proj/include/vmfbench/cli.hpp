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

// Command layer behind the vmfbench executable: configuration, grid parsing
// and the four subcommands, each producing a long-format Table.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vmfbench/bloch.hpp"
#include "vmfbench/errors.hpp"
#include "vmfbench/mc_oracle.hpp"
#include "vmfbench/nqubit_povm.hpp"
#include "vmfbench/prior.hpp"
#include "vmfbench/qubit_povm.hpp"
#include "vmfbench/qubit_projective.hpp"
#include "vmfbench/table_io.hpp"

namespace vmfbench::cli {

// Bad flags, malformed grids and out-of-range parameters.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Strategy { DoNothing, Projective, Povm };

inline Strategy parse_strategy(std::string_view s) {
  if (s == "do-nothing") return Strategy::DoNothing;
  if (s == "projective") return Strategy::Projective;
  if (s == "povm") return Strategy::Povm;
  throw UsageError("unknown strategy '" + std::string(s) + "'");
}

inline std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::DoNothing:
      return "do-nothing";
    case Strategy::Projective:
      return "projective";
    case Strategy::Povm:
      return "povm";
  }
  return "unknown";
}

enum class Axis { Kappa, MeanN };

struct RunConfig {
  std::string command;
  std::optional<int> n_particles = 1;  // nullopt: N -> infinity
  std::optional<Axis> axis;
  std::vector<double> axis_values;
  Strategy strategy = Strategy::Povm;
  std::vector<double> theta0 = {0.5 * kPi};
  std::size_t grid_size = 65;
  std::uint64_t samples = 1000000;
  std::uint64_t seed = 20240917;
  std::string figure;
  double corrupt_analytic = 0.0;  // validate self-test: added to every analytic value
  std::vector<int> validate_n = {1, 2, 3, 5, 10};
  unsigned workers = 0;
};

// Number or pi expression: "1.5", "pi", "-pi", "pi/2", "3pi/4", "3*pi/4", "0.5*pi".
inline double parse_scalar(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ') s += c;
  }
  if (s.empty()) throw UsageError("empty number");
  const auto pi_at = s.find("pi");
  auto number = [&](const std::string& part) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw UsageError("malformed number '" + std::string(text) + "'");
    }
    if (used != part.size()) throw UsageError("malformed number '" + std::string(text) + "'");
    return v;
  };
  if (pi_at == std::string::npos) return number(s);

  std::string head = s.substr(0, pi_at);
  std::string tail = s.substr(pi_at + 2);
  if (!head.empty() && head.back() == '*') head.pop_back();
  double factor = 1.0;
  if (head == "-") {
    factor = -1.0;
  } else if (!head.empty() && head != "+") {
    factor = number(head);
  }
  double divisor = 1.0;
  if (!tail.empty()) {
    if (tail.front() != '/') throw UsageError("malformed number '" + std::string(text) + "'");
    divisor = number(tail.substr(1));
  }
  return factor * kPi / divisor;
}

// "start:stop:count" (inclusive at both ends), a comma list, or one value.
inline std::vector<double> parse_grid(std::string_view text) {
  const std::string s(text);
  if (s.find(':') != std::string::npos) {
    const auto a = s.find(':');
    const auto b = s.find(':', a + 1);
    if (b == std::string::npos || s.find(':', b + 1) != std::string::npos) {
      throw UsageError("grid must be start:stop:count, got '" + s + "'");
    }
    const double start = parse_scalar(s.substr(0, a));
    const double stop = parse_scalar(s.substr(a + 1, b - a - 1));
    const double count_d = parse_scalar(s.substr(b + 1));
    if (!(count_d >= 1.0) || count_d != std::floor(count_d)) {
      throw UsageError("grid count must be a positive integer, got '" + s + "'");
    }
    const auto count = static_cast<std::size_t>(count_d);
    if (count == 1) {
      if (start != stop) throw UsageError("grid of one point needs start == stop");
      return {start};
    }
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    out.back() = stop;
    return out;
  }
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto comma = s.find(',', pos);
    const auto end = comma == std::string::npos ? s.size() : comma;
    out.push_back(parse_scalar(s.substr(pos, end - pos)));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

inline std::optional<int> parse_particles(std::string_view text) {
  if (text == "inf") return std::nullopt;
  const double v = parse_scalar(text);
  if (v < 1.0 || v != std::floor(v) || v > 1e6) {
    throw UsageError("--n must be a positive integer or 'inf'");
  }
  return static_cast<int>(v);
}

struct GridPoint {
  double kappa;  // NaN when N is infinite
  double mean_n;
};

inline std::vector<GridPoint> resolve_axis(const RunConfig& cfg) {
  if (!cfg.axis || cfg.axis_values.empty()) {
    throw UsageError("exactly one of --kappa-grid / --mean-n-grid is required");
  }
  std::vector<GridPoint> points;
  for (double v : cfg.axis_values) {
    if (!cfg.n_particles) {
      if (*cfg.axis != Axis::MeanN) throw UsageError("--n inf takes --mean-n-grid only");
      if (!(v >= 0.0)) throw UsageError("mean excitation must be non-negative");
      points.push_back({std::nan(""), v});
      continue;
    }
    const int n = *cfg.n_particles;
    if (*cfg.axis == Axis::Kappa) {
      if (!(v > 0.0) || !std::isfinite(v)) throw UsageError("kappa values must be positive");
      points.push_back({v, n * mean_excitation_per_qubit(v)});
    } else {
      if (!(v > 0.0 && v < 0.5 * n)) {
        throw UsageError("mean excitation must lie in (0, N/2) for N = " + std::to_string(n));
      }
      points.push_back({kappa_from_mean_n(v, n), v});
    }
  }
  return points;
}

inline Cell particles_cell(const std::optional<int>& n) {
  if (!n) return std::string("inf");
  return static_cast<std::int64_t>(*n);
}

inline Cell optional_number(double x) {
  if (std::isnan(x)) return std::monostate{};
  return x;
}

// Analytic mean fidelity of a strategy at finite N.
inline double benchmark(int n, double kappa, Strategy strategy, double theta0) {
  switch (strategy) {
    case Strategy::DoNothing:
      return n == 1 ? fidelity_do_nothing(kappa) : do_nothing_fidelity_nq(n, kappa);
    case Strategy::Projective:
      if (n != 1) throw UsageError("projective strategy is defined for --n 1 only");
      return fidelity_axis(kappa, theta0).fidelity;
    case Strategy::Povm:
      if (n == 1 && kappa >= kClosedFormMinKappa) return mean_fidelity_1q_closed(kappa).fidelity;
      return mean_fidelity_nq(n, kappa);
  }
  return std::nan("");
}

inline Table run_bench(const RunConfig& cfg) {
  Table t{{"n_particles", "kappa", "mean_n", "strategy", "theta0", "fidelity"}, {}};
  const auto points = resolve_axis(cfg);
  if (!cfg.n_particles) {
    for (const auto& p : points) {
      t.add_row({particles_cell(cfg.n_particles), std::monostate{}, p.mean_n, std::string("asymptotic"),
                 std::monostate{}, asymptotic_fidelity(p.mean_n)});
    }
    return t;
  }
  const int n = *cfg.n_particles;
  if (cfg.strategy == Strategy::Projective) {
    if (n != 1) throw UsageError("projective strategy is defined for --n 1 only");
    for (double theta0 : cfg.theta0) {
      if (!(theta0 >= 0.0 && theta0 <= 0.5 * kPi + 1e-12)) {
        throw UsageError("theta0 must lie in [0, pi/2]");
      }
    }
    for (double theta0 : cfg.theta0) {
      const double th = std::min(theta0, 0.5 * kPi);
      for (const auto& p : points) {
        t.add_row({particles_cell(cfg.n_particles), p.kappa, p.mean_n, to_string(cfg.strategy), th,
                   fidelity_axis(p.kappa, th).fidelity});
      }
    }
    return t;
  }
  for (const auto& p : points) {
    t.add_row({particles_cell(cfg.n_particles), p.kappa, p.mean_n, to_string(cfg.strategy), std::monostate{},
               benchmark(n, p.kappa, cfg.strategy, 0.0)});
  }
  return t;
}

// theta~ on a uniform theta_M grid. N = 1 uses the closed form.
inline EstimatorCurve estimator_curve_for(int n, double kappa, std::size_t grid_size) {
  if (n > 1) return estimator_curve(n, kappa, grid_size);
  if (grid_size < 9) throw UsageError("--grid-size must be at least 9");
  EstimatorCurve curve;
  curve.n_particles = 1;
  curve.kappa = kappa;
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double tm = i + 1 == grid_size ? kPi : kPi * static_cast<double>(i) / static_cast<double>(grid_size - 1);
    curve.samples.emplace_back(tm, optimal_estimator_1q(kappa, tm));
  }
  // Slope of theta~ at the pole: sin/(kappa + (kappa/m - 2) cos) -> 1/(kappa/m - 2 + kappa).
  curve.small_angle_gain = 1.0 / (detail::kappa_over_langevin(kappa) - 2.0 + kappa);
  return curve;
}

inline Table run_estimator(const RunConfig& cfg) {
  if (!cfg.n_particles) throw UsageError("estimator needs a finite --n");
  Table t{{"n_particles", "kappa", "mean_n", "theta_m", "theta_tilde", "small_angle_gain"}, {}};
  const int n = *cfg.n_particles;
  for (const auto& p : resolve_axis(cfg)) {
    const EstimatorCurve c = estimator_curve_for(n, p.kappa, cfg.grid_size);
    for (const auto& [tm, tt] : c.samples) {
      t.add_row({static_cast<std::int64_t>(n), p.kappa, p.mean_n, tm, tt, c.small_angle_gain});
    }
  }
  return t;
}

struct ValidationReport {
  Table table;
  std::size_t failures = 0;
};

inline ValidationReport run_validate(const RunConfig& cfg) {
  std::vector<double> kappas = {0.1, 0.5, 1.0, 2.0, 5.0};
  if (cfg.axis) {
    kappas.clear();
    for (const auto& p : resolve_axis(cfg)) kappas.push_back(p.kappa);
  }
  const std::vector<int>& ns = cfg.validate_n;

  ValidationReport report;
  report.table.columns = {"n_particles", "kappa",        "strategy", "theta0", "seed",
                          "analytic",    "mc_mean",      "mc_std_error", "z_score", "verdict"};
  std::uint64_t cell_index = 0;
  SimulateOptions options;
  options.workers = cfg.workers;
  for (int n : ns) {
    for (double kappa : kappas) {
      struct CellSpec {
        Strategy strategy;
        double theta0;
      };
      std::vector<CellSpec> cells = {{Strategy::DoNothing, std::nan("")}};
      if (n == 1) {
        for (double th : {0.0, 0.25 * kPi, 0.5 * kPi}) cells.push_back({Strategy::Projective, th});
      }
      cells.push_back({Strategy::Povm, std::nan("")});
      for (const auto& cell : cells) {
        const double analytic =
            benchmark(n, kappa, cell.strategy, std::isnan(cell.theta0) ? 0.0 : cell.theta0) +
            cfg.corrupt_analytic;
        StrategySpec spec;
        switch (cell.strategy) {
          case Strategy::DoNothing:
            spec = StrategySpec::do_nothing();
            break;
          case Strategy::Projective:
            spec = StrategySpec::projective(cell.theta0);
            break;
          case Strategy::Povm:
            spec = StrategySpec::povm();
            break;
        }
        // Each cell draws from its own streams; 63 bits keep the seed column an integer.
        const std::uint64_t seed = (cfg.seed + 0x9E3779B97F4A7C15ULL * cell_index++) & 0x7FFFFFFFFFFFFFFFULL;
        const McEstimate mc = simulate(n, kappa, spec, cfg.samples, seed, options);
        const double z = (mc.mean_fidelity - analytic) / mc.std_error;
        const bool pass = std::abs(z) <= 3.0;
        if (!pass) ++report.failures;
        report.table.add_row({static_cast<std::int64_t>(n), kappa, to_string(cell.strategy),
                              optional_number(cell.theta0), static_cast<std::int64_t>(seed), analytic,
                              mc.mean_fidelity, mc.std_error, z,
                              std::string(pass ? "PASS" : "FAIL")});
      }
    }
  }
  return report;
}

// ---- figures ---------------------------------------------------------------

inline std::vector<double> linspace(double a, double b, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  out.back() = b;
  return out;
}

inline Table figure_axis_benchmarks() {
  Table t{{"curve", "theta0", "mean_n", "kappa", "fidelity"}, {}};
  const auto grid = linspace(0.01, 0.49, 49);
  for (int k = 8; k >= 0; --k) {
    const double theta0 = kPi * k / 16.0;
    for (double mn : grid) {
      const double kappa = kappa_from_mean_n(mn, 1);
      t.add_row({std::string("axis"), theta0, mn, kappa, fidelity_axis(kappa, theta0).fidelity});
    }
  }
  for (double mn : grid) {
    const double kappa = kappa_from_mean_n(mn, 1);
    t.add_row({std::string("do-nothing"), std::monostate{}, mn, kappa, fidelity_do_nothing(kappa)});
  }
  for (double mn : grid) {
    const double kappa = kappa_from_mean_n(mn, 1);
    t.add_row({std::string("no-prior"), std::monostate{}, mn, kappa, fidelity_no_prior(kappa)});
  }
  return t;
}

inline Table figure_qubit_estimator() {
  Table t{{"curve", "mean_n", "kappa", "theta_m", "theta_tilde"}, {}};
  const Crossover cross = crossover_excitation();
  const std::vector<std::pair<std::string, double>> curves = {
      {"estimator", 0.05}, {"estimator", 0.1},  {"estimator", 0.2},
      {"estimator", 0.25}, {"transition", cross.n_c}, {"estimator", 0.35},
      {"estimator", 0.4},  {"estimator", 0.45}, {"estimator", 0.49}};
  for (const auto& [label, mn] : curves) {
    const double kappa = kappa_from_mean_n(mn, 1);
    const EstimatorCurve c = estimator_curve_for(1, kappa, 65);
    for (const auto& [tm, tt] : c.samples) t.add_row({label, mn, kappa, tm, tt});
  }
  return t;
}

inline Table figure_povm_vs_axis() {
  Table t{{"mean_n", "kappa", "povm", "projective_equatorial", "difference", "do_nothing", "uniform_limit"}, {}};
  for (double mn : linspace(0.0025, 0.4975, 100)) {
    const double kappa = kappa_from_mean_n(mn, 1);
    const double povm = benchmark(1, kappa, Strategy::Povm, 0.0);
    const double eq = fidelity_equatorial(kappa);
    t.add_row({mn, kappa, povm, eq, eq - povm, fidelity_do_nothing(kappa), 2.0 / 3.0});
  }
  return t;
}

inline Table figure_particle_numbers() {
  Table t{{"curve", "n_particles", "mean_n", "kappa", "fidelity"}, {}};
  constexpr int kPoints = 24;
  for (int n : {1, 2, 3, 4, 5, 10}) {
    for (int i = 1; i <= kPoints; ++i) {
      const double mn = 0.5 * n * i / (kPoints + 1.0);
      const double kappa = kappa_from_mean_n(mn, n);
      t.add_row({std::string("povm"), static_cast<std::int64_t>(n), mn, kappa,
                 benchmark(n, kappa, Strategy::Povm, 0.0)});
    }
    t.add_row({std::string("uniform-minimum"), static_cast<std::int64_t>(n), 0.5 * n, std::monostate{},
               uniform_prior_benchmarks(n).full_state_recreation});
  }
  for (double mn : linspace(0.0, 5.0, 51)) {
    t.add_row({std::string("asymptotic"), std::string("inf"), mn, std::monostate{}, asymptotic_fidelity(mn)});
  }
  return t;
}

inline Table figure_spin_estimators() {
  Table t{{"n_particles", "mean_n", "kappa", "theta_m", "theta_tilde", "small_angle_gain"}, {}};
  for (int n : {2, 3, 5, 10}) {
    for (double frac : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double mn = 0.5 * n * frac;
      const double kappa = kappa_from_mean_n(mn, n);
      const EstimatorCurve c = estimator_curve(n, kappa, 33);
      for (const auto& [tm, tt] : c.samples) {
        t.add_row({static_cast<std::int64_t>(n), mn, kappa, tm, tt, c.small_angle_gain});
      }
    }
  }
  return t;
}

inline const std::vector<std::string>& figure_ids() {
  static const std::vector<std::string> ids = {"fig1", "fig2", "fig3", "fig4", "figB1"};
  return ids;
}

inline Table run_figure(const RunConfig& cfg) {
  if (cfg.figure == "fig1") return figure_axis_benchmarks();
  if (cfg.figure == "fig2") return figure_qubit_estimator();
  if (cfg.figure == "fig3") return figure_povm_vs_axis();
  if (cfg.figure == "fig4") return figure_particle_numbers();
  if (cfg.figure == "figB1") return figure_spin_estimators();
  throw UsageError("unknown figure id '" + cfg.figure + "' (expected fig1, fig2, fig3, fig4 or figB1)");
}

}  // namespace vmfbench::cli
