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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "vmfbench/cli.hpp"
#include "vmfbench/nqubit_povm.hpp"
#include "vmfbench/qubit_povm.hpp"
#include "vmfbench/qubit_projective.hpp"

namespace vmfbench::cli {
namespace {

TEST(ParseScalar, NumbersAndPiExpressions) {
  EXPECT_EQ(parse_scalar("1.5"), 1.5);
  EXPECT_EQ(parse_scalar("pi"), kPi);
  EXPECT_EQ(parse_scalar("-pi"), -kPi);
  EXPECT_EQ(parse_scalar("pi/2"), 0.5 * kPi);
  EXPECT_EQ(parse_scalar("3pi/4"), 3.0 * kPi / 4.0);
  EXPECT_EQ(parse_scalar("3*pi/4"), 3.0 * kPi / 4.0);
  EXPECT_THROW(parse_scalar("abc"), UsageError);
  EXPECT_THROW(parse_scalar("1.5x"), UsageError);
  EXPECT_THROW(parse_scalar("pi2"), UsageError);
}

TEST(ParseGrid, InclusiveEndpoints) {
  const auto g = parse_grid("0.01:0.49:49");
  ASSERT_EQ(g.size(), 49u);
  EXPECT_EQ(g.front(), 0.01);
  EXPECT_EQ(g.back(), 0.49);
  EXPECT_NEAR(g[1] - g[0], 0.01, 1e-15);
  const auto angles = parse_grid("0:pi/2:9");
  ASSERT_EQ(angles.size(), 9u);
  EXPECT_EQ(angles.back(), 0.5 * kPi);
  EXPECT_EQ(parse_grid("2.5"), std::vector<double>{2.5});
  EXPECT_EQ(parse_grid("1,2,4"), (std::vector<double>{1.0, 2.0, 4.0}));
  EXPECT_EQ(parse_grid("3:3:1"), std::vector<double>{3.0});
}

TEST(ParseGrid, Malformed) {
  EXPECT_THROW(parse_grid("0:1"), UsageError);
  EXPECT_THROW(parse_grid("0:1:0"), UsageError);
  EXPECT_THROW(parse_grid("0:1:2.5"), UsageError);
  EXPECT_THROW(parse_grid("0:1:3:4"), UsageError);
  EXPECT_THROW(parse_grid("0:1:1"), UsageError);
}

TEST(ParseParticles, IntegerOrInfinity) {
  EXPECT_EQ(parse_particles("3"), 3);
  EXPECT_FALSE(parse_particles("inf").has_value());
  EXPECT_THROW(parse_particles("0"), UsageError);
  EXPECT_THROW(parse_particles("2.5"), UsageError);
}

RunConfig config(const std::string& command) {
  RunConfig cfg;
  cfg.command = command;
  return cfg;
}

TEST(Bench, ProjectiveFamilies) {
  RunConfig cfg = config("bench");
  cfg.strategy = Strategy::Projective;
  cfg.theta0 = parse_grid("0:pi/2:9");
  cfg.axis = Axis::MeanN;
  cfg.axis_values = parse_grid("0.01:0.49:49");
  const Table t = run_bench(cfg);
  ASSERT_EQ(t.rows.size(), 441u);
  // Equatorial family is last; it dominates every other family at fixed <n>.
  for (std::size_t j = 0; j < 49; ++j) {
    const double best = t.number(8 * 49 + j, "fidelity");
    EXPECT_EQ(t.number(8 * 49 + j, "theta0"), 0.5 * kPi);
    for (std::size_t k = 0; k < 8; ++k) {
      EXPECT_EQ(t.number(k * 49 + j, "mean_n"), t.number(8 * 49 + j, "mean_n"));
      EXPECT_LE(t.number(k * 49 + j, "fidelity"), best);
    }
  }
}

TEST(Bench, AsymptoticRows) {
  RunConfig cfg = config("bench");
  cfg.n_particles = std::nullopt;
  cfg.axis = Axis::MeanN;
  cfg.axis_values = parse_grid("0.1:5:50");
  const Table t = run_bench(cfg);
  ASSERT_EQ(t.rows.size(), 50u);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const double n = t.number(i, "mean_n");
    EXPECT_EQ(t.number(i, "fidelity"), (n + 1.0) / (2.0 * n + 1.0));
    EXPECT_EQ(std::get<std::string>(t.rows[i][0]), "inf");
  }
  cfg.axis = Axis::Kappa;
  EXPECT_THROW(run_bench(cfg), UsageError);
}

TEST(Bench, DoNothingIsOneMinusExcitation) {
  RunConfig cfg = config("bench");
  cfg.strategy = Strategy::DoNothing;
  cfg.axis = Axis::MeanN;
  cfg.axis_values = parse_grid("0.1:0.49:5");
  const Table t = run_bench(cfg);
  ASSERT_EQ(t.rows.size(), 5u);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_NEAR(t.number(i, "fidelity"), 1.0 - t.number(i, "mean_n"), 1e-12);
    EXPECT_TRUE(std::holds_alternative<std::monostate>(t.rows[i][4]));
  }
}

TEST(Bench, ParameterErrors) {
  RunConfig cfg = config("bench");
  EXPECT_THROW(run_bench(cfg), UsageError);  // no axis
  cfg.axis = Axis::MeanN;
  cfg.axis_values = {0.6};
  EXPECT_THROW(run_bench(cfg), UsageError);  // outside (0, N/2)
  cfg.axis = Axis::Kappa;
  cfg.axis_values = {-1.0};
  EXPECT_THROW(run_bench(cfg), UsageError);
  cfg.axis_values = {1.0};
  cfg.n_particles = 2;
  cfg.strategy = Strategy::Projective;
  EXPECT_THROW(run_bench(cfg), UsageError);
}

TEST(Estimator, SingleQubitEquatorialRow) {
  RunConfig cfg = config("estimator");
  cfg.axis = Axis::Kappa;
  cfg.axis_values = {1.0};
  cfg.grid_size = 9;
  const Table t = run_estimator(cfg);
  ASSERT_EQ(t.rows.size(), 9u);
  EXPECT_EQ(t.number(4, "theta_m"), 0.5 * kPi);
  EXPECT_NEAR(t.number(4, "theta_tilde"), 0.25 * kPi, 1e-12);
  // The gain column matches the slope of theta~ at the pole.
  EXPECT_NEAR(t.number(0, "small_angle_gain"), optimal_estimator_1q(1.0, 1e-7) / 1e-7, 1e-9);
  EXPECT_NEAR(t.number(0, "small_angle_gain"), SpinCoherentModel(1, 1.0).small_angle_gain(), 1e-5);
}

TEST(Estimator, UniformPriorIsIdentity) {
  for (int n : {1, 4}) {
    RunConfig cfg = config("estimator");
    cfg.n_particles = n;
    cfg.axis = Axis::Kappa;
    cfg.axis_values = {1e-6};
    cfg.grid_size = 17;
    const Table t = run_estimator(cfg);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      EXPECT_NEAR(t.number(i, "theta_tilde"), t.number(i, "theta_m"), 1e-5);
    }
  }
}

RunConfig small_validation() {
  RunConfig cfg = config("validate");
  cfg.validate_n = {1, 3};
  cfg.axis = Axis::Kappa;
  cfg.axis_values = {0.5, 2.0};
  cfg.samples = 20000;
  return cfg;
}

TEST(Validate, SmallGridPasses) {
  const ValidationReport r = run_validate(small_validation());
  EXPECT_EQ(r.failures, 0u);
  // N = 1: do-nothing, three axes, POVM; N = 3: do-nothing, POVM.
  EXPECT_EQ(r.table.rows.size(), 2u * (5u + 2u));
}

TEST(Validate, CorruptedAnalyticValueFails) {
  RunConfig cfg = small_validation();
  cfg.corrupt_analytic = 0.05;
  const ValidationReport r = run_validate(cfg);
  EXPECT_EQ(r.failures, r.table.rows.size());
  for (std::size_t i = 0; i < r.table.rows.size(); ++i) {
    EXPECT_GT(std::abs(r.table.number(i, "z_score")), 3.0);
    EXPECT_EQ(std::get<std::string>(r.table.rows[i].back()), "FAIL");
  }
}

TEST(Validate, RepeatedRunIsByteIdentical) {
  EXPECT_EQ(to_csv(run_validate(small_validation()).table), to_csv(run_validate(small_validation()).table));
}

Table figure(const std::string& id) {
  RunConfig cfg = config("figure");
  cfg.figure = id;
  return run_figure(cfg);
}

TEST(Figure, AxisBottomCurveFollowsTheCusp) {
  const Table t = figure("fig1");
  std::size_t checked = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (std::get<std::string>(t.rows[i][0]) != "axis" || t.number(i, "theta0") != 0.0) continue;
    const double kappa = t.number(i, "kappa");
    EXPECT_NEAR(t.number(i, "fidelity"), std::max(fidelity_do_nothing(kappa), fidelity_no_prior(kappa)), 1e-10);
    ++checked;
  }
  EXPECT_EQ(checked, 49u);
}

TEST(Figure, PovmGapIsNonNegativeAndVanishesAtEnds) {
  const Table t = figure("fig3");
  const std::size_t last = t.rows.size() - 1;
  double largest = 0.0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_GE(t.number(i, "difference"), -1e-9);
    largest = std::max(largest, t.number(i, "difference"));
    EXPECT_EQ(t.number(i, "uniform_limit"), 2.0 / 3.0);
  }
  EXPECT_LT(t.number(0, "difference"), 1e-2 * largest);
  EXPECT_LT(t.number(last, "difference"), 1e-2 * largest);
}

TEST(Figure, AsymptoticCurve) {
  const Table t = figure("fig4");
  std::size_t rows = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (std::get<std::string>(t.rows[i][0]) != "asymptotic") continue;
    EXPECT_EQ(t.number(i, "fidelity"), asymptotic_fidelity(t.number(i, "mean_n")));
    ++rows;
  }
  EXPECT_GT(rows, 0u);
}

TEST(Figure, EveryFigureRoundTrips) {
  for (const auto& id : figure_ids()) {
    if (id == "fig4") continue;  // covered above; slow
    const std::string csv = to_csv(figure(id));
    std::istringstream in(csv);
    EXPECT_EQ(to_csv(read_csv(in)), csv) << id;
  }
}

TEST(Figure, UnknownId) { EXPECT_THROW(figure("fig7"), UsageError); }

}  // namespace
}  // namespace vmfbench::cli
