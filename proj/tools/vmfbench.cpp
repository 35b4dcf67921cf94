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

// vmfbench: benchmark curves, estimator curves, Monte Carlo validation and
// figure tables for teleportation without entanglement under a
// von Mises-Fisher prior.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vmfbench/cli.hpp"
#include "vmfbench/errors.hpp"
#include "vmfbench/table_io.hpp"

namespace {

using vmfbench::cli::UsageError;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

const char* const kKeys[] = {"n",           "strategy", "theta0", "theta0-grid", "kappa-grid",
                             "mean-n-grid", "grid-size", "samples", "seed",       "figure",
                             "out",         "format",   "workers", "corrupt-analytic"};

// Raw option text; the config file fills what the command line leaves unset.
using RawOptions = std::map<std::string, std::string>;

void add_options(CLI::App& cmd, RawOptions& raw) {
  for (const char* key : kKeys) {
    auto* opt = cmd.add_option_function<std::string>(
        std::string("--") + key, [&raw, key](const std::string& v) { raw[key] = v; });
    if (std::string(key) == "corrupt-analytic" || std::string(key) == "workers") opt->group("");
  }
}

void merge_config(const std::string& path, RawOptions& raw) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("config file '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw UsageError("config file must hold a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(kKeys), std::end(kKeys), key) == std::end(kKeys)) {
      throw UsageError("config file: unknown key '" + key + "'");
    }
    if (raw.count(key)) continue;
    raw[key] = value.is_string() ? value.get<std::string>() : value.dump();
  }
}

std::uint64_t parse_count(const std::string& key, const std::string& text) {
  const double v = vmfbench::cli::parse_scalar(text);
  if (!(v >= 0.0) || v != std::floor(v) || v > 1.8e19) {
    throw UsageError("--" + key + " must be a non-negative integer");
  }
  return static_cast<std::uint64_t>(v);
}

vmfbench::cli::RunConfig build_config(const std::string& command, const RawOptions& raw) {
  using namespace vmfbench::cli;
  RunConfig cfg;
  cfg.command = command;
  auto get = [&](const char* key) -> std::optional<std::string> {
    auto it = raw.find(key);
    if (it == raw.end()) return std::nullopt;
    return it->second;
  };
  if (auto v = get("n")) {
    cfg.n_particles = parse_particles(*v);
    if (cfg.n_particles) cfg.validate_n = {*cfg.n_particles};
  }
  if (auto v = get("strategy")) cfg.strategy = parse_strategy(*v);
  if (get("theta0") && get("theta0-grid")) throw UsageError("--theta0 and --theta0-grid are exclusive");
  if (auto v = get("theta0")) cfg.theta0 = {parse_scalar(*v)};
  if (auto v = get("theta0-grid")) cfg.theta0 = parse_grid(*v);
  const auto kappa = get("kappa-grid");
  const auto mean_n = get("mean-n-grid");
  if (kappa && mean_n) throw UsageError("--kappa-grid and --mean-n-grid are exclusive");
  if (kappa) {
    cfg.axis = Axis::Kappa;
    cfg.axis_values = parse_grid(*kappa);
  }
  if (mean_n) {
    cfg.axis = Axis::MeanN;
    cfg.axis_values = parse_grid(*mean_n);
    if (command == "validate" && !get("n")) throw UsageError("validate with --mean-n-grid needs --n");
  }
  if (auto v = get("grid-size")) cfg.grid_size = parse_count("grid-size", *v);
  if (auto v = get("samples")) cfg.samples = parse_count("samples", *v);
  if (auto v = get("seed")) cfg.seed = parse_count("seed", *v);
  if (auto v = get("workers")) cfg.workers = static_cast<unsigned>(parse_count("workers", *v));
  if (auto v = get("corrupt-analytic")) cfg.corrupt_analytic = parse_scalar(*v);
  if (auto v = get("figure")) cfg.figure = *v;
  if (command == "figure" && cfg.figure.empty()) throw UsageError("figure needs --figure");
  if (command == "validate" && cfg.samples < 1000) throw UsageError("--samples must be at least 1000");
  return cfg;
}

void emit(const vmfbench::Table& table, const RawOptions& raw) {
  const auto fmt_it = raw.find("format");
  const std::string format = fmt_it == raw.end() ? "csv" : fmt_it->second;
  if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
  auto write = [&](std::ostream& os) {
    if (format == "csv") {
      vmfbench::write_csv(os, table);
    } else {
      vmfbench::write_json(os, table);
    }
  };
  const auto out_it = raw.find("out");
  if (out_it == raw.end() || out_it->second == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(out_it->second, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + out_it->second + "' for writing");
  write(out);
  if (!out) throw std::runtime_error("write to '" + out_it->second + "' failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Teleportation benchmarks without entanglement for von Mises-Fisher priors"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON file with option defaults (flags override it)");

  RawOptions raw;
  const std::map<std::string, std::string> commands = {
      {"bench", "Mean fidelity of a strategy over a kappa or <n> grid"},
      {"estimator", "Optimal estimator theta~(theta_M) curves"},
      {"validate", "Compare analytic benchmarks with Monte Carlo replay"},
      {"figure", "Curve families of a named figure"}};
  for (const auto& [name, help] : commands) add_options(*app.add_subcommand(name, help), raw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (!config_path.empty()) merge_config(config_path, raw);
    const auto cfg = build_config(command, raw);
    if (command == "bench") {
      emit(vmfbench::cli::run_bench(cfg), raw);
    } else if (command == "estimator") {
      emit(vmfbench::cli::run_estimator(cfg), raw);
    } else if (command == "figure") {
      emit(vmfbench::cli::run_figure(cfg), raw);
    } else {
      const auto report = vmfbench::cli::run_validate(cfg);
      emit(report.table, raw);
      if (report.failures > 0) {
        std::cerr << "validate: " << report.failures << " cell(s) failed\n";
        return kExitValidation;
      }
    }
  } catch (const vmfbench::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
