// Copyright 2026 The cauchyratio Authors
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

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cauchyratio/csv.hpp"
#include "cauchyratio/error.hpp"
#include "cauchyratio/harness.hpp"
#include "cauchyratio/simd/kernels.hpp"

namespace cr = cauchyratio;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::uint64_t default_seed() {
  const char* env = std::getenv("CAUCHYRATIO_SEED");
  if (env == nullptr || *env == '\0') return cr::kDefaultSeed;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(env, &used, 0);
    if (used != std::string(env).size()) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception&) {
    throw cr::Error(cr::ErrorCode::kConfigError,
                    std::string("CAUCHYRATIO_SEED is not an integer: ") + env);
  }
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cr::Error(cr::ErrorCode::kIoError, "cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw cr::Error(cr::ErrorCode::kConfigError, path + ": " + e.what());
  }
}

// Writes to the file or, for an empty path or "-", to stdout.
template <typename Fn>
void emit(const std::string& path, Fn&& write) {
  if (path.empty() || path == "-") {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw cr::Error(cr::ErrorCode::kIoError, "cannot write " + path);
  write(out);
  if (!out) throw cr::Error(cr::ErrorCode::kIoError, "write failed: " + path);
}

void print_summary(const cr::RunReport& r) {
  std::cerr << (r.overall_pass ? "PASS " : "FAIL ") << r.experiment << "  ("
            << r.wall_time_seconds << " s)\n";
  for (const auto& t : r.tests) {
    std::cerr << "    " << (t.passed ? "ok   " : "FAIL ") << t.test_name
              << "  p=" << t.p_value << "  n=" << t.sample_size << "\n";
  }
  for (const auto& c : r.checks) {
    std::cerr << "    " << (c.passed ? "ok   " : "FAIL ") << c.name
              << "  observed=" << c.observed << "  expected=" << c.expected
              << " +/- " << c.tolerance << "\n";
  }
}

int exit_code_for(cr::ErrorCode code) {
  switch (code) {
    case cr::ErrorCode::kUnknownExperiment:
    case cr::ErrorCode::kConfigError:
    case cr::ErrorCode::kIoError:
      return kExitUsage;
    default:
      return kExitFail;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo verification of Cauchy-distributed weighted ratios"};
  app.require_subcommand(1);

  std::string name;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> threshold;
  std::string out_path;
  std::string config_path;
  std::size_t jobs = 0;

  auto* verify = app.add_subcommand("verify", "Run one named experiment");
  verify->add_option("experiment", name, "Experiment name (see `list`)");
  verify->add_option("--samples", samples, "Sample count (>= 10000)");
  verify->add_option("--seed", seed, "64-bit seed");
  verify->add_option("--threshold", threshold, "p-value threshold");
  verify->add_option("--out", out_path, "Write the JSON report here");
  verify->add_option("--config", config_path, "Experiment config JSON")
      ->check(CLI::ExistingFile);

  auto* verify_all = app.add_subcommand("verify-all", "Run every experiment");
  verify_all->add_option("--seed", seed, "64-bit seed");
  verify_all->add_option("--threshold", threshold, "p-value threshold");
  verify_all->add_option("--out", out_path, "Write the JSON report here");
  verify_all->add_option("--jobs", jobs, "Worker threads (0 = all cores)");

  std::size_t draw_count = 10000;
  auto* sample = app.add_subcommand("sample", "Export draws from a model as CSV");
  sample->add_option("model", name, "Model name (see `list`)")->required();
  sample->add_option("--samples", draw_count, "Number of draws");
  sample->add_option("--seed", seed, "64-bit seed");
  sample->add_option("--config", config_path, "Model parameters JSON")
      ->check(CLI::ExistingFile);
  sample->add_option("--out", out_path, "CSV output path")->required();

  double rho = 0.0;
  std::string grid_text = "-3:3:61";
  auto* density = app.add_subcommand("density", "Tabulate a density on a grid");
  density->add_option("family", name, "Density family")
      ->required()
      ->check(CLI::IsMember({"copula"}));
  density->add_option("--rho", rho, "Correlation in (-1, 1)")->required();
  density->add_option("--grid", grid_text, "min:max:steps");
  density->add_option("--out", out_path, "CSV output path")->required();

  auto* list = app.add_subcommand("list", "List experiments and models");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*list) {
      std::cout << "experiments:\n";
      for (const auto& n : cr::experiment_names()) std::cout << "  " << n << "\n";
      std::cout << "models:\n";
      for (const auto& n : cr::model_names()) std::cout << "  " << n << "\n";
      std::cout << "kernels: " << cr::simd::backend_name(cr::simd::active_backend()) << "\n";
      return kExitPass;
    }

    if (*verify) {
      cr::ExperimentSpec spec;
      if (!config_path.empty()) {
        auto config = read_json(config_path);
        if (!name.empty() && !config.contains("experiment")) config["experiment"] = name;
        spec = cr::experiment_spec_from_json(config);
        if (!name.empty() && spec.name != name) {
          throw cr::Error(cr::ErrorCode::kConfigError,
                          "config names '" + spec.name + "' but '" + name + "' was requested");
        }
        if (!config.contains("seed")) spec.seed = default_seed();
      } else {
        if (name.empty()) {
          std::cerr << "verify: an experiment name or --config is required\n";
          return kExitUsage;
        }
        spec.name = name;
        spec.seed = default_seed();
      }
      if (samples) spec.sample_count = *samples;
      if (seed) spec.seed = *seed;
      if (threshold) spec.threshold = *threshold;
      const auto report = cr::run_experiment(spec);
      print_summary(report);
      emit(out_path, [&](std::ostream& o) { o << cr::to_json(report).dump(2) << "\n"; });
      return report.overall_pass ? kExitPass : kExitFail;
    }

    if (*verify_all) {
      const double p = threshold.value_or(cr::kDefaultThreshold);
      if (!(p > 0.0 && p <= 1.0)) {
        throw cr::Error(cr::ErrorCode::kConfigError, "threshold must lie in (0, 1]");
      }
      const auto start = std::chrono::steady_clock::now();
      const auto reports = cr::run_all(p, seed.value_or(default_seed()), jobs);
      const double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      bool ok = true;
      for (const auto& r : reports) {
        print_summary(r);
        ok = ok && r.overall_pass;
      }
      std::cerr << (ok ? "ALL PASS" : "FAILURES") << "  total " << elapsed << " s\n";
      emit(out_path, [&](std::ostream& o) { o << cr::to_json(reports).dump(2) << "\n"; });
      return ok ? kExitPass : kExitFail;
    }

    if (*sample) {
      const nlohmann::json params =
          config_path.empty() ? nlohmann::json::object() : read_json(config_path);
      const auto batch = cr::draw_model(name, params, draw_count, seed.value_or(default_seed()));
      emit(out_path, [&](std::ostream& o) { cr::write_batch_csv(batch, o); });
      return kExitPass;
    }

    if (*density) {
      if (!(std::abs(rho) < 1.0)) {
        throw cr::Error(cr::ErrorCode::kConfigError, "--rho must lie in (-1, 1)");
      }
      const auto grid = cr::parse_grid(grid_text);
      emit(out_path, [&](std::ostream& o) { cr::write_copula_density_csv(rho, grid, o); });
      return kExitPass;
    }
  } catch (const cr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
