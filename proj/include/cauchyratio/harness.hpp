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

#ifndef CAUCHYRATIO_HARNESS_HPP_
#define CAUCHYRATIO_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cauchyratio/core_types.hpp"
#include "cauchyratio/gof.hpp"

namespace cauchyratio {

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr std::size_t kMinExperimentSamples = 10000;

/// One named, seeded experiment. Unset fields fall back to the registry
/// entry's defaults.
struct ExperimentSpec {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  std::optional<std::vector<double>> weights;
  bool dirichlet_weights = false;
  std::optional<std::size_t> sample_count;
  std::uint64_t seed = kDefaultSeed;
  double threshold = kDefaultThreshold;

  void validate() const;
};

// Deterministic pass/fail comparisons that are not hypothesis tests
// (moment matches, covariance patterns, series agreement, histograms).
struct ToleranceCheck {
  std::string name;
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

ToleranceCheck within(std::string name, double observed, double expected,
                      double tolerance);

struct RunReport {
  std::string experiment;
  nlohmann::json spec;  // resolved parameters, weights, samples, seed
  std::vector<GofReport> tests;
  std::vector<ToleranceCheck> checks;
  std::size_t flagged_row_count = 0;
  double wall_time_seconds = 0.0;  // console only; not serialized
  bool overall_pass = false;
};

const std::vector<std::string>& experiment_names();

RunReport run_experiment(const ExperimentSpec& spec);

// Every registry entry at default parameters, run on a worker pool. Results
// come back in registry order regardless of scheduling.
std::vector<RunReport> run_all(double threshold, std::uint64_t seed,
                               std::size_t workers = 0);

// Named model draws for CSV export (`sample` subcommand).
const std::vector<std::string>& model_names();
SampleBatch draw_model(const std::string& model, const nlohmann::json& params,
                       std::size_t count, std::uint64_t seed);

// JSON surfaces.
nlohmann::json to_json(const GofReport& report);
nlohmann::json to_json(const ToleranceCheck& check);
nlohmann::json to_json(const RunReport& report);
nlohmann::json to_json(const std::vector<RunReport>& reports);

ExperimentSpec experiment_spec_from_json(const nlohmann::json& config);
nlohmann::json to_json(const ExperimentSpec& spec);

}  // namespace cauchyratio

#endif  // CAUCHYRATIO_HARNESS_HPP_
