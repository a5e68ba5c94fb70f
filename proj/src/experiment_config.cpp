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

#include <algorithm>

#include "cauchyratio/harness.hpp"

namespace cauchyratio {
namespace {

template <typename T>
T get_or_throw(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError,
                std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace

void ExperimentSpec::validate() const {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw Error(ErrorCode::kUnknownExperiment, "no experiment named '" + name + "'");
  }
  if (sample_count && *sample_count < kMinExperimentSamples) {
    throw Error(ErrorCode::kConfigError,
                "experiments need at least 10000 samples");
  }
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw Error(ErrorCode::kConfigError, "threshold must lie in [0, 1]");
  }
  if (weights && dirichlet_weights) {
    throw Error(ErrorCode::kConfigError,
                "give explicit weights or the dirichlet marker, not both");
  }
  if (!params.is_object()) {
    throw Error(ErrorCode::kConfigError, "params must be a JSON object");
  }
}

ExperimentSpec experiment_spec_from_json(const nlohmann::json& config) {
  if (!config.is_object()) {
    throw Error(ErrorCode::kConfigError, "experiment config must be an object");
  }
  static const char* const kKnown[] = {"experiment", "params",    "weights",
                                       "samples",    "seed",      "threshold"};
  for (const auto& item : config.items()) {
    if (std::find_if(std::begin(kKnown), std::end(kKnown), [&](const char* k) {
          return item.key() == k;
        }) == std::end(kKnown)) {
      throw Error(ErrorCode::kConfigError,
                  "unknown config key '" + item.key() + "'");
    }
  }
  ExperimentSpec spec;
  spec.name = get_or_throw<std::string>(config, "experiment");
  if (config.contains("params")) spec.params = config.at("params");
  if (config.contains("weights")) {
    const auto& w = config.at("weights");
    if (w.is_string()) {
      if (w.get<std::string>() != "dirichlet") {
        throw Error(ErrorCode::kConfigError,
                    "weights must be an array or \"dirichlet\"");
      }
      spec.dirichlet_weights = true;
    } else {
      spec.weights = get_or_throw<std::vector<double>>(config, "weights");
    }
  }
  if (config.contains("samples")) {
    spec.sample_count = get_or_throw<std::size_t>(config, "samples");
  }
  if (config.contains("seed")) {
    spec.seed = get_or_throw<std::uint64_t>(config, "seed");
  }
  if (config.contains("threshold")) {
    spec.threshold = get_or_throw<double>(config, "threshold");
  }
  spec.validate();
  return spec;
}

nlohmann::json to_json(const ExperimentSpec& spec) {
  nlohmann::json j;
  j["experiment"] = spec.name;
  j["params"] = spec.params;
  if (spec.dirichlet_weights) {
    j["weights"] = "dirichlet";
  } else if (spec.weights) {
    j["weights"] = *spec.weights;
  }
  if (spec.sample_count) j["samples"] = *spec.sample_count;
  j["seed"] = spec.seed;
  j["threshold"] = spec.threshold;
  return j;
}

nlohmann::json to_json(const GofReport& report) {
  return nlohmann::json{{"test_name", report.test_name},
                        {"statistic", report.statistic},
                        {"p_value", report.p_value},
                        {"sample_size", report.sample_size},
                        {"threshold", report.threshold},
                        {"passed", report.passed}};
}

nlohmann::json to_json(const ToleranceCheck& check) {
  return nlohmann::json{{"name", check.name},
                        {"observed", check.observed},
                        {"expected", check.expected},
                        {"tolerance", check.tolerance},
                        {"passed", check.passed}};
}

nlohmann::json to_json(const RunReport& report) {
  nlohmann::json tests = nlohmann::json::array();
  for (const auto& t : report.tests) tests.push_back(to_json(t));
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) checks.push_back(to_json(c));
  return nlohmann::json{{"experiment", report.experiment},
                        {"spec", report.spec},
                        {"tests", std::move(tests)},
                        {"checks", std::move(checks)},
                        {"flagged_row_count", report.flagged_row_count},
                        {"overall_pass", report.overall_pass}};
}

nlohmann::json to_json(const std::vector<RunReport>& reports) {
  nlohmann::json runs = nlohmann::json::array();
  bool all = true;
  for (const auto& r : reports) {
    runs.push_back(to_json(r));
    all = all && r.overall_pass;
  }
  return nlohmann::json{{"reports", std::move(runs)}, {"overall_pass", all}};
}

}  // namespace cauchyratio
