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

#include "cauchyratio/harness.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <string>

#include "test_util.hpp"

namespace cauchyratio {
namespace {

ExperimentSpec named(const std::string& name) {
  ExperimentSpec spec;
  spec.name = name;
  return spec;
}

TEST(Registry, HasEveryExperiment) {
  const auto& names = experiment_names();
  for (const char* n : {"gaussian-independent", "pivot-chisq", "lemma-tan", "rotinv-poly",
                        "rotinv-exp", "wedge", "precision-F", "cross-pair", "natgen",
                        "gaussian-mixture", "theta-independence", "copula-consistency"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
  }
}

TEST(SpecValidation, Rejections) {
  EXPECT_ERROR_CODE(run_experiment(named("no-such-thing")), ErrorCode::kUnknownExperiment);
  auto spec = named("lemma-tan");
  spec.sample_count = 9999;
  EXPECT_ERROR_CODE(run_experiment(spec), ErrorCode::kConfigError);
  spec = named("lemma-tan");
  spec.params = {{"bogus", 1}};
  EXPECT_ERROR_CODE(run_experiment(spec), ErrorCode::kConfigError);
  spec = named("lemma-tan");
  spec.weights = std::vector<double>{0.5, 0.6, -0.1};
  EXPECT_ERROR_CODE(run_experiment(spec), ErrorCode::kConfigError);
}

TEST(SpecFromJson, ParsesAllKeys) {
  const auto j = nlohmann::json::parse(R"({
    "experiment": "gaussian-independent",
    "params": {"cov": [1, 0, 0, 1]},
    "weights": [0.25, 0.75],
    "samples": 20000,
    "seed": 7,
    "threshold": 0.01
  })");
  const auto spec = experiment_spec_from_json(j);
  EXPECT_EQ(spec.name, "gaussian-independent");
  EXPECT_EQ(spec.sample_count.value(), 20000u);
  EXPECT_EQ(spec.seed, 7u);
  EXPECT_EQ(spec.threshold, 0.01);
  EXPECT_EQ(spec.weights->size(), 2u);
  const auto round = experiment_spec_from_json(to_json(spec));
  EXPECT_EQ(to_json(round), to_json(spec));
}

TEST(SpecFromJson, Rejections) {
  EXPECT_ERROR_CODE(experiment_spec_from_json(nlohmann::json::parse(R"({"experiment": "x"})")),
                    ErrorCode::kUnknownExperiment);
  EXPECT_ERROR_CODE(
      experiment_spec_from_json(nlohmann::json::parse(R"({"experiment": "wedge", "extra": 1})")),
      ErrorCode::kConfigError);
  EXPECT_ERROR_CODE(experiment_spec_from_json(nlohmann::json::parse(
                        R"({"experiment": "wedge", "weights": "random"})")),
                    ErrorCode::kConfigError);
  EXPECT_ERROR_CODE(experiment_spec_from_json(nlohmann::json::parse("[]")),
                    ErrorCode::kConfigError);
}

TEST(RunExperiment, GaussianIdentityUniformWeights) {
  auto spec = named("gaussian-independent");
  spec.params = {{"cov", {1, 0, 0, 0, 1, 0, 0, 0, 1}}};
  spec.weights = std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3};
  const auto r = run_experiment(spec);
  EXPECT_TRUE(r.overall_pass);
  EXPECT_EQ(r.tests.size(), 4u);
  EXPECT_EQ(r.tests.front().sample_size, 200000u);
}

TEST(RunExperiment, WeightedTanDefaults) {
  auto spec = named("lemma-tan");
  spec.params = {{"offsets", {0.0, 1.0, 2.5}}};
  spec.weights = std::vector<double>{0.2, 0.3, 0.5};
  EXPECT_TRUE(run_experiment(spec).overall_pass);
}

TEST(RunExperiment, ThresholdOneFails) {
  auto spec = named("pivot-chisq");
  spec.threshold = 1.0;
  EXPECT_FALSE(run_experiment(spec).overall_pass);
}

TEST(RunExperiment, OverallPassIsConjunction) {
  auto spec = named("cross-pair");
  spec.sample_count = 20000;
  const auto r = run_experiment(spec);
  bool all = true;
  for (const auto& t : r.tests) all = all && t.passed;
  for (const auto& c : r.checks) all = all && c.passed;
  EXPECT_EQ(r.overall_pass, all);
}

TEST(RunExperiment, DirichletWeightsIndependentOfSamples) {
  auto spec = named("gaussian-independent");
  spec.dirichlet_weights = true;
  spec.sample_count = 20000;
  const auto r = run_experiment(spec);
  ASSERT_TRUE(r.spec.contains("weights"));
  double sum = 0.0;
  for (double w : r.spec["weights"]) sum += w;
  EXPECT_NEAR(sum, 1.0, 1e-12);
  // Each Z_j depends only on its pair, so drawing the weights must not shift the samples.
  auto fixed = named("gaussian-independent");
  fixed.sample_count = 20000;
  const auto f = run_experiment(fixed);
  for (std::size_t j = 1; j < 4; ++j) EXPECT_EQ(r.tests[j].statistic, f.tests[j].statistic);
}

TEST(RunExperiment, ReportsAreByteIdentical) {
  auto spec = named("rotinv-exp");
  spec.sample_count = 20000;
  EXPECT_EQ(to_json(run_experiment(spec)).dump(), to_json(run_experiment(spec)).dump());
}

TEST(RunExperiment, SpecEchoHasResolvedDefaults) {
  auto spec = named("precision-F");
  spec.sample_count = 20000;
  const auto j = to_json(run_experiment(spec));
  EXPECT_EQ(j["spec"]["params"]["a"], 2.0);
  EXPECT_EQ(j["spec"]["samples"], 20000);
  EXPECT_EQ(j["spec"]["seed"], 42);
  ASSERT_TRUE(j.contains("tests"));
  const auto& t = j["tests"][0];
  for (const char* key : {"test_name", "statistic", "p_value", "sample_size", "threshold",
                          "passed"}) {
    EXPECT_TRUE(t.contains(key)) << key;
  }
  EXPECT_FALSE(j.contains("wall_time_seconds"));
}

TEST(RunAll, EveryEntryReportsAndSeedChangesPValues) {
  const auto a = run_all(kDefaultThreshold, 42);
  const auto b = run_all(kDefaultThreshold, 43);
  ASSERT_EQ(a.size(), experiment_names().size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].experiment, experiment_names()[i]);
    EXPECT_FALSE(a[i].tests.empty()) << a[i].experiment;
    EXPECT_TRUE(a[i].overall_pass) << a[i].experiment;
    EXPECT_TRUE(b[i].overall_pass) << b[i].experiment;
    EXPECT_NE(a[i].tests[0].p_value, b[i].tests[0].p_value) << a[i].experiment;
  }
}

TEST(RunAll, WorkerCountDoesNotChangeResults) {
  const auto one = run_all(kDefaultThreshold, 5, 1);
  const auto four = run_all(kDefaultThreshold, 5, 4);
  EXPECT_EQ(to_json(one).dump(), to_json(four).dump());
}

TEST(Models, DrawEachModel) {
  for (const auto& m : model_names()) {
    const auto batch = draw_model(m, nlohmann::json::object(), 100, 1);
    EXPECT_EQ(batch.rows(), 100u) << m;
  }
  EXPECT_ERROR_CODE(draw_model("nope", {}, 10, 1), ErrorCode::kUnknownExperiment);
  EXPECT_ERROR_CODE(draw_model("mvn", {{"cov", {1, 2, 3}}}, 10, 1), ErrorCode::kConfigError);
}

}  // namespace
}  // namespace cauchyratio
