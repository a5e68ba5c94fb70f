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

#ifndef CAUCHYRATIO_GOF_HPP_
#define CAUCHYRATIO_GOF_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <string>

namespace cauchyratio {

inline constexpr double kDefaultThreshold = 1e-3;

/// Outcome of one goodness-of-fit test. passed <=> p_value > threshold.
struct GofReport {
  std::string test_name;
  double statistic = 0.0;
  double p_value = 0.0;
  std::size_t sample_size = 0;  // samples used, after exclusions
  double threshold = kDefaultThreshold;
  bool passed = false;
  std::size_t excluded = 0;  // NaN samples left out of the test
};

GofReport make_report(std::string name, double statistic, double p_value,
                      std::size_t sample_size, double threshold,
                      std::size_t excluded = 0);

// Standard Cauchy(0, 1).
double cauchy_pdf(double z);
double cauchy_cdf(double z);
double cauchy_quantile(double p);

// CDF of Unif(-pi, pi], clamped to [0, 1].
double uniform_angle_cdf(double t);

// P(1/W <= t) for W ~ chi^2_1, i.e. erfc(1/sqrt(2t)) for t > 0.
double inv_chisq1_cdf(double t);

// Kolmogorov survival function Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} e^{-2k^2 lambda^2}.
double kolmogorov_q(double lambda);

double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);
double chi2_cdf(double x, double dof);

using Cdf = std::function<double(double)>;

// One-sample two-sided KS test with asymptotic p-value. NaN samples are
// excluded and counted; +-inf are handled through the CDF limits.
GofReport ks_test(std::span<const double> samples, const Cdf& cdf,
                  std::string name, double threshold = kDefaultThreshold);

GofReport ks_two_sample(std::span<const double> a, std::span<const double> b,
                        std::string name,
                        double threshold = kDefaultThreshold);

// Pearson chi-squared independence test on a bins x bins table whose margins
// are cut at each variable's own empirical quantiles.
GofReport chi2_independence_test(std::span<const double> x,
                                 std::span<const double> y, std::size_t bins,
                                 std::string name,
                                 double threshold = kDefaultThreshold);

}  // namespace cauchyratio

#endif  // CAUCHYRATIO_GOF_HPP_
