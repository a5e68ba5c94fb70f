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

#include "cauchyratio/gof.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "cauchyratio/error.hpp"
#include "cauchyratio/simd/kernels.hpp"

namespace cauchyratio {
namespace {

constexpr double kPi = std::numbers::pi;

// Below this lambda the theta-function form converges in a few terms; above
// it the alternating series does.
constexpr double kKolmogorovSwitch = 1.18;

std::vector<double> finite_or_inf(std::span<const double> samples,
                                  std::size_t& excluded) {
  std::vector<double> kept;
  kept.reserve(samples.size());
  excluded = 0;
  for (double v : samples) {
    if (std::isnan(v)) {
      ++excluded;
    } else {
      kept.push_back(v);
    }
  }
  return kept;
}

// Bin index of each value by rank: floor(rank * bins / n).
std::vector<std::size_t> quantile_bins(const std::vector<double>& v,
                                       std::size_t bins) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<std::size_t> bin(n);
  for (std::size_t rank = 0; rank < n; ++rank) {
    bin[order[rank]] = rank * bins / n;
  }
  return bin;
}

}  // namespace

GofReport make_report(std::string name, double statistic, double p_value,
                      std::size_t sample_size, double threshold,
                      std::size_t excluded) {
  return GofReport{std::move(name), statistic,  p_value,
                   sample_size,     threshold,  p_value > threshold,
                   excluded};
}

double cauchy_pdf(double z) { return (1.0 / kPi) / (1.0 + z * z); }

double cauchy_cdf(double z) { return 0.5 + std::atan(z) / kPi; }

double cauchy_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "Cauchy quantile needs p in (0, 1)");
  }
  return std::tan(kPi * (p - 0.5));
}

double uniform_angle_cdf(double t) {
  return std::clamp((t + kPi) / (2.0 * kPi), 0.0, 1.0);
}

double inv_chisq1_cdf(double t) {
  if (!(t > 0.0)) return 0.0;
  if (std::isinf(t)) return 1.0;
  return std::erfc(1.0 / std::sqrt(2.0 * t));
}

double kolmogorov_q(double lambda) {
  if (!(lambda > 0.0)) return 1.0;
  if (lambda < kKolmogorovSwitch) {
    // 1 - Q = sqrt(2 pi)/lambda * sum_k exp(-(2k-1)^2 pi^2 / (8 lambda^2)).
    const double y = -kPi * kPi / (8.0 * lambda * lambda);
    double sum = 0.0;
    for (int k = 1; k < 100; ++k) {
      const double odd = 2.0 * k - 1.0;
      const double term = std::exp(odd * odd * y);
      sum += term;
      if (term < 1e-16 * sum) break;
    }
    return std::clamp(1.0 - std::sqrt(2.0 * kPi) / lambda * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k < 1000; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double regularized_gamma_p(double a, double x) {
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(a, x);
}

double regularized_gamma_q(double a, double x) {
  if (!(x > 0.0)) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(a, x);
}

double chi2_cdf(double x, double dof) {
  return regularized_gamma_p(0.5 * dof, 0.5 * x);
}

GofReport ks_test(std::span<const double> samples, const Cdf& cdf,
                  std::string name, double threshold) {
  std::size_t excluded = 0;
  std::vector<double> v = finite_or_inf(samples, excluded);
  if (v.empty()) {
    throw Error(ErrorCode::kEmptySample, "KS test on an empty sample");
  }
  std::sort(v.begin(), v.end());
  for (double& x : v) x = cdf(x);
  const double d = simd::active_kernels().ks_sup_distance(v.data(), v.size());
  const double p = kolmogorov_q(std::sqrt(static_cast<double>(v.size())) * d);
  return make_report(std::move(name), d, p, v.size(), threshold, excluded);
}

GofReport ks_two_sample(std::span<const double> a, std::span<const double> b,
                        std::string name, double threshold) {
  std::size_t excluded_a = 0;
  std::size_t excluded_b = 0;
  std::vector<double> x = finite_or_inf(a, excluded_a);
  std::vector<double> y = finite_or_inf(b, excluded_b);
  if (x.empty() || y.empty()) {
    throw Error(ErrorCode::kEmptySample, "two-sample KS on an empty sample");
  }
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double t = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == t) ++i;
    while (j < y.size() && y[j] == t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx -
                             static_cast<double>(j) / ny));
  }
  const double en = std::sqrt(nx * ny / (nx + ny));
  return make_report(std::move(name), d, kolmogorov_q(en * d),
                     x.size() + y.size(), threshold, excluded_a + excluded_b);
}

GofReport chi2_independence_test(std::span<const double> x,
                                 std::span<const double> y, std::size_t bins,
                                 std::string name, double threshold) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "independence test needs paired samples");
  }
  if (bins < 2) throw Error(ErrorCode::kBadParameter, "need at least 2 bins");
  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(x.size());
  ys.reserve(y.size());
  std::size_t excluded = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::isnan(x[i]) || std::isnan(y[i])) {
      ++excluded;
      continue;
    }
    xs.push_back(x[i]);
    ys.push_back(y[i]);
  }
  const std::size_t n = xs.size();
  if (n < 10 * bins * bins) {
    throw Error(ErrorCode::kTooFewSamples,
                "independence test needs at least 10*bins^2 samples");
  }
  const auto bx = quantile_bins(xs, bins);
  const auto by = quantile_bins(ys, bins);
  std::vector<double> table(bins * bins, 0.0);
  std::vector<double> row(bins, 0.0);
  std::vector<double> col(bins, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    table[bx[i] * bins + by[i]] += 1.0;
    row[bx[i]] += 1.0;
    col[by[i]] += 1.0;
  }
  const double dn = static_cast<double>(n);
  double stat = 0.0;
  for (std::size_t r = 0; r < bins; ++r) {
    for (std::size_t c = 0; c < bins; ++c) {
      const double expected = row[r] * col[c] / dn;
      const double diff = table[r * bins + c] - expected;
      stat += diff * diff / expected;
    }
  }
  const double dof = static_cast<double>((bins - 1) * (bins - 1));
  const double p = regularized_gamma_q(0.5 * dof, 0.5 * stat);
  return make_report(std::move(name), stat, p, n, threshold, excluded);
}

}  // namespace cauchyratio
