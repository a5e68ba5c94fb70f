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

#include "cauchyratio/transforms.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cauchyratio/simd/kernels.hpp"

namespace cauchyratio {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;

void require_pairs(const SampleBatch& batch) {
  if (batch.cols() == 0 || batch.cols() % 2 != 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected a batch of width 2m");
  }
}

}  // namespace

double wrap_angle(double angle) {
  if (angle <= -kPi) return angle + kTwoPi;
  if (angle > kPi) return angle - kTwoPi;
  return angle;
}

std::pair<double, double> polar_of(double x, double y) {
  const double r = std::sqrt(x * x + y * y);
  if (r == 0.0) return {0.0, 0.0};
  // atan2 returns [-pi, pi]; -pi only for x = -0.0, y < 0.
  return {r, wrap_angle(std::atan2(x, y))};
}

PolarBatch polar_decompose(const SampleBatch& batch) {
  require_pairs(batch);
  const std::size_t n = batch.rows();
  const std::size_t m = batch.cols() / 2;
  PolarBatch polar{n, m, std::vector<double>(n * m), std::vector<double>(n * m)};
  const auto& k = simd::active_kernels();
  for (std::size_t j = 0; j < m; ++j) {
    const auto xs = batch.col(j);
    const auto ys = batch.col(m + j);
    double* r = polar.radii.data() + j * n;
    double* t = polar.angles.data() + j * n;
    k.radius(xs.data(), ys.data(), n, r);
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = r[i] == 0.0 ? 0.0 : wrap_angle(std::atan2(xs[i], ys[i]));
    }
  }
  return polar;
}

AngleOffsets angle_diff_map(std::span<const double> angles) {
  if (angles.empty()) {
    throw Error(ErrorCode::kEmptyInput, "angle row is empty");
  }
  AngleOffsets result{angles[0], std::vector<double>(angles.size(), 0.0)};
  for (std::size_t j = 1; j < angles.size(); ++j) {
    const double diff = angles[j] - angles[0];
    double u = diff;
    if (diff <= -kPi) {
      u = diff + kTwoPi;
    } else if (diff > kPi) {
      u = diff - kTwoPi;
    }
    result.offsets[j] = u;
  }
  return result;
}

std::vector<double> angle_diff_inverse(double theta1,
                                       std::span<const double> offsets) {
  std::vector<double> angles(offsets.size());
  for (std::size_t j = 0; j < offsets.size(); ++j) {
    angles[j] = j == 0 ? theta1 : wrap_angle(theta1 + offsets[j]);
  }
  return angles;
}

double weighted_tan(double theta1, std::span<const double> offsets,
                    const WeightVector& w) {
  if (offsets.size() != w.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "offsets and weights differ in length");
  }
  double total = 0.0;
  for (std::size_t j = 0; j < offsets.size(); ++j) {
    if (w[j] == 0.0) continue;
    const double angle = wrap_angle(theta1 + offsets[j]);
    double t = 0.0;
    if (angle == kHalfPi || angle == -kHalfPi) {
      t = std::copysign(std::numeric_limits<double>::infinity(), angle);
    } else {
      t = std::tan(angle);
    }
    total += w[j] * t;
  }
  return total;
}

RatioStatistic ratio_statistic(const SampleBatch& batch,
                               const WeightVector& w) {
  require_pairs(batch);
  const std::size_t m = batch.cols() / 2;
  if (w.size() != m) {
    throw Error(ErrorCode::kDimensionMismatch,
                "batch width must be twice the number of weights");
  }
  const std::size_t n = batch.rows();
  std::vector<const double*> xs(m);
  std::vector<const double*> ys(m);
  for (std::size_t j = 0; j < m; ++j) {
    xs[j] = batch.col(j).data();
    ys[j] = batch.col(m + j).data();
  }
  RatioStatistic result{std::vector<double>(n), {}};
  simd::active_kernels().ratio_sum(xs.data(), ys.data(), w.values().data(), m,
                                   n, result.values.data());
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(result.values[i])) result.nan_rows.push_back(i);
  }
  return result;
}

RatioStatistic pair_ratio(const SampleBatch& batch, std::size_t j) {
  require_pairs(batch);
  const std::size_t n = batch.rows();
  const std::size_t m = batch.cols() / 2;
  if (j >= m) throw Error(ErrorCode::kOutOfRange, "pair index out of range");
  const double* x = batch.col(j).data();
  const double* y = batch.col(m + j).data();
  const double one = 1.0;
  RatioStatistic result{std::vector<double>(n), {}};
  simd::active_kernels().ratio_sum(&x, &y, &one, 1, n, result.values.data());
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(result.values[i])) result.nan_rows.push_back(i);
  }
  return result;
}

std::vector<double> pivot_statistic(const SampleBatch& x_batch,
                                    const WeightVector& w,
                                    const CovarianceMatrix& cov) {
  const std::size_t m = x_batch.cols();
  if (w.size() != m || cov.dim() != m) {
    throw Error(ErrorCode::kDimensionMismatch,
                "batch width, weights and covariance must agree");
  }
  const std::size_t n = x_batch.rows();
  std::vector<const double*> xs(m);
  for (std::size_t j = 0; j < m; ++j) xs[j] = x_batch.col(j).data();
  std::vector<double> cov_rm(m * m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      cov_rm[r * m + c] = cov.entries()(static_cast<Eigen::Index>(r),
                                        static_cast<Eigen::Index>(c));
    }
  }
  std::vector<double> out(n);
  simd::active_kernels().pivot_form(xs.data(), w.values().data(),
                                    cov_rm.data(), m, n, out.data());
  return out;
}

}  // namespace cauchyratio
