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

#ifndef CAUCHYRATIO_TRANSFORMS_HPP_
#define CAUCHYRATIO_TRANSFORMS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "cauchyratio/core_types.hpp"

namespace cauchyratio {

// Polar coordinates of each pair, (x_j, y_j) = (R_j sin T_j, R_j cos T_j):
// the sine carries x. Column-major n x m blocks.
struct PolarBatch {
  std::size_t rows = 0;
  std::size_t pairs = 0;
  std::vector<double> radii;
  std::vector<double> angles;  // in (-pi, pi]

  std::span<const double> radius_col(std::size_t j) const {
    return {radii.data() + j * rows, rows};
  }
  std::span<const double> angle_col(std::size_t j) const {
    return {angles.data() + j * rows, rows};
  }
};

// Result of the angle-difference map: theta1 and offsets u with u[0] == 0.
struct AngleOffsets {
  double theta1 = 0.0;
  std::vector<double> offsets;
};

// Wrap to (-pi, pi]: values <= -pi move up by 2pi, values > pi move down.
double wrap_angle(double angle);

// (R, T) of a single pair; R = 0 maps to T = 0.
std::pair<double, double> polar_of(double x, double y);

PolarBatch polar_decompose(const SampleBatch& batch);

AngleOffsets angle_diff_map(std::span<const double> angles);

// Inverse of angle_diff_map: T_j = wrap(theta1 + u_j).
std::vector<double> angle_diff_inverse(double theta1,
                                       std::span<const double> offsets);

// sum_j w_j tan(theta1 + u_j). Terms with w_j == 0 are skipped; an angle equal
// (after wrapping) to the double nearest +-pi/2 is a pole and yields +-inf.
double weighted_tan(double theta1, std::span<const double> offsets,
                    const WeightVector& w);

struct RatioStatistic {
  std::vector<double> values;
  std::vector<std::size_t> nan_rows;  // rows where a 0/0 term gave NaN
};

// Z_i = sum_j w_j x_ij / y_ij for a paired batch of width 2m.
RatioStatistic ratio_statistic(const SampleBatch& batch, const WeightVector& w);

// Single-pair ratio Z_j = x_j / y_j (j zero-based) for a paired batch.
RatioStatistic pair_ratio(const SampleBatch& batch, std::size_t j);

// Q_i = v^T cov v with v_j = w_j / x_ij, for an n x m batch.
std::vector<double> pivot_statistic(const SampleBatch& x_batch,
                                    const WeightVector& w,
                                    const CovarianceMatrix& cov);

}  // namespace cauchyratio

#endif  // CAUCHYRATIO_TRANSFORMS_HPP_
