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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "cauchyratio/rng.hpp"
#include "cauchyratio/samplers.hpp"
#include "test_util.hpp"

namespace cauchyratio {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double ulp(double x) { return std::nextafter(x, kInf) - x; }

double circular_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

TEST(WrapAngle, HalfOpenConvention) {
  EXPECT_EQ(wrap_angle(kPi), kPi);
  EXPECT_EQ(wrap_angle(-kPi), kPi);
  EXPECT_EQ(wrap_angle(0.5), 0.5);
  EXPECT_NEAR(wrap_angle(1.5 * kPi), -0.5 * kPi, 1e-15);
}

TEST(PolarDecompose, Axes) {
  EXPECT_EQ(polar_of(0.0, 1.0), std::make_pair(1.0, 0.0));
  const auto [r, t] = polar_of(1.0, 0.0);
  EXPECT_EQ(r, 1.0);
  EXPECT_DOUBLE_EQ(t, kPi / 2);
  EXPECT_EQ(polar_of(0.0, 0.0), std::make_pair(0.0, 0.0));
  EXPECT_EQ(polar_of(-0.0, -1.0).second, kPi);
}

TEST(PolarDecompose, RoundTripAndRange) {
  RngStream rng(1, 0);
  const auto batch = sample_independent_pair_gaussian(CovarianceMatrix::identity(2), 5000, rng);
  const auto polar = polar_decompose(batch);
  for (std::size_t j = 0; j < 2; ++j) {
    for (std::size_t i = 0; i < batch.rows(); ++i) {
      const double r = polar.radius_col(j)[i];
      const double t = polar.angle_col(j)[i];
      ASSERT_GE(r, 0.0);
      ASSERT_GT(t, -kPi);
      ASSERT_LE(t, kPi);
      EXPECT_NEAR(r * std::sin(t), batch(i, j), 1e-12);
      EXPECT_NEAR(r * std::cos(t), batch(i, 2 + j), 1e-12);
    }
  }
}

TEST(AngleDiffMap, Examples) {
  const double same[] = {0.7, 0.7};
  EXPECT_EQ(angle_diff_map(same).offsets[1], 0.0);
  const double wrapped[] = {kPi, -kPi / 2};
  const auto m = angle_diff_map(wrapped);
  EXPECT_EQ(m.theta1, kPi);
  EXPECT_EQ(m.offsets[0], 0.0);
  EXPECT_DOUBLE_EQ(m.offsets[1], kPi / 2);
  EXPECT_ERROR_CODE(angle_diff_map(std::span<const double>{}), ErrorCode::kEmptyInput);
}

TEST(AngleDiffMap, OutputsInRange) {
  RngStream rng(2, 0);
  std::vector<double> row(4);
  for (int rep = 0; rep < 100000; ++rep) {
    for (auto& t : row) t = kPi - 2 * kPi * rng.uniform();
    for (double u : angle_diff_map(row).offsets) {
      ASSERT_GT(u, -kPi);
      ASSERT_LE(u, kPi);
    }
  }
}

// Round trip: exact for most rows. Where a sum rounds onto the -pi/pi seam
// the two names of that circle point are interchangeable, so the bound is
// two ulps of 2 pi in circular distance.
TEST(AngleDiffMap, RoundTripProperty) {
  RngStream rng(3, 0);
  const double bound = 2.0 * ulp(2 * kPi);
  const std::vector<double> edges{kPi, std::nextafter(-kPi, 0.0), std::nextafter(kPi, 0.0),
                                  0.0, -kPi / 2, kPi / 2};
  std::vector<double> row(3);
  std::size_t exact = 0;
  const std::size_t reps = 200000;
  for (std::size_t rep = 0; rep < reps; ++rep) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      row[j] = rep < 500 ? edges[rng.below(edges.size())] : kPi - 2 * kPi * rng.uniform();
    }
    const auto m = angle_diff_map(row);
    const auto back = angle_diff_inverse(m.theta1, m.offsets);
    bool all = true;
    for (std::size_t j = 0; j < row.size(); ++j) {
      ASSERT_LE(circular_distance(back[j], row[j]), bound);
      ASSERT_GT(back[j], -kPi);
      ASSERT_LE(back[j], kPi);
      all = all && back[j] == row[j];
    }
    exact += all;
  }
  EXPECT_GT(static_cast<double>(exact) / reps, 0.5);
}

TEST(AngleDiffMap, DifferenceIdentity) {
  RngStream rng(4, 0);
  std::vector<double> row(4);
  for (int rep = 0; rep < 20000; ++rep) {
    for (auto& t : row) t = kPi - 2 * kPi * rng.uniform();
    const auto u = angle_diff_map(row).offsets;
    for (std::size_t j = 1; j < 4; ++j) {
      for (std::size_t k = 1; k < 4; ++k) {
        const double lhs = u[j] - u[k];
        const double rhs = row[j] - row[k];
        ASSERT_NEAR(std::cos(lhs), std::cos(rhs), 1e-12);
        ASSERT_NEAR(std::sin(lhs), std::sin(rhs), 1e-12);
      }
    }
  }
}

TEST(WeightedTan, Examples) {
  const auto w3 = WeightVector::uniform(3);
  const double zeros[] = {0.0, 0.0, 0.0};
  EXPECT_NEAR(weighted_tan(0.4, zeros, w3), std::tan(0.4), 1e-15);
  const auto w10 = WeightVector::validate(std::vector<double>{1.0, 0.0});
  const double pole[] = {0.0, kPi / 2 - 0.4};
  EXPECT_NEAR(weighted_tan(0.4, pole, w10), std::tan(0.4), 1e-15);
  const auto half = WeightVector::uniform(2);
  const double quarter[] = {0.0, kPi / 4};
  EXPECT_EQ(weighted_tan(kPi / 4, quarter, half), kInf);
  EXPECT_ERROR_CODE(weighted_tan(0.0, quarter, w3), ErrorCode::kDimensionMismatch);
}

TEST(RatioStatistic, Examples) {
  SampleBatch one(1, 2, {1.0, 2.0}, 0, "t", Layout::kPairs);
  EXPECT_EQ(ratio_statistic(one, WeightVector::uniform(1)).values[0], 0.5);
  SampleBatch two(1, 4, {1.0, -1.0, 1.0, 1.0}, 0, "t", Layout::kPairs);
  EXPECT_EQ(ratio_statistic(two, WeightVector::uniform(2)).values[0], 0.0);
  EXPECT_ERROR_CODE(ratio_statistic(two, WeightVector::uniform(3)),
                    ErrorCode::kDimensionMismatch);
}

TEST(RatioStatistic, InfAndNanPolicy) {
  SampleBatch b(3, 2, {1.0, 0.0, -1.0, 0.0, 0.0, 0.0}, 0, "t", Layout::kPairs);
  const auto z = ratio_statistic(b, WeightVector::uniform(1));
  EXPECT_EQ(z.values[0], kInf);
  EXPECT_TRUE(std::isnan(z.values[1]));
  EXPECT_EQ(z.values[2], -kInf);
  ASSERT_EQ(z.nan_rows.size(), 1u);
  EXPECT_EQ(z.nan_rows[0], 1u);
}

TEST(RatioStatistic, MatchesTanForm) {
  RngStream rng(5, 0);
  Matrix cov(3, 3);
  cov << 1, .5, .2, .5, 1, .3, .2, .3, 1;
  const auto batch = sample_independent_pair_gaussian(CovarianceMatrix::create(cov), 20000, rng);
  const auto w = WeightVector::validate(std::vector<double>{0.2, 0.3, 0.5});
  const auto z = ratio_statistic(batch, w);
  const auto polar = polar_decompose(batch);
  std::vector<double> row(3);
  for (std::size_t i = 0; i < batch.rows(); ++i) {
    double scale = 1.0;
    for (std::size_t j = 0; j < 3; ++j) {
      row[j] = polar.angle_col(j)[i];
      const double t = batch(i, j) / batch(i, 3 + j);
      scale += w[j] * t * t;
    }
    const auto m = angle_diff_map(row);
    ASSERT_NEAR(z.values[i], weighted_tan(m.theta1, m.offsets, w), 1e-10 * scale) << i;
  }
}

TEST(PairRatio, Column) {
  SampleBatch b(2, 4, {1, 2, 3, 4, 2, 4, 6, 8}, 0, "t", Layout::kPairs);
  const auto r = pair_ratio(b, 1);
  EXPECT_EQ(r.values[0], 3.0 / 6.0);
  EXPECT_EQ(r.values[1], 0.5);
}

TEST(PivotStatistic, Examples) {
  SampleBatch x1(1, 1, {2.0}, 0, "t", Layout::kVector);
  EXPECT_DOUBLE_EQ(pivot_statistic(x1, WeightVector::uniform(1), CovarianceMatrix::identity(1))[0],
                   0.25);
  SampleBatch x3(1, 3, {1.0, 1.0, 1.0}, 0, "t", Layout::kVector);
  EXPECT_NEAR(pivot_statistic(x3, WeightVector::uniform(3), CovarianceMatrix::identity(3))[0],
              1.0 / 3.0, 1e-15);
}

TEST(PivotStatistic, MatchesDirectQuadraticForm) {
  RngStream rng(6, 0);
  Matrix cov(3, 3);
  cov << 1, .5, .2, .5, 1, .3, .2, .3, 1;
  const auto c = CovarianceMatrix::create(cov);
  const auto x = sample_mvn(c, 1000, rng);
  const auto w = WeightVector::validate(std::vector<double>{0.2, 0.3, 0.5});
  const auto q = pivot_statistic(x, w, c);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    Eigen::Vector3d v(w[0] / x(i, 0), w[1] / x(i, 1), w[2] / x(i, 2));
    const double direct = v.dot(cov * v);
    ASSERT_NEAR(q[i], direct, 1e-12 * std::max(1.0, direct));
  }
}

}  // namespace
}  // namespace cauchyratio
