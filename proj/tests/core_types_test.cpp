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

#include "cauchyratio/core_types.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "cauchyratio/rng.hpp"
#include "test_util.hpp"

namespace cauchyratio {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix m2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// --- WeightVector

TEST(WeightVector, AcceptsValidWeights) {
  const std::vector<double> raw{0.2, 0.3, 0.5};
  const auto w = WeightVector::validate(raw);
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[2], 0.5);
}

TEST(WeightVector, SumToleranceBoundary) {
  const std::vector<double> near{0.5, 0.5 + 5e-13};
  EXPECT_NO_THROW(WeightVector::validate(near));
  const std::vector<double> off{0.5, 0.5 + 1e-9};
  EXPECT_ERROR_CODE(WeightVector::validate(off), ErrorCode::kBadSum);
}

TEST(WeightVector, Rejections) {
  EXPECT_ERROR_CODE(WeightVector::validate(std::vector<double>{}), ErrorCode::kEmptyInput);
  EXPECT_ERROR_CODE(WeightVector::validate(std::vector<double>{1.5, -0.5}),
                    ErrorCode::kNegativeWeight);
  EXPECT_ERROR_CODE(WeightVector::validate(std::vector<double>{kNan, 1.0}),
                    ErrorCode::kNegativeWeight);
  EXPECT_ERROR_CODE(WeightVector::validate(std::vector<double>{0.3, 0.3}), ErrorCode::kBadSum);
}

TEST(WeightVector, ZeroWeightAllowed) {
  EXPECT_NO_THROW(WeightVector::validate(std::vector<double>{1.0, 0.0}));
}

TEST(WeightVector, UniformAndDirichlet) {
  const auto u = WeightVector::uniform(4);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(u[j], 0.25);
  RngStream rng(9, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const auto d = WeightVector::dirichlet(5, rng);
    double sum = 0.0;
    for (double v : d.values()) {
      EXPECT_GE(v, 0.0);
      sum += v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(WeightVector, DirichletIsDeterministic) {
  RngStream a(11, 2);
  RngStream b(11, 2);
  const auto wa = WeightVector::dirichlet(3, a);
  const auto wb = WeightVector::dirichlet(3, b);
  for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(wa[j], wb[j]);
}

// --- PairMatrix

TEST(PairMatrix, AssemblesBlockLayout) {
  const auto f = PairMatrix::assemble(m2(2, 0.5, 0.5, 2), m2(0, 0.5, -0.5, 0));
  const Matrix& full = f.assembled();
  ASSERT_EQ(full.rows(), 4);
  EXPECT_EQ(full(0, 2), 0.0);
  EXPECT_EQ(full(0, 3), 0.5);
  EXPECT_EQ(full(1, 2), -0.5);
  EXPECT_EQ(full(3, 0), 0.5);
  EXPECT_EQ(full(2, 2), 2.0);
}

TEST(PairMatrix, SymmetryProperty) {
  // Random symmetric A and antisymmetric B always give a symmetric F.
  RngStream rng(21, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const auto m = static_cast<Eigen::Index>(1 + rng.below(5));
    Matrix a(m, m);
    Matrix b(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
      for (Eigen::Index c = 0; c <= r; ++c) {
        a(r, c) = a(c, r) = rng.normal();
        const double v = r == c ? 0.0 : rng.normal();
        b(r, c) = v;
        b(c, r) = -v;
      }
    }
    const auto f = PairMatrix::assemble(a, b);
    EXPECT_EQ((f.assembled() - f.assembled().transpose()).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(PairMatrix, Rejections) {
  EXPECT_ERROR_CODE(PairMatrix::assemble(m2(1, 2, 3, 1), Matrix::Zero(2, 2)),
                    ErrorCode::kNotSymmetric);
  EXPECT_ERROR_CODE(PairMatrix::assemble(Matrix::Identity(2, 2), m2(0, 1, 1, 0)),
                    ErrorCode::kNotAntisymmetric);
  EXPECT_ERROR_CODE(PairMatrix::assemble(Matrix::Identity(2, 2), Matrix::Zero(3, 3)),
                    ErrorCode::kDimensionMismatch);
}

TEST(PairMatrix, WedgeQuadraticForm) {
  const auto f = PairMatrix::assemble(Matrix::Zero(2, 2), m2(0, 1, -1, 0));
  RngStream rng(5, 0);
  for (int rep = 0; rep < 100; ++rep) {
    const std::vector<double> p{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
    EXPECT_NEAR(f.quadratic_form(p), 2.0 * (p[0] * p[3] - p[1] * p[2]), 1e-12);
  }
}

// --- build_example_precision

TEST(ExamplePrecision, DiagonallyDominantExample) {
  const auto ex = build_example_precision(2, 2, 0.5, 0.5);
  EXPECT_TRUE(ex.diagonally_dominant);
  EXPECT_TRUE(ex.positive_definite);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(ex.matrix.assembled());
  const auto& ev = eig.eigenvalues();
  EXPECT_NEAR(ev(0), 1.2928932188134524, 1e-12);
  EXPECT_NEAR(ev(1), 1.2928932188134524, 1e-12);
  EXPECT_NEAR(ev(2), 2.7071067811865475, 1e-12);
  EXPECT_NEAR(ev(3), 2.7071067811865475, 1e-12);
}

TEST(ExamplePrecision, IndefiniteWhenNotDominant) {
  // a=b=c=d=1: eigenvalues 1 -/+ sqrt(2), each twice.
  const auto ex = build_example_precision(1, 1, 1, 1);
  EXPECT_FALSE(ex.diagonally_dominant);
  EXPECT_FALSE(ex.positive_definite);
  EXPECT_NEAR(ex.min_eigenvalue, 1.0 - std::sqrt(2.0), 1e-12);
  EXPECT_ERROR_CODE(build_example_precision(1, 1, 1, 1, PrecisionGrade::kSamplerGrade),
                    ErrorCode::kNotPositiveDefinite);
}

TEST(ExamplePrecision, CrossPairInverseStructure) {
  for (double rho : {0.3, 0.8}) {
    const double s = 1.0 - rho * rho;
    const auto ex = build_example_precision(1 / s, 1 / s, 0.0, -rho / s);
    const Matrix inv = ex.matrix.assembled().inverse();
    Matrix expected(4, 4);
    expected << 1, 0, 0, rho, 0, 1, -rho, 0, 0, -rho, 1, 0, rho, 0, 0, 1;
    EXPECT_LT((inv - expected).cwiseAbs().maxCoeff(), 1e-10) << "rho=" << rho;
  }
}

// --- CovarianceMatrix

TEST(CovarianceMatrix, Validation) {
  EXPECT_NO_THROW(CovarianceMatrix::create(m2(1, 1, 1, 1)));
  EXPECT_ERROR_CODE(CovarianceMatrix::create(m2(1, 0.5, 0.4, 1)), ErrorCode::kNotSymmetric);
  EXPECT_ERROR_CODE(CovarianceMatrix::create(m2(0, 0, 0, 1)), ErrorCode::kNonPositiveDiagonal);
  EXPECT_ERROR_CODE(CovarianceMatrix::create(m2(1, 2, 2, 1)),
                    ErrorCode::kNotPositiveSemidefinite);
}

// --- ScalarFactor and ProductFormModel

TEST(ScalarFactor, LogValues) {
  EXPECT_DOUBLE_EQ(log_scalar_factor(ExpNegHalf{}, 3.0), -1.5);
  EXPECT_DOUBLE_EQ(log_scalar_factor(PowerEven{1}, 3.0), 2.0 * std::log(3.0));
  EXPECT_EQ(log_scalar_factor(PowerEven{1}, 0.0), -kInf);
  EXPECT_DOUBLE_EQ(log_scalar_factor(InversePower{2.0}, 1.0), -2.0 * std::log(2.0));
  EXPECT_DOUBLE_EQ(log_scalar_factor(ExpNegSqrt{}, 4.0), std::log(4.0) - 2.0);
}

TEST(ProductFormModel, Validation) {
  EXPECT_ERROR_CODE(ProductFormModel::create({}, Integrability::kAsserted), ErrorCode::kNoFactors);
  std::vector<ProductFactor> ok{{PairMatrix::identity(1), ExpNegHalf{}}};
  EXPECT_ERROR_CODE(ProductFormModel::create(ok, Integrability::kUnasserted),
                    ErrorCode::kIntegrabilityNotAsserted);
  std::vector<ProductFactor> mixed{{PairMatrix::identity(1), ExpNegHalf{}},
                                   {PairMatrix::identity(2), ExpNegHalf{}}};
  EXPECT_ERROR_CODE(ProductFormModel::create(mixed, Integrability::kAsserted),
                    ErrorCode::kDimensionMismatch);
  std::vector<ProductFactor> poly_only{{PairMatrix::identity(1), PowerEven{1}}};
  EXPECT_ERROR_CODE(ProductFormModel::create(poly_only, Integrability::kAsserted),
                    ErrorCode::kNotIntegrable);
}

TEST(ProductFormModel, LogDensityIsSumOfFactors) {
  const auto wedge = PairMatrix::assemble(Matrix::Zero(2, 2), m2(0, 1, -1, 0));
  const auto model = ProductFormModel::create(
      {{wedge, PowerEven{1}}, {PairMatrix::identity(2), ExpNegHalf{}}}, Integrability::kAsserted);
  const std::vector<double> p{0.3, -1.2, 0.7, 2.0};
  const double t = 2.0 * (p[0] * p[3] - p[1] * p[2]);
  double sq = 0.0;
  for (double v : p) sq += v * v;
  EXPECT_NEAR(model.log_density(p), 2.0 * std::log(std::abs(t)) - sq / 2.0, 1e-12);
}

// --- SampleBatch

TEST(SampleBatch, ShapeAndNames) {
  SampleBatch b(2, 4, {1, 2, 3, 4, 5, 6, 7, 8}, 42, "test", Layout::kPairs);
  EXPECT_EQ(b(1, 2), 6.0);
  EXPECT_EQ(b.column_name(0), "x1");
  EXPECT_EQ(b.column_name(3), "y2");
  SampleBatch v(1, 2, {1, 2}, 42, "test", Layout::kVector);
  EXPECT_EQ(v.column_name(1), "x2");
  SampleBatch z(1, 2, {1, kInf}, 42, "test", Layout::kRatios);
  EXPECT_EQ(z.column_name(0), "z1");
}

TEST(SampleBatch, Rejections) {
  EXPECT_ERROR_CODE(SampleBatch(2, 3, std::vector<double>(6, 0.0), 1, "t", Layout::kPairs),
                    ErrorCode::kDimensionMismatch);
  EXPECT_ERROR_CODE(SampleBatch(2, 2, std::vector<double>(3, 0.0), 1, "t", Layout::kPairs),
                    ErrorCode::kDimensionMismatch);
  EXPECT_ERROR_CODE(SampleBatch(1, 2, {kNan, 1.0}, 1, "t", Layout::kPairs),
                    ErrorCode::kDomainError);
}

TEST(SampleBatch, EmptyBatchIsValid) {
  SampleBatch b(0, 2, {}, 1, "t", Layout::kPairs);
  EXPECT_EQ(b.rows(), 0u);
}

TEST(SampleBatch, SampleCovariance) {
  SampleBatch b(4, 2, {1, -1, 1, -1, 2, -2, 2, -2}, 1, "t", Layout::kPairs);
  const Matrix c = b.sample_covariance();
  EXPECT_DOUBLE_EQ(c(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(c(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(c(1, 1), 4.0);
}

}  // namespace
}  // namespace cauchyratio
