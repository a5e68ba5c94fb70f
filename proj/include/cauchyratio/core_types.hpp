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

#ifndef CAUCHYRATIO_CORE_TYPES_HPP_
#define CAUCHYRATIO_CORE_TYPES_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "cauchyratio/error.hpp"
#include "cauchyratio/rng.hpp"

namespace cauchyratio {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kWeightSumTolerance = 1e-12;
inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kPsdRelativeTolerance = 1e-10;

// Row-major flat array -> dim x dim matrix.
Matrix matrix_from_row_major(std::span<const double> values, std::size_t dim);

/// Convex-combination weights: nonnegative, summing to one.
class WeightVector {
 public:
  static WeightVector validate(std::span<const double> raw);
  // Equal weights 1/m.
  static WeightVector uniform(std::size_t m);
  // Dirichlet(1, ..., 1) draw via normalized exponentials.
  static WeightVector dirichlet(std::size_t m, RngStream& rng);

  std::span<const double> values() const noexcept { return weights_; }
  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t j) const { return weights_[j]; }

 private:
  explicit WeightVector(std::vector<double> w) : weights_(std::move(w)) {}
  std::vector<double> weights_;
};

/// The 2m x 2m block matrix [[A, B], [-B, A]] with A symmetric and B
/// antisymmetric. Quadratic forms in such a matrix depend on the polar angles
/// of the coordinate pairs (x_j, y_j) only through their differences.
class PairMatrix {
 public:
  static PairMatrix assemble(const Matrix& a_block, const Matrix& b_block);
  static PairMatrix identity(std::size_t m);
  // [[S, 0], [0, S]]: the precision of independent X, Y ~ N(0, S^-1).
  static PairMatrix block_diagonal(const Matrix& s);

  std::size_t half_dim() const noexcept {
    return static_cast<std::size_t>(a_.rows());
  }
  const Matrix& a_block() const noexcept { return a_; }
  const Matrix& b_block() const noexcept { return b_; }
  const Matrix& assembled() const noexcept { return full_; }

  // (x, y)^T F (x, y) for a point laid out as (x_1..x_m, y_1..y_m).
  double quadratic_form(std::span<const double> point) const;

 private:
  PairMatrix(Matrix a, Matrix b, Matrix full)
      : a_(std::move(a)), b_(std::move(b)), full_(std::move(full)) {}
  Matrix a_;
  Matrix b_;
  Matrix full_;
};

struct ExamplePrecision {
  PairMatrix matrix;
  bool diagonally_dominant = false;  // min(a, b) > |c| + |d|
  bool positive_definite = false;
  double min_eigenvalue = 0.0;
};

enum class PrecisionGrade { kAny, kSamplerGrade };

// The m = 2 precision matrix
//   [ a  c  0  d ]
//   [ c  b -d  0 ]
//   [ 0 -d  a  c ]
//   [ d  0  c  b ]
// with its definiteness diagnostics. kSamplerGrade throws NotPositiveDefinite
// when the eigenvalue check fails.
ExamplePrecision build_example_precision(
    double a, double b, double c, double d,
    PrecisionGrade grade = PrecisionGrade::kAny);

/// Symmetric positive semi-definite matrix with strictly positive diagonal.
class CovarianceMatrix {
 public:
  static CovarianceMatrix create(const Matrix& entries);
  static CovarianceMatrix identity(std::size_t m);

  std::size_t dim() const noexcept {
    return static_cast<std::size_t>(entries_.rows());
  }
  const Matrix& entries() const noexcept { return entries_; }

 private:
  explicit CovarianceMatrix(Matrix m) : entries_(std::move(m)) {}
  Matrix entries_;
};

// Scalar factor catalog for product-form densities h(t), t a quadratic form.
struct ExpNegHalf {};            // exp(-t/2)
struct PowerEven { int q = 1; };  // t^(2q)
struct InversePower { double p = 1.0; };  // (1 + t)^(-p)
struct ExpNegSqrt {};             // t * exp(-sqrt(t))

using ScalarFactor = std::variant<ExpNegHalf, PowerEven, InversePower, ExpNegSqrt>;

// log h(t); -infinity where h vanishes or is undefined.
double log_scalar_factor(const ScalarFactor& factor, double t);
std::string describe(const ScalarFactor& factor);

struct ProductFactor {
  PairMatrix matrix;
  ScalarFactor scalar;
};

enum class Integrability { kUnasserted, kAsserted };

/// Unnormalized density K * prod_i h_i((x, y)^T F_i (x, y)).
///
/// Integrability cannot be decided in general, so the caller must assert it.
/// Known integrable combinations: at least one ExpNegHalf or ExpNegSqrt
/// factor with positive definite F, or InversePower(p) with positive definite
/// F and p > m; PowerEven factors may be multiplied onto any of these.
/// A model made only of PowerEven factors is rejected even when asserted.
class ProductFormModel {
 public:
  static ProductFormModel create(std::vector<ProductFactor> factors,
                                 Integrability integrability);

  std::size_t half_dim() const noexcept { return half_dim_; }
  std::size_t dim() const noexcept { return 2 * half_dim_; }
  const std::vector<ProductFactor>& factors() const noexcept {
    return factors_;
  }

  double log_density(std::span<const double> point) const;

 private:
  ProductFormModel(std::vector<ProductFactor> f, std::size_t m)
      : factors_(std::move(f)), half_dim_(m) {}
  std::vector<ProductFactor> factors_;
  std::size_t half_dim_;
};

// Column naming of a batch: kPairs is (x1..xm, y1..ym), kVector is
// (x1..xk), kRatios is (z1..zk).
enum class Layout { kVector, kPairs, kRatios };

/// n x k block of draws stored column-major, with provenance.
class SampleBatch {
 public:
  SampleBatch(std::size_t rows, std::size_t cols,
              std::vector<double> column_major, std::uint64_t seed,
              std::string model_id, Layout layout);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::string& model_id() const noexcept { return model_id_; }
  Layout layout() const noexcept { return layout_; }

  std::span<const double> col(std::size_t j) const {
    return {data_.data() + j * rows_, rows_};
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[j * rows_ + i];
  }
  std::span<const double> data() const noexcept { return data_; }

  std::string column_name(std::size_t j) const;
  // Column range [first, first + count) as a new batch.
  SampleBatch columns(std::size_t first, std::size_t count,
                      Layout layout) const;
  // Sample covariance (mean-centred, divisor n) of all columns.
  Matrix sample_covariance() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
  std::uint64_t seed_;
  std::string model_id_;
  Layout layout_;
};

}  // namespace cauchyratio

#endif  // CAUCHYRATIO_CORE_TYPES_HPP_
