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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace cauchyratio {
namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + " must be a nonempty square matrix");
  }
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

Matrix matrix_from_row_major(std::span<const double> values, std::size_t dim) {
  if (values.size() != dim * dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "expected " + std::to_string(dim * dim) +
                    " row-major entries, got " + std::to_string(values.size()));
  }
  Matrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = values[r * dim + c];
  }
  return m;
}

// ---------------------------------------------------------------------------
// WeightVector

WeightVector WeightVector::validate(std::span<const double> raw) {
  if (raw.empty()) {
    throw Error(ErrorCode::kEmptyInput, "weight vector is empty");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < raw.size(); ++j) {
    if (!(raw[j] >= 0.0)) {
      throw Error(ErrorCode::kNegativeWeight,
                  "weight " + std::to_string(j) + " is negative or NaN");
    }
    sum += raw[j];
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "weights sum to " << sum;
    throw Error(ErrorCode::kBadSum, os.str());
  }
  return WeightVector(std::vector<double>(raw.begin(), raw.end()));
}

WeightVector WeightVector::uniform(std::size_t m) {
  if (m == 0) throw Error(ErrorCode::kEmptyInput, "weight vector is empty");
  return WeightVector(std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

WeightVector WeightVector::dirichlet(std::size_t m, RngStream& rng) {
  if (m == 0) throw Error(ErrorCode::kEmptyInput, "weight vector is empty");
  std::vector<double> w(m);
  for (auto& x : w) x = rng.exponential();
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x /= total;
  return WeightVector(std::move(w));
}

// ---------------------------------------------------------------------------
// PairMatrix

PairMatrix PairMatrix::assemble(const Matrix& a_block, const Matrix& b_block) {
  require_square(a_block, "A block");
  require_square(b_block, "B block");
  if (a_block.rows() != b_block.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "A and B blocks differ in size");
  }
  if (max_abs(a_block - a_block.transpose()) > kSymmetryTolerance) {
    throw Error(ErrorCode::kNotSymmetric, "A block is not symmetric");
  }
  if (max_abs(b_block + b_block.transpose()) > kSymmetryTolerance) {
    throw Error(ErrorCode::kNotAntisymmetric, "B block is not antisymmetric");
  }
  const Eigen::Index m = a_block.rows();
  Matrix full(2 * m, 2 * m);
  full.topLeftCorner(m, m) = a_block;
  full.topRightCorner(m, m) = b_block;
  full.bottomLeftCorner(m, m) = -b_block;
  full.bottomRightCorner(m, m) = a_block;
  if (max_abs(full - full.transpose()) > kSymmetryTolerance) {
    throw Error(ErrorCode::kNotSymmetric, "assembled matrix is not symmetric");
  }
  return PairMatrix(a_block, b_block, std::move(full));
}

PairMatrix PairMatrix::identity(std::size_t m) {
  const auto n = static_cast<Eigen::Index>(m);
  return assemble(Matrix::Identity(n, n), Matrix::Zero(n, n));
}

PairMatrix PairMatrix::block_diagonal(const Matrix& s) {
  require_square(s, "diagonal block");
  return assemble(s, Matrix::Zero(s.rows(), s.cols()));
}

double PairMatrix::quadratic_form(std::span<const double> point) const {
  const auto n = static_cast<std::size_t>(full_.rows());
  if (point.size() != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "point dimension does not match pair matrix");
  }
  double total = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    double row = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      row += full_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) *
             point[c];
    }
    total += point[r] * row;
  }
  return total;
}

ExamplePrecision build_example_precision(double a, double b, double c,
                                         double d, PrecisionGrade grade) {
  Matrix a_block(2, 2);
  a_block << a, c, c, b;
  Matrix b_block(2, 2);
  b_block << 0.0, d, -d, 0.0;
  PairMatrix f = PairMatrix::assemble(a_block, b_block);

  Eigen::SelfAdjointEigenSolver<Matrix> eig(f.assembled(),
                                            Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::kDecompositionFailure,
                "eigenvalue computation failed");
  }
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().cwiseAbs().maxCoeff();
  const bool pd = lo > 0.0 && lo > std::numeric_limits<double>::epsilon() * hi;
  if (grade == PrecisionGrade::kSamplerGrade && !pd) {
    throw Error(ErrorCode::kNotPositiveDefinite,
                "example precision matrix has smallest eigenvalue " +
                    std::to_string(lo));
  }
  return ExamplePrecision{std::move(f),
                          std::min(a, b) > std::abs(c) + std::abs(d), pd, lo};
}

// ---------------------------------------------------------------------------
// CovarianceMatrix

CovarianceMatrix CovarianceMatrix::create(const Matrix& entries) {
  require_square(entries, "covariance");
  if (max_abs(entries - entries.transpose()) > kSymmetryTolerance) {
    throw Error(ErrorCode::kNotSymmetric, "covariance is not symmetric");
  }
  for (Eigen::Index j = 0; j < entries.rows(); ++j) {
    if (!(entries(j, j) > 0.0)) {
      throw Error(ErrorCode::kNonPositiveDiagonal,
                  "covariance diagonal entry " + std::to_string(j) +
                      " must be strictly positive");
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(entries, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::kDecompositionFailure,
                "eigenvalue computation failed");
  }
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (lo < -kPsdRelativeTolerance * hi) {
    throw Error(ErrorCode::kNotPositiveSemidefinite,
                "covariance has eigenvalue " + std::to_string(lo));
  }
  return CovarianceMatrix(entries);
}

CovarianceMatrix CovarianceMatrix::identity(std::size_t m) {
  const auto n = static_cast<Eigen::Index>(m);
  return create(Matrix::Identity(n, n));
}

// ---------------------------------------------------------------------------
// Scalar factors and product-form models

double log_scalar_factor(const ScalarFactor& factor, double t) {
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();
  return std::visit(
      [t](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ExpNegHalf>) {
          return -0.5 * t;
        } else if constexpr (std::is_same_v<T, PowerEven>) {
          return t == 0.0 ? kNegInf : 2.0 * f.q * std::log(std::abs(t));
        } else if constexpr (std::is_same_v<T, InversePower>) {
          return t <= -1.0 ? kNegInf : -f.p * std::log1p(t);
        } else {
          return t <= 0.0 ? kNegInf : std::log(t) - std::sqrt(t);
        }
      },
      factor);
}

std::string describe(const ScalarFactor& factor) {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, ExpNegHalf>) {
          return "exp(-t/2)";
        } else if constexpr (std::is_same_v<T, PowerEven>) {
          return "t^" + std::to_string(2 * f.q);
        } else if constexpr (std::is_same_v<T, InversePower>) {
          std::ostringstream os;
          os << "(1+t)^-" << f.p;
          return os.str();
        } else {
          return "t*exp(-sqrt(t))";
        }
      },
      factor);
}

ProductFormModel ProductFormModel::create(std::vector<ProductFactor> factors,
                                          Integrability integrability) {
  if (factors.empty()) {
    throw Error(ErrorCode::kNoFactors, "product-form model has no factors");
  }
  if (integrability != Integrability::kAsserted) {
    throw Error(ErrorCode::kIntegrabilityNotAsserted,
                "product-form model requires an explicit integrability "
                "assertion");
  }
  const std::size_t m = factors.front().matrix.half_dim();
  bool has_decaying = false;
  for (const auto& f : factors) {
    if (f.matrix.half_dim() != m) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "factor matrices differ in dimension");
    }
    if (const auto* pe = std::get_if<PowerEven>(&f.scalar)) {
      if (pe->q < 1) {
        throw Error(ErrorCode::kBadParameter, "PowerEven q must be >= 1");
      }
    } else {
      if (const auto* ip = std::get_if<InversePower>(&f.scalar);
          ip != nullptr && !(ip->p > 0.0)) {
        throw Error(ErrorCode::kBadParameter, "InversePower p must be > 0");
      }
      has_decaying = true;
    }
  }
  if (!has_decaying) {
    throw Error(ErrorCode::kNotIntegrable,
                "a product of PowerEven factors alone is never integrable");
  }
  return ProductFormModel(std::move(factors), m);
}

double ProductFormModel::log_density(std::span<const double> point) const {
  double total = 0.0;
  for (const auto& f : factors_) {
    total += log_scalar_factor(f.scalar, f.matrix.quadratic_form(point));
  }
  return total;
}

// ---------------------------------------------------------------------------
// SampleBatch

SampleBatch::SampleBatch(std::size_t rows, std::size_t cols,
                         std::vector<double> column_major, std::uint64_t seed,
                         std::string model_id, Layout layout)
    : rows_(rows),
      cols_(cols),
      data_(std::move(column_major)),
      seed_(seed),
      model_id_(std::move(model_id)),
      layout_(layout) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "sample batch storage does not match its shape");
  }
  if (layout_ == Layout::kPairs && cols_ % 2 != 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                "paired layout needs an even column count");
  }
  const bool ratios = layout_ == Layout::kRatios;
  for (double v : data_) {
    if (std::isnan(v) || (!ratios && std::isinf(v))) {
      throw Error(ErrorCode::kDomainError,
                  "raw draws must be finite (model " + model_id_ + ")");
    }
  }
}

std::string SampleBatch::column_name(std::size_t j) const {
  switch (layout_) {
    case Layout::kPairs: {
      const std::size_t m = cols_ / 2;
      return (j < m ? "x" : "y") + std::to_string(j % m + 1);
    }
    case Layout::kRatios:
      return "z" + std::to_string(j + 1);
    case Layout::kVector:
      break;
  }
  return "x" + std::to_string(j + 1);
}

SampleBatch SampleBatch::columns(std::size_t first, std::size_t count,
                                 Layout layout) const {
  if (first + count > cols_) {
    throw Error(ErrorCode::kDimensionMismatch, "column range out of bounds");
  }
  std::vector<double> out(data_.begin() + static_cast<std::ptrdiff_t>(first * rows_),
                          data_.begin() + static_cast<std::ptrdiff_t>((first + count) * rows_));
  return SampleBatch(rows_, count, std::move(out), seed_, model_id_, layout);
}

Matrix SampleBatch::sample_covariance() const {
  const auto n = static_cast<Eigen::Index>(rows_);
  const auto k = static_cast<Eigen::Index>(cols_);
  Eigen::Map<const Matrix> x(data_.data(), n, k);
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Matrix centred = x.rowwise() - mean;
  return (centred.transpose() * centred) / static_cast<double>(rows_);
}

}  // namespace cauchyratio
