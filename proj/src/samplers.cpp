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

#include "cauchyratio/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "cauchyratio/simd/kernels.hpp"

namespace cauchyratio {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEigenClamp = 64.0 * std::numeric_limits<double>::epsilon();

// Angle uniform on (-pi, pi].
double uniform_angle(RngStream& rng) {
  return std::numbers::pi - kTwoPi * rng.uniform();
}

// n x p standard normals, column-major, drawn row by row so that a prefix of
// rows does not depend on n.
std::vector<double> standard_normals(std::size_t n, std::size_t p,
                                     RngStream& rng) {
  std::vector<double> z(n * p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < p; ++k) z[k * n + i] = rng.normal();
  }
  return z;
}

// Columns [out_first, out_first + q) of `out` receive L * z[in_first ...],
// where L is q x q and all blocks are column-major with n rows.
void apply_factor(const Matrix& factor, const std::vector<double>& z,
                  std::size_t in_first, std::size_t n, std::vector<double>& out,
                  std::size_t out_first) {
  const auto& k = simd::active_kernels();
  const auto q = static_cast<std::size_t>(factor.rows());
  for (std::size_t r = 0; r < q; ++r) {
    double* dst = out.data() + (out_first + r) * n;
    std::fill(dst, dst + n, 0.0);
    for (std::size_t c = 0; c < q; ++c) {
      const double a = factor(static_cast<Eigen::Index>(r),
                              static_cast<Eigen::Index>(c));
      if (a == 0.0) continue;
      k.axpy(a, z.data() + (in_first + c) * n, dst, n);
    }
  }
}

Eigen::SelfAdjointEigenSolver<Matrix> decompose(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
  if (eig.info() != Eigen::Success ||
      !eig.eigenvalues().allFinite() || !eig.eigenvectors().allFinite()) {
    throw Error(ErrorCode::kDecompositionFailure,
                "symmetric eigendecomposition failed");
  }
  return eig;
}

}  // namespace

void McmcConfig::validate() const {
  if (!(step_scale > 0.0) || !std::isfinite(step_scale)) {
    throw Error(ErrorCode::kBadParameter, "step_scale must be positive");
  }
  if (burn_in < 1000) {
    throw Error(ErrorCode::kBadParameter, "burn_in must be at least 1000");
  }
  if (thin < 1) throw Error(ErrorCode::kBadParameter, "thin must be >= 1");
  if (!(adapt_target >= 0.1 && adapt_target <= 0.6)) {
    throw Error(ErrorCode::kBadParameter,
                "adapt_target must lie in [0.1, 0.6]");
  }
}

GaussianMixtureModel GaussianMixtureModel::create(
    std::vector<double> component_weights,
    std::vector<CovarianceMatrix> covariances) {
  if (component_weights.empty() ||
      component_weights.size() != covariances.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "mixture needs one weight per covariance");
  }
  double sum = 0.0;
  for (double a : component_weights) {
    if (!(a >= 0.0)) {
      throw Error(ErrorCode::kNegativeWeight, "negative mixture weight");
    }
    sum += a;
  }
  if (std::abs(sum - 1.0) > kWeightSumTolerance) {
    throw Error(ErrorCode::kBadSum, "mixture weights do not sum to 1");
  }
  const std::size_t m = covariances.front().dim();
  for (const auto& c : covariances) {
    if (c.dim() != m) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "mixture covariances differ in dimension");
    }
    const auto eig = decompose(c.entries());
    const double lo = eig.eigenvalues().minCoeff();
    if (!(lo > kEigenClamp * eig.eigenvalues().maxCoeff())) {
      throw Error(ErrorCode::kNotPositiveDefinite,
                  "mixture covariances must be positive definite");
    }
  }
  return GaussianMixtureModel(std::move(component_weights),
                              std::move(covariances));
}

Matrix covariance_factor(const CovarianceMatrix& cov) {
  const auto eig = decompose(cov.entries());
  const double hi = eig.eigenvalues().maxCoeff();
  Vector root(eig.eigenvalues().size());
  for (Eigen::Index i = 0; i < root.size(); ++i) {
    const double lambda = eig.eigenvalues()(i);
    root(i) = lambda > kEigenClamp * hi ? std::sqrt(lambda) : 0.0;
  }
  return eig.eigenvectors() * root.asDiagonal();
}

SampleBatch sample_mvn(const CovarianceMatrix& cov, std::size_t count,
                       RngStream& rng) {
  const Matrix factor = covariance_factor(cov);
  const std::size_t m = cov.dim();
  const auto z = standard_normals(count, m, rng);
  std::vector<double> out(count * m);
  apply_factor(factor, z, 0, count, out, 0);
  return SampleBatch(count, m, std::move(out), rng.seed(), "mvn",
                     Layout::kVector);
}

SampleBatch sample_independent_pair_gaussian(const CovarianceMatrix& cov,
                                             std::size_t count,
                                             RngStream& rng) {
  const Matrix factor = covariance_factor(cov);
  const std::size_t m = cov.dim();
  const auto z = standard_normals(count, 2 * m, rng);
  std::vector<double> out(count * 2 * m);
  apply_factor(factor, z, 0, count, out, 0);
  apply_factor(factor, z, m, count, out, m);
  return SampleBatch(count, 2 * m, std::move(out), rng.seed(),
                     "gaussian-pair", Layout::kPairs);
}

SampleBatch sample_precision_pair_gaussian(const PairMatrix& precision,
                                           std::size_t count, RngStream& rng) {
  const auto eig = decompose(precision.assembled());
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().cwiseAbs().maxCoeff();
  if (!(lo > kEigenClamp * hi)) {
    throw Error(ErrorCode::kNotPositiveDefinite,
                "precision matrix has smallest eigenvalue " +
                    std::to_string(lo));
  }
  const Vector inv_root = eig.eigenvalues().cwiseSqrt().cwiseInverse();
  const Matrix factor = eig.eigenvectors() * inv_root.asDiagonal();
  const std::size_t dim = precision.half_dim() * 2;
  const auto z = standard_normals(count, dim, rng);
  std::vector<double> out(count * dim);
  apply_factor(factor, z, 0, count, out, 0);
  return SampleBatch(count, dim, std::move(out), rng.seed(), "precision-pair",
                     Layout::kPairs);
}

double rotinv_poly_radius(int exponent, double u) {
  if (exponent < 2) {
    throw Error(ErrorCode::kBadExponent,
                "density 1/(1+r^2)^n is not normalizable for n < 2");
  }
  if (!(u >= 0.0 && u < 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "radius quantile needs u in [0, 1)");
  }
  // CDF(r) = 1 - (1 + r^2)^(1 - n); expm1 keeps precision for small u.
  const double power = -std::log1p(-u) / static_cast<double>(exponent - 1);
  return std::sqrt(std::expm1(power));
}

SampleBatch sample_rotinv_poly(int exponent, std::size_t count,
                               RngStream& rng) {
  if (exponent < 2) {
    throw Error(ErrorCode::kBadExponent,
                "density 1/(1+r^2)^n is not normalizable for n < 2");
  }
  std::vector<double> out(count * 2);
  for (std::size_t i = 0; i < count; ++i) {
    const double theta = uniform_angle(rng);
    const double r = rotinv_poly_radius(exponent, rng.uniform());
    out[i] = r * std::sin(theta);
    out[count + i] = r * std::cos(theta);
  }
  return SampleBatch(count, 2, std::move(out), rng.seed(),
                     "rotinv-poly-" + std::to_string(exponent), Layout::kPairs);
}

SampleBatch sample_rotinv_exp(std::size_t count, RngStream& rng) {
  std::vector<double> out(count * 2);
  for (std::size_t i = 0; i < count; ++i) {
    const double theta = uniform_angle(rng);
    // Radial density ~ r * r^2 e^-r = r^3 e^-r: Gamma(4, 1), a sum of four
    // unit exponentials.
    double r = 0.0;
    for (int k = 0; k < 4; ++k) r += rng.exponential();
    out[i] = r * std::sin(theta);
    out[count + i] = r * std::cos(theta);
  }
  return SampleBatch(count, 2, std::move(out), rng.seed(), "rotinv-exp",
                     Layout::kPairs);
}

SampleBatch sample_gaussian_mixture(const GaussianMixtureModel& model,
                                    std::size_t count, RngStream& rng) {
  const std::size_t m = model.dim();
  std::vector<Matrix> factors;
  factors.reserve(model.covariances().size());
  for (const auto& c : model.covariances()) {
    factors.push_back(covariance_factor(c));
  }
  std::vector<double> cumulative(model.component_weights().size());
  std::partial_sum(model.component_weights().begin(),
                   model.component_weights().end(), cumulative.begin());

  std::vector<double> out(count * 2 * m);
  Vector z(static_cast<Eigen::Index>(2 * m));
  for (std::size_t i = 0; i < count; ++i) {
    const double u = rng.uniform() * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const auto comp = static_cast<std::size_t>(
        std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                 static_cast<std::ptrdiff_t>(cumulative.size()) - 1));
    for (Eigen::Index k = 0; k < z.size(); ++k) z(k) = rng.normal();
    const auto mm = static_cast<Eigen::Index>(m);
    const Vector x = factors[comp] * z.head(mm);
    const Vector y = factors[comp] * z.tail(mm);
    for (std::size_t j = 0; j < m; ++j) {
      out[j * count + i] = x(static_cast<Eigen::Index>(j));
      out[(m + j) * count + i] = y(static_cast<Eigen::Index>(j));
    }
  }
  return SampleBatch(count, 2 * m, std::move(out), rng.seed(),
                     "gaussian-mixture", Layout::kPairs);
}

ChainDraws sample_product_form(const ProductFormModel& model,
                               std::size_t count, const McmcConfig& cfg,
                               RngStream& rng) {
  cfg.validate();
  const std::size_t dim = model.dim();

  // Deterministic start off every coordinate axis and diagonal, where
  // PowerEven factors would vanish.
  std::vector<double> state(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    state[k] = 0.1 * static_cast<double>(k + 1) * (k % 2 == 0 ? 1.0 : -1.0);
  }
  double log_p = model.log_density(state);
  if (!std::isfinite(log_p)) {
    throw Error(ErrorCode::kNonFiniteLogDensity,
                "log density is not finite at the chain start");
  }

  std::vector<double> proposal(dim);
  double log_step = std::log(cfg.step_scale);

  auto step = [&](double scale) -> double {
    for (std::size_t k = 0; k < dim; ++k) {
      proposal[k] = state[k] + scale * rng.normal();
    }
    const double log_q = model.log_density(proposal);
    const double log_ratio = log_q - log_p;
    const double accept_prob =
        std::isnan(log_ratio) ? 0.0 : std::min(1.0, std::exp(log_ratio));
    if (rng.uniform() < accept_prob) {
      state.swap(proposal);
      log_p = log_q;
    }
    return accept_prob;
  };

  // Robbins-Monro adaptation of log step size, burn-in only.
  for (std::size_t t = 0; t < cfg.burn_in; ++t) {
    const double a = step(std::exp(log_step));
    const double gain = 1.0 / std::pow(static_cast<double>(t + 1), 0.6);
    log_step += gain * (a - cfg.adapt_target);
  }

  const double scale = std::exp(log_step);
  std::vector<double> out(count * dim);
  double accepted = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t t = 0; t < cfg.thin; ++t) accepted += step(scale);
    for (std::size_t k = 0; k < dim; ++k) out[k * count + i] = state[k];
  }
  const double iterations = static_cast<double>(count * cfg.thin);
  const double rate = count == 0 ? 0.0 : accepted / iterations;
  if (count > 0 && rate < 0.01) {
    throw Error(ErrorCode::kDegenerateChain,
                "acceptance rate " + std::to_string(rate) +
                    " after adaptation");
  }
  return ChainDraws{SampleBatch(count, dim, std::move(out), rng.seed(),
                                "product-form", Layout::kPairs),
                    rate, scale};
}

}  // namespace cauchyratio
