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

#ifndef CAUCHYRATIO_SAMPLERS_HPP_
#define CAUCHYRATIO_SAMPLERS_HPP_

#include <cstddef>
#include <vector>

#include "cauchyratio/core_types.hpp"

namespace cauchyratio {

/// Random-walk Metropolis settings. The step scale is adapted toward
/// adapt_target during burn-in only and frozen afterwards.
struct McmcConfig {
  double step_scale = 0.5;
  std::size_t burn_in = 10000;
  std::size_t thin = 10;
  double adapt_target = 0.3;

  void validate() const;
};

/// Scale mixture of independent Gaussian pairs: N ~ alpha, then X and Y
/// independent N(0, Sigma_N).
class GaussianMixtureModel {
 public:
  static GaussianMixtureModel create(std::vector<double> component_weights,
                                     std::vector<CovarianceMatrix> covariances);

  std::size_t dim() const noexcept { return covariances_.front().dim(); }
  std::span<const double> component_weights() const noexcept {
    return weights_;
  }
  const std::vector<CovarianceMatrix>& covariances() const noexcept {
    return covariances_;
  }

 private:
  GaussianMixtureModel(std::vector<double> w, std::vector<CovarianceMatrix> c)
      : weights_(std::move(w)), covariances_(std::move(c)) {}
  std::vector<double> weights_;
  std::vector<CovarianceMatrix> covariances_;
};

struct ChainDraws {
  SampleBatch draws;
  double acceptance_rate = 0.0;  // post-burn-in
  double step_scale = 0.0;       // frozen value after adaptation
};

// Square root L with L L^T = cov, from the eigendecomposition so rank
// deficient matrices work. Eigenvalues below rounding level (including
// negative ones) are clamped to zero.
Matrix covariance_factor(const CovarianceMatrix& cov);

SampleBatch sample_mvn(const CovarianceMatrix& cov, std::size_t count,
                       RngStream& rng);

// Rows are (X, Y) with X, Y independent N(0, cov).
SampleBatch sample_independent_pair_gaussian(const CovarianceMatrix& cov,
                                             std::size_t count,
                                             RngStream& rng);

// Draws from N(0, F^-1) on R^{2m}; F must be strictly positive definite.
SampleBatch sample_precision_pair_gaussian(const PairMatrix& precision,
                                           std::size_t count, RngStream& rng);

// Inverse CDF of the radius under density ~ 1/(1+x^2+y^2)^n.
double rotinv_poly_radius(int exponent, double u);

// Exact draws from the planar density ~ 1/(1+x^2+y^2)^exponent, exponent >= 2.
SampleBatch sample_rotinv_poly(int exponent, std::size_t count,
                               RngStream& rng);

// Exact draws from the planar density ~ (x^2+y^2) exp(-sqrt(x^2+y^2)).
SampleBatch sample_rotinv_exp(std::size_t count, RngStream& rng);

SampleBatch sample_gaussian_mixture(const GaussianMixtureModel& model,
                                    std::size_t count, RngStream& rng);

ChainDraws sample_product_form(const ProductFormModel& model,
                               std::size_t count, const McmcConfig& cfg,
                               RngStream& rng);

}  // namespace cauchyratio

#endif  // CAUCHYRATIO_SAMPLERS_HPP_
