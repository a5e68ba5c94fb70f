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

#ifndef CAUCHYRATIO_COPULA_HPP_
#define CAUCHYRATIO_COPULA_HPP_

#include <cstddef>
#include <functional>
#include <vector>

#include "cauchyratio/core_types.hpp"
#include "cauchyratio/samplers.hpp"

namespace cauchyratio {

/// Bivariate density of (X1/Y1, X2/Y2) where X and Y are independent
/// bivariate normals with unit variances and correlation rho. It is the
/// geometric mixture sum_n (1 - rho^2) rho^{2n} f_n of Cauchy copulas f_n.
struct CopulaParams {
  double rho = 0.0;
  double series_tol = 1e-12;
  std::size_t max_terms = 10000;

  void validate() const;
};

// 4^n / C(2n, n).
double component_constant(unsigned n);

// f_n(z1, z2) = 4^n/C(2n,n) / pi^2 * (1 + z1 z2)^{2n} / ((1+z1^2)(1+z2^2))^{n+1}
double component_pdf(unsigned n, double z1, double z2);

// (1 - rho^2) rho^{2n}
double mixture_weight(double rho, unsigned n);

struct SeriesValue {
  double value = 0.0;
  std::size_t terms = 0;
};

// Truncated mixture sum with a rigorous geometric tail bound.
SeriesValue series_evaluate(const CopulaParams& params, double z1, double z2);
double series_pdf(const CopulaParams& params, double z1, double z2);

// Closed form of the mixture.
double closed_form_pdf(double rho, double z1, double z2);

// Integral over R of |v| v^n exp(-v^2 (1 + z^2) / (2c)); zero for odd n.
double radial_moment_integral(unsigned n, double c, double z);

// Total mass of f_n: composite Gauss-Legendre over [-h, h]^2 plus the
// analytic mass outside. In angle coordinates f_n is K_n cos^{2n}(phi1 - phi2)
// with uniform marginals, so the outside mass is 4e - 4 K_n e^2 + O(n e^4)
// with e = atan(1/h)/pi.
struct MassEstimate {
  double inner = 0.0;
  double tail = 0.0;
  double total() const { return inner + tail; }
};
MassEstimate component_mass(unsigned n, double half_width = 50.0);

// Exact draws of (Z1, Z2); n x 2 batch in the ratio layout.
SampleBatch sample_rho_copula(const CopulaParams& params, std::size_t count,
                              RngStream& rng);

// Product-form model on (e1, e2, f1, f2) with density
// ~ (e1 e2 + f1 f2)^{2n} exp(-|(e, f)|^2 / 2).
ProductFormModel component_model(unsigned n);

// MCMC draws of (E1/F1, E2/F2) from component_model(n).
ChainDraws sample_component(unsigned n, std::size_t count,
                            const McmcConfig& cfg, RngStream& rng);

// Probability of each cell of a bins x bins grid cut at standard Cauchy
// quantiles k/bins, row-major in (z1 cell, z2 cell). Integrates the density
// in probability-integral coordinates with Gauss-Legendre per cell.
using JointDensity = std::function<double(double, double)>;
std::vector<double> quantile_cell_probabilities(const JointDensity& density,
                                                std::size_t bins);

struct HistogramCheck {
  double max_abs_z = 0.0;  // worst |observed - expected| / MC standard error
  std::size_t worst_cell = 0;
  std::size_t sample_size = 0;
  double sigma_limit = 4.0;
  bool passed = false;
};

// Compares empirical cell frequencies of (z1, z2) draws against expected cell
// probabilities; each cell must lie within sigma_limit binomial standard
// errors.
HistogramCheck quantile_histogram_check(std::span<const double> z1,
                                        std::span<const double> z2,
                                        const std::vector<double>& expected,
                                        std::size_t bins,
                                        double sigma_limit = 4.0);

}  // namespace cauchyratio

#endif  // CAUCHYRATIO_COPULA_HPP_
