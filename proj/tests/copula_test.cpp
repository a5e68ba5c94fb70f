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

#include "cauchyratio/copula.hpp"

#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "cauchyratio/gof.hpp"
#include "cauchyratio/rng.hpp"
#include "test_util.hpp"

namespace cauchyratio {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPi2 = kPi * kPi;

// Direct partial sum of the mixture at (0, 0): (1 - rho^2)/pi^2 * sum rho^2n 4^n / C(2n, n).
double series_at_origin_oracle(double rho) {
  long double sum = 0.0L;
  long double central = 1.0L;  // C(2n, n)
  long double four = 1.0L;
  long double r2n = 1.0L;
  for (int n = 0; n < 400; ++n) {
    sum += r2n * four / central;
    central *= 2.0L * (2 * n + 1) / (n + 1);
    four *= 4.0L;
    r2n *= static_cast<long double>(rho) * rho;
  }
  return static_cast<double>((1.0L - rho * rho) * sum) / kPi2;
}

// Adaptive Gauss-Kronrod on the whole line.
double radial_quadrature(unsigned n, double c, double z) {
  auto f = [&](double v) {
    return std::abs(v) * std::pow(v, n) * std::exp(-v * v * (1 + z * z) / (2 * c));
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 15,
      1e-14);
}

TEST(CopulaParams, Validation) {
  CopulaParams p;
  p.rho = 1.0;
  EXPECT_ERROR_CODE(p.validate(), ErrorCode::kBadParameter);
  p.rho = 0.5;
  p.series_tol = 0.0;
  EXPECT_ERROR_CODE(p.validate(), ErrorCode::kBadParameter);
}

TEST(ComponentPdf, Examples) {
  EXPECT_NEAR(component_pdf(0, 0, 0), 1.0 / kPi2, 1e-17);
  EXPECT_NEAR(component_pdf(1, 0, 0), 2.0 / kPi2, 1e-16);
  for (unsigned n : {0u, 1u, 5u, 30u}) EXPECT_LT(component_pdf(n, 1e8, 0.0), 1e-15);
}

TEST(ComponentPdf, LogSpaceContinuity) {
  // n around the switch to log space agrees with the recurrence for the constant.
  double k = 1.0;
  for (unsigned n = 0; n <= 40; ++n) {
    EXPECT_NEAR(component_constant(n), k, 1e-12 * k) << n;
    k *= 2.0 * (n + 1) / (2.0 * n + 1);
  }
}

TEST(ComponentPdf, CauchySchwarzBound) {
  RngStream rng(1, 0);
  for (int rep = 0; rep < 20000; ++rep) {
    const double z1 = 5 * rng.normal();
    const double z2 = 5 * rng.normal();
    const auto n = static_cast<unsigned>(rng.below(40));
    const double bound = component_constant(n) / kPi2 / ((1 + z1 * z1) * (1 + z2 * z2));
    ASSERT_LE(component_pdf(n, z1, z2), bound * (1 + 1e-12)) << n << " " << z1 << " " << z2;
  }
}

TEST(MixtureWeight, Values) {
  EXPECT_EQ(mixture_weight(0.0, 0), 1.0);
  EXPECT_EQ(mixture_weight(0.0, 3), 0.0);
  EXPECT_DOUBLE_EQ(mixture_weight(0.5, 1), 0.1875);
  double sum = 0.0;
  for (unsigned n = 0; n < 2000; ++n) sum += mixture_weight(0.9, n);
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(SeriesPdf, IndependenceLimit) {
  CopulaParams p;
  p.rho = 0.0;
  const auto v = series_evaluate(p, 0.3, -2.0);
  EXPECT_EQ(v.value, component_pdf(0, 0.3, -2.0));
  EXPECT_EQ(v.terms, 1u);
}

TEST(SeriesPdf, OriginMatchesDirectSum) {
  CopulaParams p;
  p.rho = 0.5;
  // The default tolerance bounds the truncated tail.
  EXPECT_NEAR(series_pdf(p, 0, 0), series_at_origin_oracle(0.5), p.series_tol);
  p.series_tol = 1e-16;
  EXPECT_NEAR(series_pdf(p, 0, 0), series_at_origin_oracle(0.5), 1e-14);
  EXPECT_NEAR(series_pdf(p, 0, 0), 0.13195056672132622, 1e-14);
}

TEST(SeriesPdf, Symmetric) {
  RngStream rng(2, 0);
  CopulaParams p;
  for (int rep = 0; rep < 2000; ++rep) {
    p.rho = 0.95 * (2 * rng.uniform() - 1);
    const double z1 = 3 * rng.normal();
    const double z2 = 3 * rng.normal();
    ASSERT_NEAR(series_pdf(p, z1, z2), series_pdf(p, z2, z1), 1e-14);
  }
}

TEST(SeriesPdf, NoConvergenceWhenCapped) {
  CopulaParams p;
  p.rho = 0.99;
  p.max_terms = 3;
  EXPECT_ERROR_CODE(series_pdf(p, 0.5, 0.5), ErrorCode::kNoConvergence);
}

TEST(ClosedForm, Examples) {
  EXPECT_NEAR(closed_form_pdf(0.0, 0.4, -1.3), 1.0 / kPi2 / ((1 + 0.16) * (1 + 1.69)), 1e-16);
  for (double rho : {0.1, 0.5, 0.9, -0.7}) {
    const double expected = (1 + rho * std::asin(rho) / std::sqrt(1 - rho * rho)) / kPi2;
    EXPECT_NEAR(closed_form_pdf(rho, 0, 0), expected, 1e-15) << rho;
  }
  CopulaParams p;
  p.rho = 0.5;
  EXPECT_NEAR(closed_form_pdf(0.5, 1, -1), series_pdf(p, 1, -1), 1e-10);
}

TEST(ClosedForm, MatchesSeriesOnGrid) {
  const double grid[] = {-3, -1, 0, 1, 3};
  for (double rho : {0.1, 0.5, 0.9}) {
    CopulaParams p;
    p.rho = rho;
    for (double z1 : grid) {
      for (double z2 : grid) {
        EXPECT_LT(std::abs(series_pdf(p, z1, z2) - closed_form_pdf(rho, z1, z2)), 1e-10)
            << rho << " " << z1 << " " << z2;
      }
    }
  }
}

TEST(ClosedForm, ExactlySymmetric) {
  RngStream rng(3, 0);
  for (int rep = 0; rep < 20000; ++rep) {
    const double rho = 0.999 * (2 * rng.uniform() - 1);
    const double z1 = 10 * rng.normal();
    const double z2 = 10 * rng.normal();
    ASSERT_EQ(closed_form_pdf(rho, z1, z2), closed_form_pdf(rho, z2, z1));
  }
}

TEST(ClosedForm, FiniteOnDiagonalAtHighCorrelation) {
  // Along z1 = z2 the asin argument approaches rho; no spurious DomainError.
  for (double z : {0.0, 1.0, 1e3, 1e8}) {
    EXPECT_TRUE(std::isfinite(closed_form_pdf(0.999999, z, z))) << z;
  }
}

TEST(RadialMoment, Examples) {
  EXPECT_NEAR(radial_moment_integral(0, 1, 0), 2.0, 1e-15);
  EXPECT_NEAR(radial_moment_integral(2, 1, 0), 4.0, 1e-15);
  EXPECT_EQ(radial_moment_integral(3, 1, 0.5), 0.0);
  EXPECT_ERROR_CODE(radial_moment_integral(0, 0.0, 0), ErrorCode::kBadParameter);
}

TEST(RadialMoment, MatchesQuadrature) {
  for (unsigned n : {0u, 2u, 4u}) {
    for (double c : {0.5, 1.0, 2.0}) {
      for (double z : {0.0, 1.0}) {
        EXPECT_NEAR(radial_moment_integral(n, c, z), radial_quadrature(n, c, z), 1e-8)
            << n << " " << c << " " << z;
      }
    }
  }
}

TEST(ComponentMass, Normalized) {
  for (unsigned n = 0; n <= 3; ++n) {
    EXPECT_NEAR(component_mass(n).total(), 1.0, 1e-4) << n;
  }
}

TEST(QuantileCells, SumToOne) {
  const auto cells = quantile_cell_probabilities(
      [](double a, double b) { return closed_form_pdf(0.6, a, b); }, 10);
  double sum = 0.0;
  for (double c : cells) sum += c;
  EXPECT_NEAR(sum, 1.0, 1e-8);
  const auto indep = quantile_cell_probabilities(
      [](double a, double b) { return component_pdf(0, a, b); }, 10);
  for (double c : indep) EXPECT_NEAR(c, 0.01, 1e-10);
}

TEST(SampleRhoCopula, MarginalsAndSum) {
  CopulaParams p;
  p.rho = 0.6;
  RngStream rng(4, 0);
  const auto z = sample_rho_copula(p, 200000, rng);
  ASSERT_EQ(z.cols(), 2u);
  EXPECT_GT(ks_test(z.col(0), cauchy_cdf, "z1").p_value, 1e-3);
  EXPECT_GT(ks_test(z.col(1), cauchy_cdf, "z2").p_value, 1e-3);
  std::vector<double> mix(z.rows());
  for (std::size_t i = 0; i < z.rows(); ++i) mix[i] = 0.5 * z(i, 0) + 0.5 * z(i, 1);
  EXPECT_GT(ks_test(mix, cauchy_cdf, "mix").p_value, 1e-3);
  const auto cells = quantile_cell_probabilities(
      [](double a, double b) { return closed_form_pdf(0.6, a, b); }, 20);
  EXPECT_TRUE(quantile_histogram_check(z.col(0), z.col(1), cells, 20).passed);
}

TEST(SampleRhoCopula, IndependenceAtZero) {
  CopulaParams p;
  p.rho = 0.0;
  RngStream rng(5, 0);
  const auto z = sample_rho_copula(p, 100000, rng);
  EXPECT_GT(chi2_independence_test(z.col(0), z.col(1), 10, "indep").p_value, 1e-3);
}

TEST(SampleComponent, ZeroMatchesIndependentCopula) {
  McmcConfig cfg;
  cfg.thin = 50;
  RngStream rng(6, 0);
  const auto c = sample_component(0, 50000, cfg, rng);
  CopulaParams p;
  p.rho = 0.0;
  RngStream rng2(6, 1);
  const auto z = sample_rho_copula(p, 50000, rng2);
  EXPECT_GT(ks_two_sample(c.draws.col(0), z.col(0), "c1").p_value, 1e-3);
  EXPECT_GT(ks_two_sample(c.draws.col(1), z.col(1), "c2").p_value, 1e-3);
}

TEST(SampleComponent, HistogramMatchesDensity) {
  McmcConfig cfg;
  cfg.thin = 100;
  RngStream rng(7, 0);
  const auto chain = sample_component(1, 100000, cfg, rng);
  const auto& c = chain.draws;
  EXPECT_GT(ks_test(c.col(0), cauchy_cdf, "c1").p_value, 1e-3);
  EXPECT_GT(ks_test(c.col(1), cauchy_cdf, "c2").p_value, 1e-3);
  const auto cells = quantile_cell_probabilities(
      [](double a, double b) { return component_pdf(1, a, b); }, 20);
  const auto check = quantile_histogram_check(c.col(0), c.col(1), cells, 20);
  EXPECT_TRUE(check.passed) << check.max_abs_z;
}

}  // namespace
}  // namespace cauchyratio
