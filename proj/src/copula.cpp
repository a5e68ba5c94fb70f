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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "cauchyratio/gof.hpp"
#include "cauchyratio/transforms.hpp"

namespace cauchyratio {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPiSquared = kPi * kPi;
constexpr unsigned kLogSpaceAbove = 20;
constexpr double kAsinSlackUlps = 4.0;

void require_rho(double rho) {
  if (!(std::abs(rho) < 1.0)) {
    throw Error(ErrorCode::kBadParameter, "rho must lie in (-1, 1)");
  }
}

// cos of the angle difference of the two pairs: (1 + z1 z2) / (|1,z1| |1,z2|).
double pair_cosine(double z1, double z2) {
  const double s = (1.0 + z1 * z2) / (std::hypot(1.0, z1) * std::hypot(1.0, z2));
  return std::clamp(s, -1.0, 1.0);
}

}  // namespace

void CopulaParams::validate() const {
  require_rho(rho);
  if (!(series_tol > 0.0)) {
    throw Error(ErrorCode::kBadParameter, "series_tol must be positive");
  }
  if (max_terms < 1) {
    throw Error(ErrorCode::kBadParameter, "max_terms must be positive");
  }
}

double component_constant(unsigned n) {
  if (n > kLogSpaceAbove) {
    const double dn = n;
    return std::exp(dn * std::log(4.0) - std::lgamma(2.0 * dn + 1.0) +
                    2.0 * std::lgamma(dn + 1.0));
  }
  // C(2k+2, k+1) = C(2k, k) * 2(2k+1)/(k+1).
  double k_n = 1.0;
  for (unsigned k = 0; k < n; ++k) {
    k_n *= 2.0 * (k + 1.0) / (2.0 * k + 1.0);
  }
  return k_n;
}

double component_pdf(unsigned n, double z1, double z2) {
  const double p = (1.0 + z1 * z1) * (1.0 + z2 * z2);
  if (n == 0) return 1.0 / (kPiSquared * p);
  const double s = pair_cosine(z1, z2);
  if (s == 0.0) return 0.0;
  if (n > kLogSpaceAbove) {
    const double dn = n;
    const double log_k = dn * std::log(4.0) - std::lgamma(2.0 * dn + 1.0) +
                         2.0 * std::lgamma(dn + 1.0);
    const double log_p = std::log1p(z1 * z1) + std::log1p(z2 * z2);
    return std::exp(log_k + 2.0 * dn * std::log(std::abs(s)) -
                    std::log(kPiSquared) - log_p);
  }
  return component_constant(n) * std::pow(s * s, n) / (kPiSquared * p);
}

double mixture_weight(double rho, unsigned n) {
  require_rho(rho);
  return (1.0 - rho * rho) * std::pow(rho * rho, n);
}

SeriesValue series_evaluate(const CopulaParams& params, double z1, double z2) {
  params.validate();
  const double rho2 = params.rho * params.rho;
  const double s = pair_cosine(z1, z2);
  const double g = s * s;

  double term = mixture_weight(params.rho, 0) * component_pdf(0, z1, z2);
  double sum = term;
  for (std::size_t n = 0;; ++n) {
    // Later term ratios are bounded by q_n = rho^2 2(n+1)/(2n+1) (times g <= 1),
    // which decreases in n, so the tail after t_n is at most t_n q/(1-q).
    const double dn = static_cast<double>(n);
    const double q = rho2 * 2.0 * (dn + 1.0) / (2.0 * dn + 1.0);
    if (term == 0.0 || (q < 1.0 && term * q / (1.0 - q) < params.series_tol)) {
      return SeriesValue{sum, n + 1};
    }
    if (n + 1 >= params.max_terms) {
      throw Error(ErrorCode::kNoConvergence,
                  "copula series did not meet its tail bound within max_terms");
    }
    term *= rho2 * 2.0 * (dn + 1.0) / (2.0 * dn + 1.0) * g;
    sum += term;
  }
}

double series_pdf(const CopulaParams& params, double z1, double z2) {
  return series_evaluate(params, z1, z2).value;
}

double closed_form_pdf(double rho, double z1, double z2) {
  require_rho(rho);
  const double rho2 = rho * rho;
  const double a1 = 1.0 + z1 * z1;
  const double a2 = 1.0 + z2 * z2;
  const double t = 1.0 + z1 * z2;
  // (1+z1^2)(1+z2^2) - rho^2 (1+z1 z2)^2, rewritten without cancellation via
  // (1+z1^2)(1+z2^2) - (1+z1 z2)^2 = (z1 - z2)^2.
  const double dz = z1 - z2;
  const double d = (1.0 - rho2) * (a1 * a2) + rho2 * (dz * dz);
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw Error(ErrorCode::kDomainError, "closed form denominator is not positive");
  }
  double arg = rho * t / (std::sqrt(a1) * std::sqrt(a2));
  const double slack = kAsinSlackUlps * std::numeric_limits<double>::epsilon();
  if (std::abs(arg) > 1.0) {
    if (std::abs(arg) - 1.0 > slack) {
      throw Error(ErrorCode::kDomainError, "asin argument outside [-1, 1]");
    }
    arg = std::copysign(1.0, arg);
  }
  const double scale = (1.0 - rho2) / kPiSquared;
  return scale * (1.0 / d + rho * t * std::asin(arg) / (d * std::sqrt(d)));
}

double radial_moment_integral(unsigned n, double c, double z) {
  if (!(c > 0.0)) {
    throw Error(ErrorCode::kBadParameter, "c must be positive");
  }
  if (n % 2 != 0) return 0.0;
  const double k1 = n / 2 + 1.0;
  return std::tgamma(k1) * std::pow(2.0 * c / (1.0 + z * z), k1);
}

MassEstimate component_mass(unsigned n, double half_width) {
  using Rule = boost::math::quadrature::gauss<double, 10>;
  if (!(half_width > 1.0)) {
    throw Error(ErrorCode::kBadParameter, "half_width must exceed 1");
  }
  // Unit panels: the integrand's poles sit at distance 1 from the real axis,
  // so 10-point rules on unit panels converge to ~1e-12.
  const auto panels = static_cast<std::size_t>(std::ceil(2.0 * half_width));
  const double width = 2.0 * half_width / static_cast<double>(panels);
  std::vector<double> nodes;
  std::vector<double> weights;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = -half_width + (p + 0.5) * width;
    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    for (std::size_t k = 0; k < x.size(); ++k) {
      const double scale = 0.5 * width;
      if (x[k] == 0.0) {
        nodes.push_back(mid);
        weights.push_back(w[k] * scale);
        continue;
      }
      nodes.push_back(mid - x[k] * scale);
      weights.push_back(w[k] * scale);
      nodes.push_back(mid + x[k] * scale);
      weights.push_back(w[k] * scale);
    }
  }
  double inner = 0.0;
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    double row = 0.0;
    for (std::size_t b = 0; b < nodes.size(); ++b) {
      row += weights[b] * component_pdf(n, nodes[a], nodes[b]);
    }
    inner += weights[a] * row;
  }
  const double e = std::atan(1.0 / half_width) / kPi;
  const double tail = 4.0 * e - 4.0 * component_constant(n) * e * e;
  return MassEstimate{inner, tail};
}

SampleBatch sample_rho_copula(const CopulaParams& params, std::size_t count,
                              RngStream& rng) {
  params.validate();
  Matrix corr(2, 2);
  corr << 1.0, params.rho, params.rho, 1.0;
  const auto pairs = sample_independent_pair_gaussian(
      CovarianceMatrix::create(corr), count, rng);
  std::vector<double> out;
  out.reserve(2 * count);
  for (std::size_t j = 0; j < 2; ++j) {
    const auto r = pair_ratio(pairs, j);
    if (!r.nan_rows.empty()) {
      throw Error(ErrorCode::kDomainError, "0/0 ratio in copula draws");
    }
    out.insert(out.end(), r.values.begin(), r.values.end());
  }
  return SampleBatch(count, 2, std::move(out), rng.seed(), "rho-copula",
                     Layout::kRatios);
}

ProductFormModel component_model(unsigned n) {
  std::vector<ProductFactor> factors;
  if (n > 0) {
    Matrix swap(2, 2);
    swap << 0.0, 1.0, 1.0, 0.0;
    // Quadratic form 2(e1 e2 + f1 f2); its 2n-th power is the weight.
    factors.push_back(ProductFactor{PairMatrix::block_diagonal(swap),
                                    PowerEven{static_cast<int>(n)}});
  }
  factors.push_back(ProductFactor{PairMatrix::identity(2), ExpNegHalf{}});
  return ProductFormModel::create(std::move(factors), Integrability::kAsserted);
}

ChainDraws sample_component(unsigned n, std::size_t count,
                            const McmcConfig& cfg, RngStream& rng) {
  const auto chain = sample_product_form(component_model(n), count, cfg, rng);
  std::vector<double> out;
  out.reserve(2 * count);
  for (std::size_t j = 0; j < 2; ++j) {
    const auto r = pair_ratio(chain.draws, j);
    if (!r.nan_rows.empty()) {
      throw Error(ErrorCode::kDomainError, "0/0 ratio in component draws");
    }
    out.insert(out.end(), r.values.begin(), r.values.end());
  }
  return ChainDraws{
      SampleBatch(count, 2, std::move(out), rng.seed(),
                  "copula-component-" + std::to_string(n), Layout::kRatios),
      chain.acceptance_rate, chain.step_scale};
}

std::vector<double> quantile_cell_probabilities(const JointDensity& density,
                                                std::size_t bins) {
  using Rule = boost::math::quadrature::gauss<double, 10>;
  if (bins < 1) throw Error(ErrorCode::kBadParameter, "bins must be positive");
  // z = tan(pi (u - 1/2)), dz = pi (1 + z^2) du.
  auto in_u = [&density](double u1, double u2) {
    const double z1 = std::tan(kPi * (u1 - 0.5));
    const double z2 = std::tan(kPi * (u2 - 0.5));
    return density(z1, z2) * kPiSquared * (1.0 + z1 * z1) * (1.0 + z2 * z2);
  };
  const double width = 1.0 / static_cast<double>(bins);
  std::vector<double> probs(bins * bins);
  for (std::size_t a = 0; a < bins; ++a) {
    const double lo1 = a * width;
    for (std::size_t b = 0; b < bins; ++b) {
      const double lo2 = b * width;
      probs[a * bins + b] = Rule::integrate(
          [&](double u1) {
            return Rule::integrate([&](double u2) { return in_u(u1, u2); },
                                   lo2, lo2 + width);
          },
          lo1, lo1 + width);
    }
  }
  return probs;
}

HistogramCheck quantile_histogram_check(std::span<const double> z1,
                                        std::span<const double> z2,
                                        const std::vector<double>& expected,
                                        std::size_t bins, double sigma_limit) {
  if (z1.size() != z2.size() || expected.size() != bins * bins) {
    throw Error(ErrorCode::kDimensionMismatch,
                "histogram check inputs disagree in size");
  }
  if (z1.empty()) throw Error(ErrorCode::kEmptySample, "no draws to bin");
  auto cell_of = [bins](double z) {
    const double u = cauchy_cdf(z);
    const auto c = static_cast<std::size_t>(u * static_cast<double>(bins));
    return std::min(c, bins - 1);
  };
  std::vector<double> counts(bins * bins, 0.0);
  for (std::size_t i = 0; i < z1.size(); ++i) {
    counts[cell_of(z1[i]) * bins + cell_of(z2[i])] += 1.0;
  }
  const double n = static_cast<double>(z1.size());
  HistogramCheck check;
  check.sample_size = z1.size();
  check.sigma_limit = sigma_limit;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    const double p = expected[c];
    const double se = std::sqrt(p * (1.0 - p) / n);
    const double z = std::abs(counts[c] / n - p) / se;
    if (z > check.max_abs_z) {
      check.max_abs_z = z;
      check.worst_cell = c;
    }
  }
  check.passed = check.max_abs_z <= sigma_limit;
  return check;
}

}  // namespace cauchyratio
