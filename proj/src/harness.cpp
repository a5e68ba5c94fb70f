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

#include "cauchyratio/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <set>
#include <thread>

#include "cauchyratio/copula.hpp"
#include "cauchyratio/samplers.hpp"
#include "cauchyratio/transforms.hpp"

namespace cauchyratio {
namespace {

constexpr double kPi = std::numbers::pi;

// Records every parameter read, with the default applied, so reports echo
// the fully resolved configuration.
class Params {
 public:
  Params(const nlohmann::json& given, const std::vector<std::string>& allowed)
      : given_(given) {
    for (const auto& item : given_.items()) {
      if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
        throw Error(ErrorCode::kConfigError,
                    "unknown parameter '" + item.key() + "'");
      }
    }
  }

  double number(const std::string& key, double fallback) {
    const double v = read<double>(key, fallback);
    resolved_[key] = v;
    return v;
  }

  long integer(const std::string& key, long fallback) {
    const long v = read<long>(key, fallback);
    resolved_[key] = v;
    return v;
  }

  std::vector<double> numbers(const std::string& key,
                              std::vector<double> fallback) {
    auto v = read<std::vector<double>>(key, std::move(fallback));
    resolved_[key] = v;
    return v;
  }

  // Square matrix given as a flat row-major array.
  Matrix matrix(const std::string& key, const Matrix& fallback) {
    Matrix m = fallback;
    if (given_.contains(key)) m = to_matrix(key, read<std::vector<double>>(key, {}));
    resolved_[key] = flatten(m);
    return m;
  }

  std::vector<Matrix> matrices(const std::string& key,
                               const std::vector<Matrix>& fallback) {
    std::vector<Matrix> out = fallback;
    if (given_.contains(key)) {
      out.clear();
      for (const auto& flat : read<std::vector<std::vector<double>>>(key, {})) {
        out.push_back(to_matrix(key, flat));
      }
    }
    nlohmann::json echo = nlohmann::json::array();
    for (const auto& m : out) echo.push_back(flatten(m));
    resolved_[key] = echo;
    return out;
  }

  McmcConfig mcmc(const McmcConfig& fallback) {
    McmcConfig cfg;
    cfg.burn_in = static_cast<std::size_t>(
        integer("burn_in", static_cast<long>(fallback.burn_in)));
    cfg.thin = static_cast<std::size_t>(
        integer("thin", static_cast<long>(fallback.thin)));
    cfg.step_scale = number("step_scale", fallback.step_scale);
    cfg.adapt_target = number("adapt_target", fallback.adapt_target);
    try {
      cfg.validate();
    } catch (const Error& e) {
      throw Error(ErrorCode::kConfigError, e.what());
    }
    return cfg;
  }

  const nlohmann::json& resolved() const { return resolved_; }

 private:
  template <typename T>
  T read(const std::string& key, T fallback) const {
    if (!given_.contains(key)) return fallback;
    try {
      return given_.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kConfigError,
                  "bad value for parameter '" + key + "': " + e.what());
    }
  }

  static Matrix to_matrix(const std::string& key, const std::vector<double>& flat) {
    const auto dim = static_cast<std::size_t>(
        std::llround(std::sqrt(static_cast<double>(flat.size()))));
    if (dim == 0 || dim * dim != flat.size()) {
      throw Error(ErrorCode::kConfigError,
                  "parameter '" + key + "' is not a square row-major matrix");
    }
    return matrix_from_row_major(flat, dim);
  }

  static std::vector<double> flatten(const Matrix& m) {
    std::vector<double> flat;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) flat.push_back(m(r, c));
    }
    return flat;
  }

  nlohmann::json given_;
  nlohmann::json resolved_ = nlohmann::json::object();
};

Matrix mat(std::size_t dim, std::initializer_list<double> row_major) {
  return matrix_from_row_major(std::vector<double>(row_major), dim);
}

// Defaults shared by several experiments.
Matrix default_cov3() { return mat(3, {1.0, 0.5, 0.2, 0.5, 1.0, 0.3, 0.2, 0.3, 1.0}); }
const std::vector<double> kDefaultWeights3{0.2, 0.3, 0.5};
const std::vector<double> kEvenWeights2{0.5, 0.5};

McmcConfig chain_defaults(std::size_t thin) {
  McmcConfig cfg;
  cfg.burn_in = 10000;
  cfg.thin = thin;
  return cfg;
}

class Context {
 public:
  Context(const ExperimentSpec& spec, const std::vector<std::string>& keys,
          std::size_t default_samples, std::uint64_t stream, RunReport& report)
      : spec_(spec),
        params(spec.params, keys),
        samples(spec.sample_count.value_or(default_samples)),
        rng(spec.seed, stream),
        report_(report) {}

  // Weights: explicit, Dirichlet(1,...,1) drawn from a stream independent of
  // the samples, or the experiment default (uniform if its length is off).
  WeightVector weights(std::size_t m, const std::vector<double>& fallback) {
    WeightVector w = WeightVector::uniform(m);
    if (spec_.weights) {
      try {
        w = WeightVector::validate(*spec_.weights);
      } catch (const Error& e) {
        throw Error(ErrorCode::kConfigError, e.what());
      }
    } else if (spec_.dirichlet_weights) {
      RngStream wrng = rng.substream(0xD1A1C1E7ULL);
      w = WeightVector::dirichlet(m, wrng);
    } else if (fallback.size() == m) {
      w = WeightVector::validate(fallback);
    }
    if (w.size() != m) {
      throw Error(ErrorCode::kConfigError,
                  "experiment needs " + std::to_string(m) + " weights");
    }
    weights_echo_ = std::vector<double>(w.values().begin(), w.values().end());
    return w;
  }

  void ks(std::span<const double> values, const Cdf& cdf, std::string name) {
    report_.tests.push_back(ks_test(values, cdf, std::move(name), spec_.threshold));
  }
  void ks_cauchy(std::span<const double> values, std::string name) {
    ks(values, cauchy_cdf, std::move(name));
  }
  void ks_cauchy(const RatioStatistic& r, std::string name) {
    ks_cauchy(r.values, std::move(name));
  }
  void test(GofReport g) { report_.tests.push_back(std::move(g)); }
  void check(ToleranceCheck c) { report_.checks.push_back(std::move(c)); }
  // Informational values echoed in the report, not part of pass/fail.
  void note(const std::string& key, double value) { notes_[key] = value; }

  // Z and every Z_j of a paired batch against Cauchy(0, 1).
  void ratio_suite(const SampleBatch& batch, const WeightVector& w) {
    const auto z = ratio_statistic(batch, w);
    report_.flagged_row_count += z.nan_rows.size();
    ks_cauchy(z, "Z ~ Cauchy(0,1)");
    for (std::size_t j = 0; j < batch.cols() / 2; ++j) {
      ks_cauchy(pair_ratio(batch, j),
                "Z" + std::to_string(j + 1) + " ~ Cauchy(0,1)");
    }
  }

  void acceptance_check(double rate) {
    // Midpoint 0.35, half-width 0.25: the admissible band [0.1, 0.6].
    check(within("mcmc acceptance rate in [0.1, 0.6]", rate, 0.35, 0.25));
  }

  double threshold() const { return spec_.threshold; }

  nlohmann::json echo() const {
    nlohmann::json j;
    j["params"] = params.resolved();
    if (weights_echo_) j["weights"] = *weights_echo_;
    if (spec_.dirichlet_weights) j["weights_source"] = "dirichlet";
    j["samples"] = samples;
    j["seed"] = spec_.seed;
    j["threshold"] = spec_.threshold;
    if (!notes_.empty()) j["notes"] = notes_;
    return j;
  }

 private:
  const ExperimentSpec& spec_;

 public:
  Params params;
  std::size_t samples;
  RngStream rng;

 private:
  RunReport& report_;
  std::optional<std::vector<double>> weights_echo_;
  nlohmann::json notes_ = nlohmann::json::object();
};

// ---------------------------------------------------------------------------
// Pipelines

void gaussian_independent(Context& ctx) {
  const auto cov = CovarianceMatrix::create(ctx.params.matrix("cov", default_cov3()));
  const auto w = ctx.weights(cov.dim(), kDefaultWeights3);
  const auto batch = sample_independent_pair_gaussian(cov, ctx.samples, ctx.rng);
  ctx.ratio_suite(batch, w);
}

void pivot_chisq(Context& ctx) {
  const auto cov = CovarianceMatrix::create(ctx.params.matrix("cov", default_cov3()));
  const auto w = ctx.weights(cov.dim(), kDefaultWeights3);
  const auto x = sample_mvn(cov, ctx.samples, ctx.rng);
  const auto q = pivot_statistic(x, w, cov);
  ctx.ks(q, inv_chisq1_cdf, "pivot ~ inverse chi-squared(1)");
}

void lemma_tan(Context& ctx) {
  const auto offsets = ctx.params.numbers("offsets", {0.0, 1.0, 2.5});
  const auto w = ctx.weights(offsets.size(), kDefaultWeights3);
  std::vector<double> z(ctx.samples);
  for (auto& v : z) {
    const double theta1 = kPi - 2.0 * kPi * ctx.rng.uniform();
    v = weighted_tan(theta1, offsets, w);
  }
  ctx.ks_cauchy(z, "sum w_j tan(theta1 + u_j) ~ Cauchy(0,1)");
}

void angle_uniformity(Context& ctx, const SampleBatch& batch,
                      const std::string& label) {
  const auto polar = polar_decompose(batch);
  ctx.ks(polar.angle_col(0), uniform_angle_cdf, label + " angle ~ Unif(-pi, pi]");
}

void rotinv_poly(Context& ctx) {
  const auto exponents = ctx.params.numbers("exponents", {2.0, 3.0});
  for (double e : exponents) {
    if (e != std::floor(e)) {
      throw Error(ErrorCode::kConfigError, "exponents must be integers");
    }
    const int exponent = static_cast<int>(e);
    RngStream rng = ctx.rng.substream(static_cast<std::uint64_t>(exponent));
    const auto batch = sample_rotinv_poly(exponent, ctx.samples, rng);
    const std::string label = "poly n=" + std::to_string(exponent);
    ctx.ks_cauchy(pair_ratio(batch, 0), label + " X/Y ~ Cauchy(0,1)");
    angle_uniformity(ctx, batch, label);
  }
}

void rotinv_exp(Context& ctx) {
  const auto batch = sample_rotinv_exp(ctx.samples, ctx.rng);
  ctx.ks_cauchy(pair_ratio(batch, 0), "X/Y ~ Cauchy(0,1)");
  angle_uniformity(ctx, batch, "exp");
  const auto polar = polar_decompose(batch);
  const auto r = polar.radius_col(0);
  double mean = 0.0;
  for (double v : r) mean += v;
  mean /= static_cast<double>(r.size());
  double var = 0.0;
  for (double v : r) var += (v - mean) * (v - mean);
  var /= static_cast<double>(r.size());
  ctx.check(within("radius mean = Gamma(4,1) mean", mean, 4.0, 0.05));
  ctx.check(within("radius variance = Gamma(4,1) variance", var, 4.0, 0.1));
}

void wedge(Context& ctx) {
  const auto cfg = ctx.params.mcmc(chain_defaults(100));
  Matrix b(2, 2);
  b << 0.0, 1.0, -1.0, 0.0;
  // (x, y)^T F (x, y) = 2 (x1 y2 - x2 y1).
  std::vector<ProductFactor> factors{
      {PairMatrix::assemble(Matrix::Zero(2, 2), b), PowerEven{1}},
      {PairMatrix::identity(2), ExpNegHalf{}}};
  const auto model = ProductFormModel::create(std::move(factors), Integrability::kAsserted);
  const auto w = ctx.weights(2, kEvenWeights2);
  const auto chain = sample_product_form(model, ctx.samples, cfg, ctx.rng);
  ctx.ratio_suite(chain.draws, w);
  ctx.acceptance_check(chain.acceptance_rate);
}

void precision_suite(Context& ctx, const ExamplePrecision& ex) {
  const auto w = ctx.weights(2, kEvenWeights2);
  const auto batch = sample_precision_pair_gaussian(ex.matrix, ctx.samples, ctx.rng);
  ctx.ratio_suite(batch, w);
  const Matrix expected = ex.matrix.assembled().inverse();
  const Matrix observed = batch.sample_covariance();
  ctx.check(within("max |sample cov - F^-1|",
                   (observed - expected).cwiseAbs().maxCoeff(), 0.0, 0.02));
}

void precision_f(Context& ctx) {
  const double a = ctx.params.number("a", 2.0);
  const double b = ctx.params.number("b", 2.0);
  const double c = ctx.params.number("c", 0.5);
  const double d = ctx.params.number("d", 0.5);
  precision_suite(ctx, build_example_precision(a, b, c, d, PrecisionGrade::kSamplerGrade));
}

void cross_pair(Context& ctx) {
  const double rho = ctx.params.number("rho", 0.6);
  if (!(std::abs(rho) < 1.0)) {
    throw Error(ErrorCode::kConfigError, "rho must lie in (-1, 1)");
  }
  const double s = 1.0 - rho * rho;
  const auto ex = build_example_precision(1.0 / s, 1.0 / s, 0.0, -rho / s,
                                          PrecisionGrade::kSamplerGrade);
  const auto w = ctx.weights(2, kEvenWeights2);
  const auto batch = sample_precision_pair_gaussian(ex.matrix, ctx.samples, ctx.rng);
  ctx.ratio_suite(batch, w);
  // Columns (x1, x2, y1, y2).
  const Matrix cov = batch.sample_covariance();
  ctx.check(within("cov(X1,Y2) = rho", cov(0, 3), rho, 0.02));
  ctx.check(within("cov(X2,Y1) = -rho", cov(1, 2), -rho, 0.02));
  ctx.check(within("cov(X1,Y1) = 0", cov(0, 2), 0.0, 0.02));
  ctx.check(within("cov(X2,Y2) = 0", cov(1, 3), 0.0, 0.02));
}

void natgen(Context& ctx) {
  const long q = ctx.params.integer("q", 1);
  if (q < 1) throw Error(ErrorCode::kConfigError, "q must be a positive integer");
  const Matrix a = ctx.params.matrix("A", mat(2, {1.0, 0.5, 0.5, -1.0}));
  const auto cov = CovarianceMatrix::create(ctx.params.matrix("cov", mat(2, {1.0, 0.5, 0.5, 1.0})));
  if (a.rows() != static_cast<Eigen::Index>(cov.dim())) {
    throw Error(ErrorCode::kConfigError, "A and cov differ in size");
  }
  const auto cfg = ctx.params.mcmc(chain_defaults(100));
  std::vector<ProductFactor> factors{
      {PairMatrix::block_diagonal(a), PowerEven{static_cast<int>(q)}},
      {PairMatrix::block_diagonal(cov.entries().inverse()), ExpNegHalf{}}};
  const auto model = ProductFormModel::create(std::move(factors), Integrability::kAsserted);
  const auto w = ctx.weights(cov.dim(), kEvenWeights2);
  const auto chain = sample_product_form(model, ctx.samples, cfg, ctx.rng);
  ctx.ratio_suite(chain.draws, w);
  ctx.acceptance_check(chain.acceptance_rate);
}

GaussianMixtureModel mixture_from(Params& params) {
  const auto alphas = params.numbers("mixture_weights", {0.5, 0.3, 0.2});
  const auto covs = params.matrices(
      "covariances", {mat(2, {1.0, 0.5, 0.5, 1.0}), mat(2, {4.0, -1.0, -1.0, 2.0}),
                      mat(2, {0.25, 0.0, 0.0, 9.0})});
  std::vector<CovarianceMatrix> c;
  for (const auto& m : covs) c.push_back(CovarianceMatrix::create(m));
  return GaussianMixtureModel::create(alphas, std::move(c));
}

void gaussian_mixture(Context& ctx) {
  const auto model = mixture_from(ctx.params);
  const auto w = ctx.weights(model.dim(), kEvenWeights2);
  ctx.ratio_suite(sample_gaussian_mixture(model, ctx.samples, ctx.rng), w);
}

void theta_independence(Context& ctx) {
  const auto cov = CovarianceMatrix::create(ctx.params.matrix("cov", default_cov3()));
  const auto bins = static_cast<std::size_t>(ctx.params.integer("bins", 10));
  const auto roundtrip = static_cast<std::size_t>(ctx.params.integer("roundtrip_rows", 1000000));
  const std::size_t m = cov.dim();
  if (m < 2) throw Error(ErrorCode::kConfigError, "need at least two pairs");
  const auto batch = sample_independent_pair_gaussian(cov, ctx.samples, ctx.rng);
  const auto polar = polar_decompose(batch);
  const std::size_t n = batch.rows();

  std::vector<std::vector<double>> u(m, std::vector<double>(n));
  std::vector<double> row(m);
  double identity_err = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) row[j] = polar.angle_col(j)[i];
    const auto mapped = angle_diff_map(row);
    for (std::size_t j = 0; j < m; ++j) u[j][i] = mapped.offsets[j];
    // U_j - U_k agrees with T_j - T_k modulo 2 pi.
    for (std::size_t j = 1; j < m; ++j) {
      for (std::size_t k = 1; k < j; ++k) {
        const double lhs = mapped.offsets[j] - mapped.offsets[k];
        const double rhs = row[j] - row[k];
        identity_err = std::max({identity_err, std::abs(std::cos(lhs) - std::cos(rhs)),
                                 std::abs(std::sin(lhs) - std::sin(rhs))});
      }
    }
  }
  ctx.ks(polar.angle_col(0), uniform_angle_cdf, "theta1 ~ Unif(-pi, pi]");
  for (std::size_t j = 1; j < m; ++j) {
    ctx.test(chi2_independence_test(polar.angle_col(0), u[j], bins,
                                    "theta1 independent of U" + std::to_string(j + 1),
                                    ctx.threshold()));
  }
  ctx.check(within("max |cos/sin(U_j - U_k) - cos/sin(T_j - T_k)|", identity_err, 0.0, 1e-12));

  // Round trip on uniform random angles, boundary values included.
  RngStream arng = ctx.rng.substream(0xA46E);
  const std::vector<double> edges{kPi, -kPi + 1e-15, std::nextafter(kPi, 0.0), 0.0,
                                  std::nextafter(-kPi, 0.0)};
  double worst = 0.0;
  std::size_t exact_rows = 0;
  for (std::size_t i = 0; i < roundtrip; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      row[j] = i < edges.size() * m ? edges[(i + j) % edges.size()]
                                    : kPi - 2.0 * kPi * arng.uniform();
    }
    const auto mapped = angle_diff_map(row);
    const auto back = angle_diff_inverse(mapped.theta1, mapped.offsets);
    bool exact = true;
    for (std::size_t j = 0; j < m; ++j) {
      // Distance on the circle: -pi and pi name the same point.
      worst = std::max(worst, std::abs(wrap_angle(back[j] - row[j])));
      exact = exact && back[j] == row[j];
    }
    exact_rows += exact ? 1 : 0;
  }
  const double bound = 2.0 * (std::nextafter(2.0 * kPi, 8.0) - 2.0 * kPi);
  ctx.check(within("angle map round trip max circular error", worst, 0.0, bound));
  ctx.note("angle map round trip bitwise exact fraction",
           roundtrip == 0 ? 1.0 : static_cast<double>(exact_rows) / static_cast<double>(roundtrip));
}

void copula_consistency(Context& ctx) {
  const double rho = ctx.params.number("rho", 0.6);
  const auto component = static_cast<unsigned>(ctx.params.integer("component", 1));
  const auto component_samples = static_cast<std::size_t>(
      ctx.params.integer("component_samples", 100000));
  const auto bins = static_cast<std::size_t>(ctx.params.integer("bins", 20));
  const auto cfg = ctx.params.mcmc(chain_defaults(100));

  // Series against closed form on the 5 x 5 grid.
  const double grid[] = {-3.0, -1.0, 0.0, 1.0, 3.0};
  double worst = 0.0;
  for (double r : {0.1, 0.5, 0.9}) {
    CopulaParams p;
    p.rho = r;
    for (double z1 : grid) {
      for (double z2 : grid) {
        worst = std::max(worst, std::abs(series_pdf(p, z1, z2) - closed_form_pdf(r, z1, z2)));
      }
    }
  }
  ctx.check(within("max |series - closed form| on grid", worst, 0.0, 1e-10));
  for (unsigned n = 0; n <= 3; ++n) {
    ctx.check(within("component n=" + std::to_string(n) + " total mass",
                     component_mass(n).total(), 1.0, 1e-4));
  }

  CopulaParams params;
  params.rho = rho;
  const auto w = ctx.weights(2, kEvenWeights2);
  const auto z = sample_rho_copula(params, ctx.samples, ctx.rng);
  ctx.ks_cauchy(z.col(0), "Z1 ~ Cauchy(0,1)");
  ctx.ks_cauchy(z.col(1), "Z2 ~ Cauchy(0,1)");
  std::vector<double> mix(z.rows());
  for (std::size_t i = 0; i < z.rows(); ++i) mix[i] = w[0] * z(i, 0) + w[1] * z(i, 1);
  ctx.ks_cauchy(mix, "w1 Z1 + w2 Z2 ~ Cauchy(0,1)");
  const auto expected_mix = quantile_cell_probabilities(
      [rho](double a, double b) { return closed_form_pdf(rho, a, b); }, bins);
  const auto mix_hist = quantile_histogram_check(z.col(0), z.col(1), expected_mix, bins);
  ctx.check(within("rho-copula histogram max |z| vs closed form", mix_hist.max_abs_z, 0.0,
                   mix_hist.sigma_limit));

  RngStream crng = ctx.rng.substream(component + 1);
  const auto chain = sample_component(component, component_samples, cfg, crng);
  const auto& c = chain.draws;
  ctx.ks_cauchy(c.col(0), "C1 ~ Cauchy(0,1)");
  ctx.ks_cauchy(c.col(1), "C2 ~ Cauchy(0,1)");
  std::vector<double> cmix(c.rows());
  for (std::size_t i = 0; i < c.rows(); ++i) cmix[i] = w[0] * c(i, 0) + w[1] * c(i, 1);
  ctx.ks_cauchy(cmix, "w1 C1 + w2 C2 ~ Cauchy(0,1)");
  const auto expected_c = quantile_cell_probabilities(
      [component](double a, double b) { return component_pdf(component, a, b); }, bins);
  const auto c_hist = quantile_histogram_check(c.col(0), c.col(1), expected_c, bins);
  ctx.check(within("component histogram max |z| vs f_n", c_hist.max_abs_z, 0.0,
                   c_hist.sigma_limit));
  ctx.acceptance_check(chain.acceptance_rate);
}

// ---------------------------------------------------------------------------
// Registry

struct Entry {
  std::string name;
  std::vector<std::string> keys;
  std::size_t default_samples;
  std::function<void(Context&)> run;
};

const std::vector<std::string> kChainKeys{"burn_in", "thin", "step_scale", "adapt_target"};

std::vector<std::string> with_chain(std::vector<std::string> keys) {
  keys.insert(keys.end(), kChainKeys.begin(), kChainKeys.end());
  return keys;
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries{
      {"gaussian-independent", {"cov"}, 200000, gaussian_independent},
      {"pivot-chisq", {"cov"}, 200000, pivot_chisq},
      {"lemma-tan", {"offsets"}, 200000, lemma_tan},
      {"rotinv-poly", {"exponents"}, 200000, rotinv_poly},
      {"rotinv-exp", {}, 200000, rotinv_exp},
      {"wedge", with_chain({}), 100000, wedge},
      {"precision-F", {"a", "b", "c", "d"}, 200000, precision_f},
      {"cross-pair", {"rho"}, 200000, cross_pair},
      {"natgen", with_chain({"q", "A", "cov"}), 100000, natgen},
      {"gaussian-mixture", {"mixture_weights", "covariances"}, 200000, gaussian_mixture},
      {"theta-independence", {"cov", "bins", "roundtrip_rows"}, 200000, theta_independence},
      {"copula-consistency",
       with_chain({"rho", "component", "component_samples", "bins"}),
       200000,
       copula_consistency},
  };
  return entries;
}

}  // namespace

ToleranceCheck within(std::string name, double observed, double expected,
                      double tolerance) {
  const bool ok = std::abs(observed - expected) <= tolerance;
  return ToleranceCheck{std::move(name), observed, expected, tolerance, ok};
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.push_back(e.name);
    return out;
  }();
  return names;
}

RunReport run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const auto& entries = registry();
  const auto it = std::find_if(entries.begin(), entries.end(),
                               [&](const Entry& e) { return e.name == spec.name; });
  const auto stream = static_cast<std::uint64_t>(it - entries.begin()) + 1;

  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.experiment = spec.name;
  Context ctx(spec, it->keys, it->default_samples, stream, report);
  it->run(ctx);
  report.spec = ctx.echo();
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  bool ok = !report.tests.empty();
  for (const auto& t : report.tests) ok = ok && t.passed;
  for (const auto& c : report.checks) ok = ok && c.passed;
  report.overall_pass = ok;
  return report;
}

std::vector<RunReport> run_all(double threshold, std::uint64_t seed,
                               std::size_t workers) {
  const auto& names = experiment_names();
  std::vector<RunReport> reports(names.size());
  std::vector<std::exception_ptr> errors(names.size());
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = std::min(workers, names.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < names.size(); i = next++) {
      try {
        ExperimentSpec spec;
        spec.name = names[i];
        spec.seed = seed;
        spec.threshold = threshold;
        reports[i] = run_experiment(spec);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return reports;
}

// ---------------------------------------------------------------------------
// Models for CSV export

namespace {

using ModelFn = std::function<SampleBatch(Params&, std::size_t, RngStream&)>;

struct ModelEntry {
  std::string name;
  std::vector<std::string> keys;
  ModelFn draw;
};

const std::vector<ModelEntry>& model_registry() {
  static const std::vector<ModelEntry> entries{
      {"mvn", {"cov"},
       [](Params& p, std::size_t n, RngStream& rng) {
         return sample_mvn(CovarianceMatrix::create(p.matrix("cov", default_cov3())), n, rng);
       }},
      {"gaussian-pair", {"cov"},
       [](Params& p, std::size_t n, RngStream& rng) {
         return sample_independent_pair_gaussian(
             CovarianceMatrix::create(p.matrix("cov", default_cov3())), n, rng);
       }},
      {"precision-pair", {"a", "b", "c", "d"},
       [](Params& p, std::size_t n, RngStream& rng) {
         const auto ex = build_example_precision(p.number("a", 2.0), p.number("b", 2.0),
                                                 p.number("c", 0.5), p.number("d", 0.5),
                                                 PrecisionGrade::kSamplerGrade);
         return sample_precision_pair_gaussian(ex.matrix, n, rng);
       }},
      {"rotinv-poly", {"exponent"},
       [](Params& p, std::size_t n, RngStream& rng) {
         return sample_rotinv_poly(static_cast<int>(p.integer("exponent", 2)), n, rng);
       }},
      {"rotinv-exp", {},
       [](Params&, std::size_t n, RngStream& rng) { return sample_rotinv_exp(n, rng); }},
      {"gaussian-mixture", {"mixture_weights", "covariances"},
       [](Params& p, std::size_t n, RngStream& rng) {
         return sample_gaussian_mixture(mixture_from(p), n, rng);
       }},
      {"wedge", kChainKeys,
       [](Params& p, std::size_t n, RngStream& rng) {
         Matrix b(2, 2);
         b << 0.0, 1.0, -1.0, 0.0;
         std::vector<ProductFactor> f{
             {PairMatrix::assemble(Matrix::Zero(2, 2), b), PowerEven{1}},
             {PairMatrix::identity(2), ExpNegHalf{}}};
         const auto model = ProductFormModel::create(std::move(f), Integrability::kAsserted);
         return sample_product_form(model, n, p.mcmc(McmcConfig{}), rng).draws;
       }},
      {"rho-copula", {"rho"},
       [](Params& p, std::size_t n, RngStream& rng) {
         CopulaParams cp;
         cp.rho = p.number("rho", 0.6);
         return sample_rho_copula(cp, n, rng);
       }},
      {"copula-component", with_chain({"n"}),
       [](Params& p, std::size_t n, RngStream& rng) {
         const auto k = static_cast<unsigned>(p.integer("n", 1));
         return sample_component(k, n, p.mcmc(McmcConfig{}), rng).draws;
       }},
  };
  return entries;
}

}  // namespace

const std::vector<std::string>& model_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : model_registry()) out.push_back(e.name);
    return out;
  }();
  return names;
}

SampleBatch draw_model(const std::string& model, const nlohmann::json& params,
                       std::size_t count, std::uint64_t seed) {
  const auto& entries = model_registry();
  const auto it = std::find_if(entries.begin(), entries.end(),
                               [&](const ModelEntry& e) { return e.name == model; });
  if (it == entries.end()) {
    throw Error(ErrorCode::kUnknownExperiment, "no model named '" + model + "'");
  }
  Params p(params.is_null() ? nlohmann::json::object() : params, it->keys);
  RngStream rng(seed, 1000 + static_cast<std::uint64_t>(it - entries.begin()));
  return it->draw(p, count, rng);
}

}  // namespace cauchyratio
