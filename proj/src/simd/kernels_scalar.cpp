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

#include <cmath>

#include "cauchyratio/simd/kernels.hpp"

namespace cauchyratio::simd::detail {
namespace {

void ratio_sum_scalar(const double* const* x_cols, const double* const* y_cols,
                      const double* w, std::size_t m, std::size_t n,
                      double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (w[j] == 0.0) continue;
      acc = acc + w[j] * (x_cols[j][i] / y_cols[j][i]);
    }
    out[i] = acc;
  }
}

void pivot_form_scalar(const double* const* x_cols, const double* w,
                       const double* cov, std::size_t m, std::size_t n,
                       double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double vj = w[j] / x_cols[j][i];
      double inner = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        inner = inner + cov[j * m + k] * (w[k] / x_cols[k][i]);
      }
      acc = acc + vj * inner;
    }
    out[i] = acc;
  }
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

void radius_scalar(const double* x, const double* y, std::size_t n,
                   double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::sqrt(x[i] * x[i] + y[i] * y[i]);
  }
}

double ks_sup_distance_scalar(const double* f, std::size_t n) {
  const double dn = static_cast<double>(n);
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double di = static_cast<double>(i);
    const double above = (di + 1.0) / dn - f[i];
    const double below = f[i] - di / dn;
    d = above > d ? above : d;
    d = below > d ? below : d;
  }
  return d;
}

}  // namespace

const KernelTable kScalarKernels{ratio_sum_scalar, pivot_form_scalar,
                                 axpy_scalar, radius_scalar,
                                 ks_sup_distance_scalar};

}  // namespace cauchyratio::simd::detail
