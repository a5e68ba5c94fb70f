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

// AVX2 variants. This translation unit is compiled with -mavx2 and is only
// reached through the dispatch table after a CPUID check.

#include <immintrin.h>

#include <cmath>

#include "cauchyratio/simd/kernels.hpp"

namespace cauchyratio::simd::detail {
namespace {

constexpr std::size_t kLanes = 4;

void ratio_sum_avx2(const double* const* x_cols, const double* const* y_cols,
                    const double* w, std::size_t m, std::size_t n,
                    double* out) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < m; ++j) {
      if (w[j] == 0.0) continue;
      const __m256d x = _mm256_loadu_pd(x_cols[j] + i);
      const __m256d y = _mm256_loadu_pd(y_cols[j] + i);
      acc = _mm256_add_pd(
          acc, _mm256_mul_pd(_mm256_set1_pd(w[j]), _mm256_div_pd(x, y)));
    }
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (w[j] == 0.0) continue;
      acc = acc + w[j] * (x_cols[j][i] / y_cols[j][i]);
    }
    out[i] = acc;
  }
}

void pivot_form_avx2(const double* const* x_cols, const double* w,
                     const double* cov, std::size_t m, std::size_t n,
                     double* out) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < m; ++j) {
      const __m256d vj =
          _mm256_div_pd(_mm256_set1_pd(w[j]), _mm256_loadu_pd(x_cols[j] + i));
      __m256d inner = _mm256_setzero_pd();
      for (std::size_t k = 0; k < m; ++k) {
        const __m256d vk = _mm256_div_pd(_mm256_set1_pd(w[k]),
                                         _mm256_loadu_pd(x_cols[k] + i));
        inner = _mm256_add_pd(
            inner, _mm256_mul_pd(_mm256_set1_pd(cov[j * m + k]), vk));
      }
      acc = _mm256_add_pd(acc, _mm256_mul_pd(vj, inner));
    }
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < n; ++i) {
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

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d yv = _mm256_loadu_pd(y + i);
    const __m256d xv = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(yv, _mm256_mul_pd(av, xv)));
  }
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

void radius_avx2(const double* x, const double* y, std::size_t n,
                 double* out) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d yv = _mm256_loadu_pd(y + i);
    const __m256d ss =
        _mm256_add_pd(_mm256_mul_pd(xv, xv), _mm256_mul_pd(yv, yv));
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(ss));
  }
  for (; i < n; ++i) out[i] = std::sqrt(x[i] * x[i] + y[i] * y[i]);
}

double ks_sup_distance_avx2(const double* f, std::size_t n) {
  const double dn = static_cast<double>(n);
  const __m256d dnv = _mm256_set1_pd(dn);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d step = _mm256_set1_pd(static_cast<double>(kLanes));
  __m256d idx = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  __m256d dv = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d fv = _mm256_loadu_pd(f + i);
    const __m256d above =
        _mm256_sub_pd(_mm256_div_pd(_mm256_add_pd(idx, one), dnv), fv);
    const __m256d below = _mm256_sub_pd(fv, _mm256_div_pd(idx, dnv));
    dv = _mm256_max_pd(dv, _mm256_max_pd(above, below));
    idx = _mm256_add_pd(idx, step);
  }
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, dv);
  double d = 0.0;
  for (double v : lanes) d = v > d ? v : d;
  for (; i < n; ++i) {
    const double di = static_cast<double>(i);
    const double above = (di + 1.0) / dn - f[i];
    const double below = f[i] - di / dn;
    d = above > d ? above : d;
    d = below > d ? below : d;
  }
  return d;
}

}  // namespace

const KernelTable kAvx2Kernels{ratio_sum_avx2, pivot_form_avx2, axpy_avx2,
                               radius_avx2, ks_sup_distance_avx2};

}  // namespace cauchyratio::simd::detail
