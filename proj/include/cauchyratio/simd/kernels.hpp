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

#ifndef CAUCHYRATIO_SIMD_KERNELS_HPP_
#define CAUCHYRATIO_SIMD_KERNELS_HPP_

// Row-parallel arithmetic kernels with a scalar reference implementation and
// vector variants selected at runtime.
//
// Every backend performs the same IEEE operations in the same order per row
// (no FMA contraction, no reassociation), so results are bit-identical across
// backends. The kernel ABI uses raw pointers because the vector translation
// units are compiled with ISA flags and must not instantiate shared inline
// library code.

#include <cstddef>
#include <string_view>

namespace cauchyratio::simd {

enum class Backend { kScalar, kAvx2 };

struct KernelTable {
  // out[i] = sum_j w[j] * (x_cols[j][i] / y_cols[j][i]), skipping w[j] == 0,
  // accumulated in increasing j starting from 0.0.
  void (*ratio_sum)(const double* const* x_cols, const double* const* y_cols,
                    const double* w, std::size_t m, std::size_t n,
                    double* out);

  // out[i] = sum_j v_j * (sum_k cov[j*m+k] * v_k), v_j = w[j] / x_cols[j][i].
  void (*pivot_form)(const double* const* x_cols, const double* w,
                     const double* cov_row_major, std::size_t m,
                     std::size_t n, double* out);

  // y[i] = y[i] + a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);

  // out[i] = sqrt(x[i]*x[i] + y[i]*y[i])
  void (*radius)(const double* x, const double* y, std::size_t n,
                 double* out);

  // max_i max((i+1)/n - F[i], F[i] - i/n) over ascending CDF values F.
  double (*ks_sup_distance)(const double* sorted_cdf, std::size_t n);
};

const KernelTable& kernels(Backend backend);

bool backend_available(Backend backend);

// Best available backend, unless CAUCHYRATIO_SIMD=scalar is set.
Backend active_backend();

const KernelTable& active_kernels();

std::string_view backend_name(Backend backend);

namespace detail {
extern const KernelTable kScalarKernels;
#if defined(CAUCHYRATIO_HAVE_AVX2)
extern const KernelTable kAvx2Kernels;
#endif
}  // namespace detail

}  // namespace cauchyratio::simd

#endif  // CAUCHYRATIO_SIMD_KERNELS_HPP_
