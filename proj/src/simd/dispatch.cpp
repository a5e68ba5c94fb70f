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

#include <cstdlib>
#include <string>

#include "cauchyratio/simd/kernels.hpp"

namespace cauchyratio::simd {

bool backend_available(Backend backend) {
  switch (backend) {
    case Backend::kScalar:
      return true;
    case Backend::kAvx2:
#if defined(CAUCHYRATIO_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels(Backend backend) {
#if defined(CAUCHYRATIO_HAVE_AVX2)
  if (backend == Backend::kAvx2 && backend_available(Backend::kAvx2)) {
    return detail::kAvx2Kernels;
  }
#endif
  (void)backend;
  return detail::kScalarKernels;
}

Backend active_backend() {
  static const Backend chosen = [] {
    const char* env = std::getenv("CAUCHYRATIO_SIMD");
    if (env != nullptr && std::string(env) == "scalar") return Backend::kScalar;
    return backend_available(Backend::kAvx2) ? Backend::kAvx2
                                             : Backend::kScalar;
  }();
  return chosen;
}

const KernelTable& active_kernels() { return kernels(active_backend()); }

std::string_view backend_name(Backend backend) {
  return backend == Backend::kAvx2 ? "avx2" : "scalar";
}

}  // namespace cauchyratio::simd
