// Copyright The skewsep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <string_view>

namespace skewsep::kernels {

// Arithmetic inner loops. Complex operands are interleaved (re, im) doubles,
// i.e. the storage of std::complex<double>. All matrices are row-major and
// densely packed.
struct KernelTable {
  std::string_view name;

  // C[m x n] = A[m x k] * B[k x n]  (complex, C overwritten)
  void (*zgemm)(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b, double* c);
  // sum_i x_i * y_i over len complex entries, result written to out[2]
  void (*zdotu)(std::size_t len, const double* x, const double* y, double* out);
  // sum_i conj(x_i) * y_i
  void (*zdotc)(std::size_t len, const double* x, const double* y, double* out);
  // C[m x n] = A[m x k] * B[k x n]  (real, C overwritten)
  void (*dgemm)(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b, double* c);
  double (*ddot)(std::size_t len, const double* x, const double* y);
};

const KernelTable& scalar_table() noexcept;

/// AVX2+FMA table, or nullptr when the host CPU or the build lacks it.
const KernelTable* avx2_table() noexcept;

/// Table used by the library. Picked once: SKEWSEP_KERNELS=scalar|avx2
/// overrides, otherwise the widest variant the CPU supports.
const KernelTable& active() noexcept;

}  // namespace skewsep::kernels
