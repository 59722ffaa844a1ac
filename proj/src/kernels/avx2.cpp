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

// AVX2 + FMA kernels. Compiled with -mavx2 -mfma; only reached through the
// dispatch table after a CPU feature check.

#include <immintrin.h>

#include "skewsep/kernels.hpp"

namespace skewsep::kernels {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// (re0 + re1, im0 + im1) of a vector holding two complex numbers.
inline __m128d fold_complex(__m256d v) {
  return _mm_add_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
}

void zgemm_avx2(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b, double* c) {
  const std::size_t pairs = n / 2;
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + 2 * i * n;
    for (std::size_t j = 0; j < 2 * n; ++j) crow[j] = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
      const double ar = a[2 * (i * k + p)];
      const double ai = a[2 * (i * k + p) + 1];
      const __m256d var = _mm256_set1_pd(ar);
      const __m256d vai = _mm256_set1_pd(ai);
      const double* brow = b + 2 * p * n;
      for (std::size_t q = 0; q < pairs; ++q) {
        const __m256d bv = _mm256_loadu_pd(brow + 4 * q);
        const __m256d bs = _mm256_permute_pd(bv, 0b0101);
        // even lanes: ar*br - ai*bi, odd lanes: ar*bi + ai*br
        const __m256d prod = _mm256_fmaddsub_pd(var, bv, _mm256_mul_pd(vai, bs));
        _mm256_storeu_pd(crow + 4 * q, _mm256_add_pd(_mm256_loadu_pd(crow + 4 * q), prod));
      }
      if (n & 1) {
        const double br = brow[2 * (n - 1)];
        const double bi = brow[2 * (n - 1) + 1];
        crow[2 * (n - 1)] += ar * br - ai * bi;
        crow[2 * (n - 1) + 1] += ar * bi + ai * br;
      }
    }
  }
}

void zdot_accumulate(std::size_t len, const double* x, const double* y, __m256d& direct, __m256d& crossed,
                     std::size_t& done) {
  direct = _mm256_setzero_pd();
  crossed = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m256d xv = _mm256_loadu_pd(x + 2 * i);
    const __m256d yv = _mm256_loadu_pd(y + 2 * i);
    direct = _mm256_fmadd_pd(xv, yv, direct);
    crossed = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), crossed);
  }
  done = i;
}

void zdotu_avx2(std::size_t len, const double* x, const double* y, double* out) {
  __m256d direct, crossed;
  std::size_t i = 0;
  zdot_accumulate(len, x, y, direct, crossed, i);
  // direct = (xr yr, xi yi), crossed = (xr yi, xi yr)
  const __m128d d = fold_complex(direct);
  const __m128d x2 = fold_complex(crossed);
  double re = _mm_cvtsd_f64(d) - _mm_cvtsd_f64(_mm_unpackhi_pd(d, d));
  double im = _mm_cvtsd_f64(x2) + _mm_cvtsd_f64(_mm_unpackhi_pd(x2, x2));
  for (; i < len; ++i) {
    const double xr = x[2 * i], xi = x[2 * i + 1];
    const double yr = y[2 * i], yi = y[2 * i + 1];
    re += xr * yr - xi * yi;
    im += xr * yi + xi * yr;
  }
  out[0] = re;
  out[1] = im;
}

void zdotc_avx2(std::size_t len, const double* x, const double* y, double* out) {
  __m256d direct, crossed;
  std::size_t i = 0;
  zdot_accumulate(len, x, y, direct, crossed, i);
  const __m128d d = fold_complex(direct);
  const __m128d x2 = fold_complex(crossed);
  double re = _mm_cvtsd_f64(d) + _mm_cvtsd_f64(_mm_unpackhi_pd(d, d));
  double im = _mm_cvtsd_f64(x2) - _mm_cvtsd_f64(_mm_unpackhi_pd(x2, x2));
  for (; i < len; ++i) {
    const double xr = x[2 * i], xi = x[2 * i + 1];
    const double yr = y[2 * i], yi = y[2 * i + 1];
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  out[0] = re;
  out[1] = im;
}

void dgemm_avx2(std::size_t m, std::size_t n, std::size_t k, const double* a, const double* b, double* c) {
  const std::size_t blocks = n / 4;
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a[i * k + p];
      const __m256d va = _mm256_set1_pd(aip);
      const double* brow = b + p * n;
      for (std::size_t q = 0; q < blocks; ++q) {
        _mm256_storeu_pd(crow + 4 * q,
                         _mm256_fmadd_pd(va, _mm256_loadu_pd(brow + 4 * q), _mm256_loadu_pd(crow + 4 * q)));
      }
      for (std::size_t j = 4 * blocks; j < n; ++j) crow[j] += aip * brow[j];
    }
  }
}

double ddot_avx2(std::size_t len, const double* x, const double* y) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= len; i += 4) acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < len; ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

extern const KernelTable kAvx2Table;
const KernelTable kAvx2Table{"avx2", zgemm_avx2, zdotu_avx2, zdotc_avx2, dgemm_avx2, ddot_avx2};

}  // namespace skewsep::kernels
