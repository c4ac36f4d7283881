/* Copyright 2026 The dlgibbs Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <immintrin.h>

#include <limits>

#include "dlgibbs/simd/vecmath.hpp"

namespace dlgibbs::simd::avx2 {
namespace {

// (l0 + l2) + (l1 + l3), matching the scalar reference.
inline double reduce_lanes(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);  // (l0 + l2, l1 + l3)
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

}  // namespace

void shrinkage_variance(std::span<const double> psi,
                        std::span<const double> scale, std::span<double> out) {
  const std::size_t n = out.size();
  const std::size_t body = n - n % 4;
  const __m256d tiny = _mm256_set1_pd(std::numeric_limits<double>::min());
  const __m256d huge = _mm256_set1_pd(std::numeric_limits<double>::max());
  const __m256d one = _mm256_set1_pd(1.0);
  for (std::size_t j = 0; j < body; j += 4) {
    const __m256d p = _mm256_loadu_pd(psi.data() + j);
    const __m256d c = _mm256_loadu_pd(scale.data() + j);
    __m256d s = _mm256_mul_pd(p, _mm256_mul_pd(c, c));
    // Operand order reproduces std::max/std::min, including NaN propagation.
    s = _mm256_min_pd(huge, _mm256_max_pd(tiny, s));
    _mm256_storeu_pd(out.data() + j, _mm256_div_pd(s, _mm256_add_pd(one, s)));
  }
  scalar::shrinkage_variance(psi.subspan(body), scale.subspan(body),
                             out.subspan(body));
}

void multiply(std::span<const double> a, std::span<const double> b,
              std::span<double> out) {
  const std::size_t n = out.size();
  const std::size_t body = n - n % 4;
  for (std::size_t j = 0; j < body; j += 4) {
    _mm256_storeu_pd(out.data() + j, _mm256_mul_pd(_mm256_loadu_pd(a.data() + j),
                                                   _mm256_loadu_pd(b.data() + j)));
  }
  scalar::multiply(a.subspan(body), b.subspan(body), out.subspan(body));
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t body = n - n % 4;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t j = 0; j < body; j += 4) {
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a.data() + j),
                                           _mm256_loadu_pd(b.data() + j)));
  }
  double total = reduce_lanes(acc);
  for (std::size_t j = body; j < n; ++j) total = total + a[j] * b[j];
  return total;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t body = n - n % 4;
  __m256d acc = _mm256_setzero_pd();
  for (std::size_t j = 0; j < body; j += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a.data() + j),
                                    _mm256_loadu_pd(b.data() + j));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double total = reduce_lanes(acc);
  for (std::size_t j = body; j < n; ++j) {
    const double d = a[j] - b[j];
    total = total + d * d;
  }
  return total;
}

}  // namespace dlgibbs::simd::avx2
