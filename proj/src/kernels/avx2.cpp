/*
 * Copyright 2026 The gmhdr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// AVX2 variants, four doubles per iteration. This file is compiled with -mavx2
// but without -mfma: every multiply and add rounds separately, as in scalar.cpp.

#include <immintrin.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "gmhdr/kernels.h"

namespace gmhdr::kernels {
namespace {

inline __m128i load4_codes(const std::uint8_t* p) {
  std::int32_t packed;
  std::memcpy(&packed, p, sizeof(packed));
  return _mm_cvtepu8_epi32(_mm_cvtsi32_si128(packed));
}

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

inline double horizontal(__m256d acc) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

void scale_by_code(const double* base, const std::uint8_t* codes, const double* lut,
                   double offset, double* out, std::size_t n) {
  const __m256d off = _mm256_set1_pd(offset);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d m = _mm256_i32gather_pd(lut, load4_codes(codes + k), 8);
    const __m256d b = _mm256_add_pd(_mm256_loadu_pd(base + k), off);
    _mm256_storeu_pd(out + k, _mm256_mul_pd(b, m));
  }
  for (; k < n; ++k) out[k] = (base[k] + offset) * lut[codes[k]];
}

void axpby(const double* x, const double* y, double a, double b, double* out,
           std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d ax = _mm256_mul_pd(va, _mm256_loadu_pd(x + k));
    const __m256d by = _mm256_mul_pd(vb, _mm256_loadu_pd(y + k));
    _mm256_storeu_pd(out + k, _mm256_add_pd(ax, by));
  }
  for (; k < n; ++k) {
    const double ax = a * x[k];
    const double by = b * y[k];
    out[k] = ax + by;
  }
}

void sub_scaled_div(const double* x, const double* y, double a, double d, double* out,
                    std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vd = _mm256_set1_pd(d);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d ay = _mm256_mul_pd(va, _mm256_loadu_pd(y + k));
    _mm256_storeu_pd(out + k, _mm256_div_pd(_mm256_sub_pd(_mm256_loadu_pd(x + k), ay), vd));
  }
  for (; k < n; ++k) {
    const double ay = a * y[k];
    out[k] = (x[k] - ay) / d;
  }
}

void quantize_unit(const double* x, std::uint8_t* out, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d s255 = _mm256_set1_pd(255.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d v0 = _mm256_loadu_pd(x + k);
    const __m256d positive = _mm256_cmp_pd(v0, zero, _CMP_GT_OQ);
    const __m256d saturated = _mm256_cmp_pd(v0, one, _CMP_GE_OQ);
    const __m256d v = _mm256_mul_pd(v0, s255);
    const __m256d t = _mm256_round_pd(v, _MM_FROUND_TO_ZERO | _MM_FROUND_NO_EXC);
    const __m256d up = _mm256_cmp_pd(_mm256_sub_pd(v, t), half, _CMP_GE_OQ);
    __m256d r = _mm256_add_pd(t, _mm256_and_pd(up, one));
    r = _mm256_blendv_pd(zero, r, positive);
    r = _mm256_blendv_pd(r, s255, saturated);
    const __m128i i32 = _mm256_cvttpd_epi32(r);
    const __m128i i8 = _mm_packus_epi16(_mm_packus_epi32(i32, i32), _mm_setzero_si128());
    const std::int32_t packed = _mm_cvtsi128_si32(i8);
    std::memcpy(out + k, &packed, sizeof(packed));
  }
  if (k < n) scalar_table().quantize_unit(x + k, out + k, n - k);
}

void channel_mean_abs_diff(const double* a, const double* b, double* out,
                           std::size_t pixels) {
  const __m128i stride = _mm_setr_epi32(0, 3, 6, 9);
  const __m128i one = _mm_set1_epi32(1);
  const __m128i two = _mm_set1_epi32(2);
  const __m256d three = _mm256_set1_pd(3.0);
  std::size_t p = 0;
  for (; p + 4 <= pixels; p += 4) {
    const double* pa = a + 3 * p;
    const double* pb = b + 3 * p;
    const __m256d d0 = abs_pd(_mm256_sub_pd(_mm256_i32gather_pd(pa, stride, 8),
                                            _mm256_i32gather_pd(pb, stride, 8)));
    const __m128i s1 = _mm_add_epi32(stride, one);
    const __m256d d1 = abs_pd(_mm256_sub_pd(_mm256_i32gather_pd(pa, s1, 8),
                                            _mm256_i32gather_pd(pb, s1, 8)));
    const __m128i s2 = _mm_add_epi32(stride, two);
    const __m256d d2 = abs_pd(_mm256_sub_pd(_mm256_i32gather_pd(pa, s2, 8),
                                            _mm256_i32gather_pd(pb, s2, 8)));
    const __m256d s = _mm256_add_pd(_mm256_add_pd(d0, d1), d2);
    _mm256_storeu_pd(out + p, _mm256_div_pd(s, three));
  }
  if (p < pixels) scalar_table().channel_mean_abs_diff(a + 3 * p, b + 3 * p, out + p, pixels - p);
}

void merge(const MergeInputs& in, double* out, std::size_t n) {
  const __m256d floor = _mm256_set1_pd(in.weight_floor);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d num = _mm256_setzero_pd();
    __m256d den = _mm256_setzero_pd();
    __m256d all_floor = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    for (std::size_t i = 0; i < in.frame_count; ++i) {
      const __m128i idx = load4_codes(in.codes[i] + k);
      const __m256d w = _mm256_i32gather_pd(in.weight_lut, idx, 8);
      const __m256d v = _mm256_i32gather_pd(in.value_luts[i], idx, 8);
      num = _mm256_add_pd(num, _mm256_mul_pd(w, v));
      den = _mm256_add_pd(den, w);
      all_floor = _mm256_and_pd(all_floor, _mm256_cmp_pd(w, floor, _CMP_LE_OQ));
    }
    const __m128i ref_idx = load4_codes(in.codes[in.reference] + k);
    const __m256d fallback = _mm256_i32gather_pd(in.value_luts[in.reference], ref_idx, 8);
    _mm256_storeu_pd(out + k, _mm256_blendv_pd(_mm256_div_pd(num, den), fallback, all_floor));
  }
  if (k < n) {
    // Tail through the scalar kernel on offset code pointers.
    std::vector<const std::uint8_t*> tail_codes(in.frame_count);
    for (std::size_t i = 0; i < in.frame_count; ++i) tail_codes[i] = in.codes[i] + k;
    MergeInputs tail = in;
    tail.codes = tail_codes.data();
    scalar_table().merge(tail, out + k, n - k);
  }
}

double leaf_sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t k = 0; k < n4; k += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + k));
  double s = horizontal(acc);
  for (std::size_t k = n4; k < n; ++k) s = s + x[k];
  return s;
}

double leaf_sum_sq_diff(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t k = 0; k < n4; k += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double s = horizontal(acc);
  for (std::size_t k = n4; k < n; ++k) {
    const double d = a[k] - b[k];
    s = s + d * d;
  }
  return s;
}

double leaf_sum_abs_diff(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t k = 0; k < n4; k += 4) {
    acc = _mm256_add_pd(acc, abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k))));
  }
  double s = horizontal(acc);
  for (std::size_t k = n4; k < n; ++k) s = s + std::fabs(a[k] - b[k]);
  return s;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{
      Isa::kAvx2,   scale_by_code, axpby,    sub_scaled_div,    quantize_unit,
      channel_mean_abs_diff,       merge,    leaf_sum,          leaf_sum_sq_diff,
      leaf_sum_abs_diff,
  };
  return table;
}

}  // namespace gmhdr::kernels
