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

// Reference implementations. The AVX2 versions must match these bit for bit.

#include <cmath>

#include "gmhdr/kernels.h"

namespace gmhdr::kernels {
namespace {

void scale_by_code(const double* base, const std::uint8_t* codes, const double* lut,
                   double offset, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = (base[k] + offset) * lut[codes[k]];
}

void axpby(const double* x, const double* y, double a, double b, double* out,
           std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double ax = a * x[k];
    const double by = b * y[k];
    out[k] = ax + by;
  }
}

void sub_scaled_div(const double* x, const double* y, double a, double d, double* out,
                    std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    const double ay = a * y[k];
    out[k] = (x[k] - ay) / d;
  }
}

std::uint8_t quantize_one(double x) {
  // !(x > 0) also catches NaN.
  if (!(x > 0.0)) return 0;
  if (x >= 1.0) return 255;
  const double v = x * 255.0;
  const double t = std::trunc(v);
  return static_cast<std::uint8_t>(v - t >= 0.5 ? t + 1.0 : t);
}

void quantize_unit(const double* x, std::uint8_t* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = quantize_one(x[k]);
}

void channel_mean_abs_diff(const double* a, const double* b, double* out,
                           std::size_t pixels) {
  for (std::size_t p = 0; p < pixels; ++p) {
    const double* pa = a + 3 * p;
    const double* pb = b + 3 * p;
    const double s = (std::fabs(pa[0] - pb[0]) + std::fabs(pa[1] - pb[1])) +
                     std::fabs(pa[2] - pb[2]);
    out[p] = s / 3.0;
  }
}

void merge(const MergeInputs& in, double* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) {
    double num = 0.0;
    double den = 0.0;
    bool all_floor = true;
    for (std::size_t i = 0; i < in.frame_count; ++i) {
      const std::uint8_t c = in.codes[i][k];
      const double w = in.weight_lut[c];
      const double wv = w * in.value_luts[i][c];
      num = num + wv;
      den = den + w;
      all_floor = all_floor && (w <= in.weight_floor);
    }
    out[k] = all_floor ? in.value_luts[in.reference][in.codes[in.reference][k]] : num / den;
  }
}

template <typename Term>
double leaf(std::size_t n, Term term) {
  double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
  const std::size_t n4 = n & ~std::size_t{3};
  for (std::size_t k = 0; k < n4; k += 4) {
    l0 = l0 + term(k);
    l1 = l1 + term(k + 1);
    l2 = l2 + term(k + 2);
    l3 = l3 + term(k + 3);
  }
  double s = (l0 + l1) + (l2 + l3);
  for (std::size_t k = n4; k < n; ++k) s = s + term(k);
  return s;
}

double leaf_sum(const double* x, std::size_t n) {
  return leaf(n, [x](std::size_t k) { return x[k]; });
}

double leaf_sum_sq_diff(const double* a, const double* b, std::size_t n) {
  return leaf(n, [a, b](std::size_t k) {
    const double d = a[k] - b[k];
    return d * d;
  });
}

double leaf_sum_abs_diff(const double* a, const double* b, std::size_t n) {
  return leaf(n, [a, b](std::size_t k) { return std::fabs(a[k] - b[k]); });
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{
      Isa::kScalar,  scale_by_code, axpby,    sub_scaled_div,    quantize_unit,
      channel_mean_abs_diff,        merge,    leaf_sum,          leaf_sum_sq_diff,
      leaf_sum_abs_diff,
  };
  return table;
}

}  // namespace gmhdr::kernels
