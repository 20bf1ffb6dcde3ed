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

#ifndef GMHDR_KERNELS_H
#define GMHDR_KERNELS_H

// Data-parallel inner loops. Each kernel has a scalar reference version and,
// on x86-64, an AVX2 version selected at runtime. Both versions perform the
// same IEEE operations in the same order, so their outputs are bit-identical.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace gmhdr::kernels {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);
std::optional<Isa> parse_isa(std::string_view name);

// Best ISA supported by both the build and the running CPU.
Isa detect_isa();
bool isa_available(Isa isa);

// Forces an ISA for subsequent calls (tests, --simd flag). Passing nullopt
// restores automatic detection. Throws if the ISA is unavailable.
void set_isa_override(std::optional<Isa> isa);
Isa active_isa();

// Inputs of the frame-merge kernel. Frame i contributes
// weight_lut[codes[i][k]] * value_luts[i][codes[i][k]] to element k. When every
// frame's weight is at weight_floor, element k takes value_luts[reference][...].
struct MergeInputs {
  std::size_t frame_count = 0;
  const std::uint8_t* const* codes = nullptr;
  const double* const* value_luts = nullptr;  // 256 entries each
  const double* weight_lut = nullptr;         // 256 entries
  double weight_floor = 0.0;
  std::size_t reference = 0;
};

struct KernelTable {
  Isa isa;
  // out[k] = (base[k] + offset) * lut[codes[k]]
  void (*scale_by_code)(const double* base, const std::uint8_t* codes, const double* lut,
                        double offset, double* out, std::size_t n);
  // out[k] = a * x[k] + b * y[k]
  void (*axpby)(const double* x, const double* y, double a, double b, double* out,
                std::size_t n);
  // out[k] = (x[k] - a * y[k]) / d
  void (*sub_scaled_div)(const double* x, const double* y, double a, double d, double* out,
                         std::size_t n);
  // out[k] = round(clamp(x[k], 0, 1) * 255), ties away from zero
  void (*quantize_unit)(const double* x, std::uint8_t* out, std::size_t n);
  // out[p] = (|a0-b0| + |a1-b1| + |a2-b2|) / 3 over interleaved RGB
  void (*channel_mean_abs_diff)(const double* a, const double* b, double* out,
                                std::size_t pixels);
  void (*merge)(const MergeInputs& in, double* out, std::size_t n);
  // Leaf reductions of at most kReduceLeaf elements; see reduce_* below.
  double (*leaf_sum)(const double* x, std::size_t n);
  double (*leaf_sum_sq_diff)(const double* a, const double* b, std::size_t n);
  double (*leaf_sum_abs_diff)(const double* a, const double* b, std::size_t n);
};

inline constexpr std::size_t kReduceLeaf = 256;

const KernelTable& scalar_table();
#if defined(GMHDR_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

const KernelTable& table_for(Isa isa);
const KernelTable& active();

// Pairwise tree reductions. The tree shape depends only on n; leaves are summed
// with four interleaved accumulators combined as (l0 + l1) + (l2 + l3), then the
// tail in order. Results are bit-reproducible across ISAs.
double reduce_sum(const double* x, std::size_t n, const KernelTable& t = active());
double reduce_sum_sq_diff(const double* a, const double* b, std::size_t n,
                          const KernelTable& t = active());
double reduce_sum_abs_diff(const double* a, const double* b, std::size_t n,
                           const KernelTable& t = active());

}  // namespace gmhdr::kernels

#endif  // GMHDR_KERNELS_H
