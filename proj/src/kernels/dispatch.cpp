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

#include <atomic>
#include <string>

#include "gmhdr/error.h"
#include "gmhdr/kernels.h"

namespace gmhdr::kernels {
namespace {

// -1: automatic, otherwise the forced Isa value.
std::atomic<int> g_override{-1};

template <typename Leaf>
double pairwise(std::size_t begin, std::size_t end, Leaf leaf) {
  const std::size_t n = end - begin;
  if (n <= kReduceLeaf) return leaf(begin, n);
  // Split on a multiple of the leaf size so the tree depends only on n.
  const std::size_t half = ((n / 2 + kReduceLeaf - 1) / kReduceLeaf) * kReduceLeaf;
  return pairwise(begin, begin + half, leaf) + pairwise(begin + half, end, leaf);
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "scalar";
}

std::optional<Isa> parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::kScalar;
  if (name == "avx2") return Isa::kAvx2;
  return std::nullopt;
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return true;
    case Isa::kAvx2:
#if defined(GMHDR_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa detect_isa() {
  static const Isa detected = isa_available(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar;
  return detected;
}

void set_isa_override(std::optional<Isa> isa) {
  if (isa && !isa_available(*isa)) {
    throw Error(ErrorCode::kInvalidArgument,
                "SIMD variant '" + std::string(isa_name(*isa)) + "' is not available on this machine");
  }
  g_override.store(isa ? static_cast<int>(*isa) : -1);
}

Isa active_isa() {
  const int forced = g_override.load();
  return forced < 0 ? detect_isa() : static_cast<Isa>(forced);
}

const KernelTable& table_for(Isa isa) {
#if defined(GMHDR_HAVE_AVX2)
  if (isa == Isa::kAvx2) return avx2_table();
#endif
  (void)isa;
  return scalar_table();
}

const KernelTable& active() { return table_for(active_isa()); }

double reduce_sum(const double* x, std::size_t n, const KernelTable& t) {
  return pairwise(0, n, [&](std::size_t b, std::size_t len) { return t.leaf_sum(x + b, len); });
}

double reduce_sum_sq_diff(const double* a, const double* b, std::size_t n,
                          const KernelTable& t) {
  return pairwise(0, n, [&](std::size_t o, std::size_t len) {
    return t.leaf_sum_sq_diff(a + o, b + o, len);
  });
}

double reduce_sum_abs_diff(const double* a, const double* b, std::size_t n,
                           const KernelTable& t) {
  return pairwise(0, n, [&](std::size_t o, std::size_t len) {
    return t.leaf_sum_abs_diff(a + o, b + o, len);
  });
}

}  // namespace gmhdr::kernels
