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


#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <vector>

#include <gtest/gtest.h>

#include "gmhdr/error.h"
#include "gmhdr/kernels.h"
#include "support/scenes.h"

namespace gmhdr::kernels {
namespace {

using gmhdr::testing::Rng;

constexpr std::size_t kSizes[] = {0, 1, 3, 4, 5, 7, 8, 15, 16, 17, 255, 256, 257, 1000, 4099};

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof(double)) == 0; }

void expect_bitwise(const std::vector<double>& a, const std::vector<double>& b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_TRUE(same_bits(a[i], b[i])) << "index " << i << ": " << a[i] << " vs " << b[i];
  }
}

std::vector<double> randoms(Rng& rng, std::size_t n, double lo, double hi) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(lo, hi);
  return v;
}

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
#if defined(GMHDR_HAVE_AVX2)
    if (!isa_available(Isa::kAvx2)) GTEST_SKIP() << "CPU lacks AVX2";
#else
    GTEST_SKIP() << "built without AVX2 kernels";
#endif
  }
  const KernelTable& s = scalar_table();
  const KernelTable& v = table_for(isa_available(Isa::kAvx2) ? Isa::kAvx2 : Isa::kScalar);
};

TEST_F(KernelEquivalence, ScaleByCode) {
  Rng rng(101);
  const auto lut = randoms(rng, 256, 1.0, 40.0);
  for (std::size_t n : kSizes) {
    const auto base = randoms(rng, n, 0.0, 1.0);
    std::vector<std::uint8_t> codes(n);
    for (auto& c : codes) c = rng.byte();
    std::vector<double> a(n), b(n);
    s.scale_by_code(base.data(), codes.data(), lut.data(), 1.0 / 64, a.data(), n);
    v.scale_by_code(base.data(), codes.data(), lut.data(), 1.0 / 64, b.data(), n);
    expect_bitwise(a, b);
  }
}

TEST_F(KernelEquivalence, AxpbyAndSubScaledDiv) {
  Rng rng(102);
  for (std::size_t n : kSizes) {
    const auto x = randoms(rng, n, -5.0, 5.0);
    const auto y = randoms(rng, n, -5.0, 5.0);
    std::vector<double> a(n), b(n);
    s.axpby(x.data(), y.data(), 0.3, 0.7, a.data(), n);
    v.axpby(x.data(), y.data(), 0.3, 0.7, b.data(), n);
    expect_bitwise(a, b);
    s.sub_scaled_div(x.data(), y.data(), 0.99, 0.0123, a.data(), n);
    v.sub_scaled_div(x.data(), y.data(), 0.99, 0.0123, b.data(), n);
    expect_bitwise(a, b);
  }
}

TEST_F(KernelEquivalence, QuantizeUnitIncludingTiesAndSpecials) {
  Rng rng(103);
  for (std::size_t n : kSizes) {
    auto x = randoms(rng, n, -0.2, 1.2);
    for (std::size_t i = 0; i < n; i += 5) x[i] = (static_cast<double>(rng.index(255)) + 0.5) / 255.0;
    if (n > 2) x[1] = std::numeric_limits<double>::quiet_NaN();
    if (n > 3) x[2] = std::numeric_limits<double>::infinity();
    std::vector<std::uint8_t> a(n), b(n);
    s.quantize_unit(x.data(), a.data(), n);
    v.quantize_unit(x.data(), b.data(), n);
    EXPECT_EQ(a, b) << "n=" << n;
  }
}

TEST_F(KernelEquivalence, ChannelMeanAbsDiff) {
  Rng rng(104);
  for (std::size_t n : kSizes) {
    const auto x = randoms(rng, 3 * n, 0.0, 3.0);
    const auto y = randoms(rng, 3 * n, 0.0, 3.0);
    std::vector<double> a(n), b(n);
    s.channel_mean_abs_diff(x.data(), y.data(), a.data(), n);
    v.channel_mean_abs_diff(x.data(), y.data(), b.data(), n);
    expect_bitwise(a, b);
  }
}

TEST_F(KernelEquivalence, Merge) {
  Rng rng(105);
  constexpr std::size_t kFrames = 3;
  std::vector<std::vector<double>> luts(kFrames);
  std::vector<const double*> lut_ptrs;
  for (auto& l : luts) {
    l = randoms(rng, 256, 0.0, 4.0);
    lut_ptrs.push_back(l.data());
  }
  std::vector<double> weights(256);
  for (std::size_t c = 0; c < 256; ++c) weights[c] = std::max(1e-3, 1.0 - std::fabs(2.0 * c / 255.0 - 1.0));
  for (std::size_t n : kSizes) {
    std::vector<std::vector<std::uint8_t>> codes(kFrames, std::vector<std::uint8_t>(n));
    std::vector<const std::uint8_t*> code_ptrs;
    for (auto& f : codes) {
      for (auto& c : f) {
        const auto r = rng.index(4);
        c = r == 0 ? 0 : r == 1 ? 255 : rng.byte();
      }
      code_ptrs.push_back(f.data());
    }
    const MergeInputs in{kFrames, code_ptrs.data(), lut_ptrs.data(), weights.data(), 1e-3, 1};
    std::vector<double> a(n), b(n);
    s.merge(in, a.data(), n);
    v.merge(in, b.data(), n);
    expect_bitwise(a, b);
  }
}

TEST_F(KernelEquivalence, LeafAndTreeReductions) {
  Rng rng(106);
  for (std::size_t n : kSizes) {
    const auto x = randoms(rng, n, -1e3, 1e3);
    const auto y = randoms(rng, n, -1e3, 1e3);
    const std::size_t leaf = std::min(n, kReduceLeaf);
    EXPECT_TRUE(same_bits(s.leaf_sum(x.data(), leaf), v.leaf_sum(x.data(), leaf)));
    EXPECT_TRUE(same_bits(s.leaf_sum_sq_diff(x.data(), y.data(), leaf), v.leaf_sum_sq_diff(x.data(), y.data(), leaf)));
    EXPECT_TRUE(same_bits(s.leaf_sum_abs_diff(x.data(), y.data(), leaf), v.leaf_sum_abs_diff(x.data(), y.data(), leaf)));
    EXPECT_TRUE(same_bits(reduce_sum(x.data(), n, s), reduce_sum(x.data(), n, v)));
    EXPECT_TRUE(same_bits(reduce_sum_sq_diff(x.data(), y.data(), n, s), reduce_sum_sq_diff(x.data(), y.data(), n, v)));
    EXPECT_TRUE(same_bits(reduce_sum_abs_diff(x.data(), y.data(), n, s), reduce_sum_abs_diff(x.data(), y.data(), n, v)));
  }
}

TEST(Reductions, ScalarValuesAreAccurate) {
  std::vector<double> ones(10007, 1.0);
  EXPECT_EQ(reduce_sum(ones.data(), ones.size(), scalar_table()), 10007.0);
  EXPECT_EQ(reduce_sum(ones.data(), 0, scalar_table()), 0.0);
  std::vector<double> a = {1, 2, 3}, b = {2, 0, 3};
  EXPECT_EQ(reduce_sum_sq_diff(a.data(), b.data(), 3, scalar_table()), 5.0);
  EXPECT_EQ(reduce_sum_abs_diff(a.data(), b.data(), 3, scalar_table()), 3.0);
  Rng rng(107);
  const auto x = randoms(rng, 5000, 0.0, 1.0);
  long double exact = 0;
  for (double d : x) exact += d;
  EXPECT_NEAR(reduce_sum(x.data(), x.size(), scalar_table()), static_cast<double>(exact), 1e-10);
}

TEST(Dispatch, NamesAndOverride) {
  EXPECT_EQ(parse_isa("scalar"), Isa::kScalar);
  EXPECT_EQ(parse_isa("avx2"), Isa::kAvx2);
  EXPECT_FALSE(parse_isa("neon"));
  EXPECT_EQ(isa_name(Isa::kScalar), "scalar");
  EXPECT_TRUE(isa_available(Isa::kScalar));
  EXPECT_EQ(active_isa(), detect_isa());

  set_isa_override(Isa::kScalar);
  EXPECT_EQ(active_isa(), Isa::kScalar);
  EXPECT_EQ(active().isa, Isa::kScalar);
  set_isa_override(std::nullopt);
  EXPECT_EQ(active_isa(), detect_isa());

  if (!isa_available(Isa::kAvx2)) {
    EXPECT_THROW(set_isa_override(Isa::kAvx2), gmhdr::Error);
  } else {
    set_isa_override(Isa::kAvx2);
    EXPECT_EQ(active().isa, Isa::kAvx2);
    set_isa_override(std::nullopt);
  }
}

}  // namespace
}  // namespace gmhdr::kernels
