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

#include "gmhdr/gainmap.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "gmhdr/error.h"
#include "gmhdr/kernels.h"

namespace gmhdr {
namespace {

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

void require_unit_base(const LinearImage& base, const char* what) {
  if (base.max_value() > 1.0) {
    throw Error(ErrorCode::kDomain,
                std::string(what) + ": base layer must be linear code in [0, 1]");
  }
}

}  // namespace

std::string_view gain_variant_name(GainVariant v) {
  return v == GainVariant::kExp2 ? "exp2" : "mulaw";
}

std::optional<GainVariant> parse_gain_variant(std::string_view name) {
  if (name == "exp2") return GainVariant::kExp2;
  if (name == "mulaw") return GainVariant::kInvMuLaw;
  return std::nullopt;
}

void GainMapMeta::validate() const {
  if (!positive_finite(q_max)) throw Error(ErrorCode::kInvalidArgument, "q_max must be positive");
  if (!positive_finite(alpha)) throw Error(ErrorCode::kInvalidArgument, "alpha must be positive");
  if (!positive_finite(mu)) throw Error(ErrorCode::kInvalidArgument, "mu must be positive");
  if (!(clip_fraction >= 0.0 && clip_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "clip_fraction must lie in [0, 1]");
  }
}

GainMap::GainMap(std::size_t width, std::size_t height, std::vector<std::uint8_t> codes,
                 GainMapMeta meta)
    : width_(width), height_(height), codes_(std::move(codes)), meta_(meta) {
  meta_.validate();
  if (codes_.size() != width_ * height_ * kChannels) {
    throw Error(ErrorCode::kInvalidArgument, "GainMap: code count does not match dimensions");
  }
}

double expansion(double g, const GainMapMeta& meta) {
  const double x = 1.0 + g * meta.q_max;
  return meta.variant == GainVariant::kExp2 ? std::exp2(x) : mulaw_expand_ext(x, meta.mu);
}

double gain_from_ratio(double ratio, const GainMapMeta& meta) {
  const double x =
      meta.variant == GainVariant::kExp2 ? std::log2(ratio) : mulaw_compress_ext(ratio, meta.mu);
  return (x - 1.0) / meta.q_max;
}

LinearImage decode(const LinearImage& base, const GainMap& gm) {
  require_same_dims(base.width(), base.height(), gm.width(), gm.height(), "decode");
  require_unit_base(base, "decode");
  gm.meta().validate();

  // Only 256 distinct multipliers exist.
  std::array<double, 256> lut;
  for (int k = 0; k < 256; ++k) lut[k] = expansion(dequantize8(static_cast<std::uint8_t>(k)), gm.meta());

  std::vector<double> out(base.data().size());
  kernels::active().scale_by_code(base.data().data(), gm.codes().data(), lut.data(),
                                  gm.meta().alpha, out.data(), out.size());
  return LinearImage(base.width(), base.height(), std::move(out));
}

ContinuousGain compute_gain_continuous(const LinearImage& hdr, const LinearImage& base,
                                       const GainMapMeta& meta) {
  require_same_dims(hdr.width(), hdr.height(), base.width(), base.height(),
                    "compute_gain_continuous");
  require_unit_base(base, "compute_gain_continuous");
  meta.validate();

  ContinuousGain out{hdr.width(), hdr.height(), std::vector<double>(hdr.data().size()), 0.0};
  const auto h = hdr.data();
  const auto b = base.data();
  std::size_t clipped_pixels = 0;
  for (std::size_t p = 0; p < hdr.pixel_count(); ++p) {
    bool clipped = false;
    for (std::size_t c = 0; c < kChannels; ++c) {
      const std::size_t i = p * kChannels + c;
      double g = 0.0;
      if (h[i] > 0.0) {
        const double ratio = h[i] / (b[i] + meta.alpha);
        if (!std::isfinite(ratio)) {
          throw Error(ErrorCode::kInvalidValue,
                      "compute_gain_continuous: non-finite ratio at index " + std::to_string(i));
        }
        g = gain_from_ratio(ratio, meta);
        if (g < 0.0 || g > 1.0) clipped = true;
      } else {
        clipped = true;
      }
      out.gains[i] = std::clamp(g, 0.0, 1.0);
    }
    if (clipped) ++clipped_pixels;
  }
  out.clip_fraction = hdr.pixel_count() == 0
                          ? 0.0
                          : static_cast<double>(clipped_pixels) / static_cast<double>(hdr.pixel_count());
  return out;
}

GainMap encode(const LinearImage& hdr, const LinearImage& base, const EncodeOptions& opts) {
  require_same_dims(hdr.width(), hdr.height(), base.width(), base.height(), "encode");
  GainMapMeta meta;
  meta.alpha = opts.alpha;
  meta.variant = opts.variant;
  meta.mu = opts.mu;

  if (opts.q_max) {
    meta.q_max = *opts.q_max;
  } else {
    // Largest exponent above the floor; max is order independent.
    GainMapMeta unit = meta;
    unit.q_max = 1.0;
    double top = -std::numeric_limits<double>::infinity();
    const auto h = hdr.data();
    const auto b = base.data();
    for (std::size_t i = 0; i < h.size(); ++i) {
      if (h[i] > 0.0) top = std::max(top, gain_from_ratio(h[i] / (b[i] + opts.alpha), unit));
    }
    meta.q_max = std::max(kMinQMax, top);
  }
  meta.validate();

  const ContinuousGain gains = compute_gain_continuous(hdr, base, meta);
  meta.clip_fraction = gains.clip_fraction;
  std::vector<std::uint8_t> codes(gains.gains.size());
  kernels::active().quantize_unit(gains.gains.data(), codes.data(), codes.size());
  return GainMap(hdr.width(), hdr.height(), std::move(codes), meta);
}

}  // namespace gmhdr
