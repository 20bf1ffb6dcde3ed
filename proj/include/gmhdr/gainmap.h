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

#ifndef GMHDR_GAINMAP_H
#define GMHDR_GAINMAP_H

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gmhdr/companding.h"
#include "gmhdr/image.h"

namespace gmhdr {

/*
 * Dual-layer reconstruction:
 *
 *   hdr = (base + alpha) * M(1 + g * q_max)
 *
 * where g in [0, 1] is the dequantized 8-bit gain code and M is 2^x (kExp2)
 * or the mu-law expansion ((1 + mu)^x - 1) / mu (kInvMuLaw). The offset "1 +"
 * puts a floor under the multiplier: 2 for kExp2, 1 for kInvMuLaw.
 */
enum class GainVariant { kExp2, kInvMuLaw };

std::string_view gain_variant_name(GainVariant v);
std::optional<GainVariant> parse_gain_variant(std::string_view name);

inline constexpr double kDefaultAlpha = 1.0 / 64.0;
inline constexpr double kMinQMax = 1e-6;

struct GainMapMeta {
  double q_max = 1.0;
  double alpha = kDefaultAlpha;
  GainVariant variant = GainVariant::kExp2;
  double mu = kDefaultMu;
  // Fraction of pixels whose continuous gain left [0, 1] before clamping.
  double clip_fraction = 0.0;

  // Throws kInvalidArgument when an invariant is broken.
  void validate() const;
  bool operator==(const GainMapMeta&) const = default;
};

class GainMap {
 public:
  GainMap() = default;
  GainMap(std::size_t width, std::size_t height, std::vector<std::uint8_t> codes,
          GainMapMeta meta);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  const GainMapMeta& meta() const { return meta_; }
  std::span<const std::uint8_t> codes() const { return codes_; }
  std::uint8_t at(std::size_t x, std::size_t y, std::size_t c) const {
    return codes_[(y * width_ + x) * kChannels + c];
  }

  bool operator==(const GainMap&) const = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> codes_;
  GainMapMeta meta_;
};

// Multiplier for a normalized gain g in [0, 1].
double expansion(double g, const GainMapMeta& meta);

// The continuous inverse of expansion(): maps a ratio hdr / (base + alpha) to
// the unclamped normalized gain.
double gain_from_ratio(double ratio, const GainMapMeta& meta);

LinearImage decode(const LinearImage& base, const GainMap& gm);

struct ContinuousGain {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> gains;  // interleaved RGB, clamped to [0, 1]
  double clip_fraction = 0.0;
};

ContinuousGain compute_gain_continuous(const LinearImage& hdr, const LinearImage& base,
                                       const GainMapMeta& meta);

struct EncodeOptions {
  std::optional<double> q_max;  // nullopt: choose per image
  GainVariant variant = GainVariant::kExp2;
  double mu = kDefaultMu;
  double alpha = kDefaultAlpha;
};

GainMap encode(const LinearImage& hdr, const LinearImage& base, const EncodeOptions& opts = {});

}  // namespace gmhdr

#endif  // GMHDR_GAINMAP_H
