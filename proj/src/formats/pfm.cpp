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

#include <bit>
#include <cfloat>
#include <cmath>
#include <cstring>
#include <string>

#include "byte_reader.h"
#include "gmhdr/formats.h"

namespace gmhdr {
namespace {

std::uint32_t load_u32(const std::uint8_t* p, ByteOrder order) {
  if (order == ByteOrder::kLittle) {
    return std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 | std::uint32_t{p[2]} << 16 |
           std::uint32_t{p[3]} << 24;
  }
  return std::uint32_t{p[3]} | std::uint32_t{p[2]} << 8 | std::uint32_t{p[1]} << 16 |
         std::uint32_t{p[0]} << 24;
}

void store_u32(std::uint32_t v, ByteOrder order, Bytes& out) {
  for (int i = 0; i < 4; ++i) {
    const int shift = order == ByteOrder::kLittle ? 8 * i : 8 * (3 - i);
    out.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

}  // namespace

LinearImage read_pfm(std::span<const std::uint8_t> bytes) {
  detail::ByteReader in(bytes, "pfm");
  const std::string_view magic = in.token(false);
  if (magic == "Pf") in.fail_at(ErrorCode::kUnsupported, "grayscale PFM (Pf) is not supported", 0);
  if (magic != "PF") in.fail_at(ErrorCode::kBadMagic, "expected PF signature", 0);

  std::size_t width = 0, height = 0;
  const std::size_t dims_at = in.pos();
  if (!detail::parse_size(in.token(false), width) || !detail::parse_size(in.token(false), height) ||
      width == 0 || height == 0) {
    in.fail_at(ErrorCode::kBadHeader, "malformed dimensions", dims_at);
  }
  if (width > kMaxPixels || height > kMaxPixels / width) {
    in.fail_at(ErrorCode::kUnsupported, "image too large", dims_at);
  }

  const std::size_t scale_at = in.pos();
  double scale = 0.0;
  if (!detail::parse_real(in.token(false), scale)) in.fail_at(ErrorCode::kBadNumber, "unparsable scale", scale_at);
  if (!std::isfinite(scale) || scale == 0.0) {
    in.fail_at(ErrorCode::kBadHeader, "scale must be finite and nonzero", scale_at);
  }
  if (in.at_end() || !detail::is_space(in.peek())) in.fail(ErrorCode::kTruncated, "missing header terminator");
  in.get();

  const ByteOrder order = scale < 0 ? ByteOrder::kLittle : ByteOrder::kBig;
  const std::size_t count = width * height * kChannels;
  if (in.remaining() / 4 < count) in.fail(ErrorCode::kTruncated, "pixel data shorter than declared");
  const std::size_t data_at = in.pos();
  const auto raw = in.take(count * 4);
  in.require_end();

  std::vector<double> data(count);
  for (std::size_t row = 0; row < height; ++row) {
    // Stored rows run bottom to top.
    const std::size_t y = height - 1 - row;
    for (std::size_t k = 0; k < width * kChannels; ++k) {
      const std::size_t src = row * width * kChannels + k;
      const float v = std::bit_cast<float>(load_u32(raw.data() + 4 * src, order));
      if (!std::isfinite(v) || v < 0.0f) {
        in.fail_at(ErrorCode::kInvalidValue, "negative or non-finite sample", data_at + 4 * src);
      }
      data[y * width * kChannels + k] = static_cast<double>(v);
    }
  }
  return LinearImage(width, height, std::move(data));
}

Bytes write_pfm(const LinearImage& img, ByteOrder order) {
  const std::string header = "PF\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) +
                             (order == ByteOrder::kLittle ? "\n-1.0\n" : "\n1.0\n");
  Bytes out(header.begin(), header.end());
  out.reserve(out.size() + img.data().size() * 4);
  const std::size_t row_len = img.width() * kChannels;
  for (std::size_t row = 0; row < img.height(); ++row) {
    const std::size_t y = img.height() - 1 - row;
    for (std::size_t k = 0; k < row_len; ++k) {
      const double v = img.data()[y * row_len + k];
      if (v > FLT_MAX) {
        throw Error(ErrorCode::kInvalidValue, "pfm: value " + std::to_string(v) + " exceeds float range");
      }
      store_u32(std::bit_cast<std::uint32_t>(static_cast<float>(v)), order, out);
    }
  }
  return out;
}

}  // namespace gmhdr
