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

#include <string>

#include "byte_reader.h"
#include "gmhdr/formats.h"

namespace gmhdr {
namespace {

struct Raster {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> data;
};

Raster read_netpbm(std::span<const std::uint8_t> bytes, std::string_view want_magic,
                   std::size_t channels, const char* format) {
  detail::ByteReader in(bytes, format);
  if (in.remaining() < 2) in.fail(ErrorCode::kBadMagic, "file too short for a signature");
  const std::string_view magic(reinterpret_cast<const char*>(in.take(2).data()), 2);
  if (magic != want_magic) in.fail_at(ErrorCode::kBadMagic, "expected " + std::string(want_magic), 0);

  Raster r;
  std::size_t maxval = 0;
  const std::size_t w_at = in.pos();
  if (!detail::parse_size(in.token(true), r.width)) in.fail_at(ErrorCode::kBadHeader, "malformed width", w_at);
  const std::size_t h_at = in.pos();
  if (!detail::parse_size(in.token(true), r.height)) in.fail_at(ErrorCode::kBadHeader, "malformed height", h_at);
  const std::size_t m_at = in.pos();
  if (!detail::parse_size(in.token(true), maxval)) in.fail_at(ErrorCode::kBadHeader, "malformed maxval", m_at);
  if (r.width == 0 || r.height == 0) in.fail_at(ErrorCode::kBadHeader, "zero dimension", w_at);
  if (maxval == 0 || maxval > 65535) in.fail_at(ErrorCode::kBadHeader, "maxval out of range", m_at);
  if (maxval != 255) in.fail_at(ErrorCode::kUnsupported, "only maxval 255 is supported", m_at);
  if (r.width > kMaxPixels || r.height > kMaxPixels / r.width) {
    in.fail_at(ErrorCode::kUnsupported, "image too large", w_at);
  }
  if (in.at_end() || !detail::is_space(in.peek())) in.fail(ErrorCode::kTruncated, "missing header terminator");
  in.get();

  const std::size_t count = r.width * r.height * channels;
  if (in.remaining() < count) in.fail(ErrorCode::kTruncated, "pixel data shorter than declared");
  const auto body = in.take(count);
  in.require_end();
  r.data.assign(body.begin(), body.end());
  return r;
}

Bytes write_netpbm(std::string_view magic, std::size_t width, std::size_t height,
                   std::span<const std::uint8_t> data) {
  const std::string header =
      std::string(magic) + "\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  Bytes out(header.begin(), header.end());
  out.insert(out.end(), data.begin(), data.end());
  return out;
}

}  // namespace

Ldr8Image read_ppm(std::span<const std::uint8_t> bytes, Transfer transfer) {
  Raster r = read_netpbm(bytes, "P6", kChannels, "ppm");
  return Ldr8Image(r.width, r.height, std::move(r.data), transfer);
}

Bytes write_ppm(const Ldr8Image& img) { return write_netpbm("P6", img.width(), img.height(), img.data()); }

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
  Raster r = read_netpbm(bytes, "P5", 1, "pgm");
  return {r.width, r.height, std::move(r.data)};
}

Bytes write_pgm(const GrayImage& img) {
  if (img.data.size() != img.width * img.height) {
    throw Error(ErrorCode::kInvalidArgument, "pgm: data length does not match dimensions");
  }
  return write_netpbm("P5", img.width, img.height, img.data);
}

BoolMask read_mask_pgm(std::span<const std::uint8_t> bytes) {
  GrayImage g = read_pgm(bytes);
  std::vector<std::uint8_t> bits(g.data.size());
  for (std::size_t i = 0; i < g.data.size(); ++i) {
    if (g.data[i] != 0 && g.data[i] != 255) {
      throw Error(ErrorCode::kInvalidValue, "mask pgm: sample is neither 0 nor 255",
                  bytes.size() - g.data.size() + i);
    }
    bits[i] = g.data[i] ? 1 : 0;
  }
  return BoolMask(g.width, g.height, std::move(bits));
}

Bytes write_mask_pgm(const BoolMask& mask) {
  std::vector<std::uint8_t> data(mask.size());
  for (std::size_t i = 0; i < mask.size(); ++i) data[i] = mask[i] ? 255 : 0;
  return write_netpbm("P5", mask.width(), mask.height(), data);
}

}  // namespace gmhdr
