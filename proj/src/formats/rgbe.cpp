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

// Radiance picture format: text header, resolution string, then one scanline
// per row, either flat 4-byte RGBE pixels or new-style run-length encoded
// (marker 2,2,width_hi,width_lo followed by the four component planes).

#include <algorithm>
#include <cmath>
#include <string>

#include "byte_reader.h"
#include "gmhdr/formats.h"

namespace gmhdr {
namespace {

constexpr std::size_t kMinRleWidth = 8;
constexpr std::size_t kMaxRleWidth = 32767;
constexpr std::size_t kMinRun = 4;
constexpr std::size_t kMaxRun = 127;
constexpr std::size_t kMaxDump = 128;
constexpr std::string_view kFormatLine = "FORMAT=32-bit_rle_rgbe";

std::string_view trim_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

void parse_resolution(detail::ByteReader& in, std::size_t& width, std::size_t& height) {
  const std::size_t at = in.pos();
  const std::string_view line = trim_cr(in.line());
  // "-Y <h> +X <w>" is the only orientation supported.
  std::string_view parts[4];
  std::size_t n = 0, i = 0;
  while (i < line.size() && n < 5) {
    while (i < line.size() && line[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    if (i > start) {
      if (n == 4) in.fail_at(ErrorCode::kBadHeader, "malformed resolution line", at);
      parts[n++] = line.substr(start, i - start);
    }
  }
  if (n != 4) in.fail_at(ErrorCode::kBadHeader, "malformed resolution line", at);
  const bool known_axes = (parts[0] == "-Y" || parts[0] == "+Y") && (parts[2] == "+X" || parts[2] == "-X");
  const bool swapped = (parts[0] == "-X" || parts[0] == "+X") && (parts[2] == "+Y" || parts[2] == "-Y");
  if (swapped || (known_axes && !(parts[0] == "-Y" && parts[2] == "+X"))) {
    in.fail_at(ErrorCode::kUnsupported, "only -Y +X orientation is supported", at);
  }
  if (!known_axes || !detail::parse_size(parts[1], height) || !detail::parse_size(parts[3], width) ||
      width == 0 || height == 0) {
    in.fail_at(ErrorCode::kBadHeader, "malformed resolution line", at);
  }
  if (width > kMaxPixels || height > kMaxPixels / width) {
    in.fail_at(ErrorCode::kUnsupported, "image too large", at);
  }
}

void read_rle_scanline(detail::ByteReader& in, std::size_t width, std::uint8_t* planes) {
  // planes: 4 consecutive component planes of `width` bytes.
  const std::size_t marker = in.pos();
  in.take(2);
  const std::size_t hi = in.get();
  const std::size_t lo = in.get();
  if (((hi << 8) | lo) != width) {
    in.fail_at(ErrorCode::kBadHeader, "scanline width does not match resolution", marker);
  }
  for (int c = 0; c < 4; ++c) {
    std::uint8_t* plane = planes + c * width;
    std::size_t x = 0;
    while (x < width) {
      const std::size_t at = in.pos();
      std::size_t count = in.get();
      if (count > 128) {
        count -= 128;
        if (x + count > width) in.fail_at(ErrorCode::kRleOverflow, "run overflows scanline", at);
        std::fill_n(plane + x, count, in.get());
      } else {
        if (count == 0) in.fail_at(ErrorCode::kRleOverflow, "zero-length literal", at);
        if (x + count > width) in.fail_at(ErrorCode::kRleOverflow, "literal overflows scanline", at);
        const auto lit = in.take(count);
        std::copy(lit.begin(), lit.end(), plane + x);
      }
      x += count;
    }
  }
}

void write_rle_plane(const std::uint8_t* d, std::size_t n, Bytes& out) {
  std::size_t j = 0;
  while (j < n) {
    std::size_t beg = j;
    std::size_t run = 0;
    while (beg < n) {
      run = 1;
      while (run < kMaxRun && beg + run < n && d[beg + run] == d[beg]) ++run;
      if (run >= kMinRun) break;
      beg += run;
    }
    if (beg >= n) run = 0;
    while (j < beg) {
      const std::size_t dump = std::min(kMaxDump, beg - j);
      out.push_back(static_cast<std::uint8_t>(dump));
      out.insert(out.end(), d + j, d + j + dump);
      j += dump;
    }
    if (run >= kMinRun) {
      out.push_back(static_cast<std::uint8_t>(128 + run));
      out.push_back(d[beg]);
      j = beg + run;
    }
  }
}

}  // namespace

std::array<std::uint8_t, 4> rgbe_encode_pixel(double r, double g, double b) {
  const double maxc = std::max({r, g, b});
  if (!(maxc >= 1e-38)) return {0, 0, 0, 0};
  int e = 0;
  std::frexp(maxc, &e);
  if (e > 127) e = 127;  // saturate beyond the largest representable exponent
  auto mantissas = [&](int exp) {
    const double scale = std::ldexp(1.0, 8 - exp);
    return std::array<double, 3>{std::round(r * scale), std::round(g * scale), std::round(b * scale)};
  };
  auto m = mantissas(e);
  if (std::max({m[0], m[1], m[2]}) >= 256.0 && e < 127) m = mantissas(++e);
  auto clamp8 = [](double v) { return static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0)); };
  return {clamp8(m[0]), clamp8(m[1]), clamp8(m[2]), static_cast<std::uint8_t>(e + 128)};
}

std::array<double, 3> rgbe_decode_pixel(const std::uint8_t* rgbe) {
  if (rgbe[3] == 0) return {0.0, 0.0, 0.0};
  const int shift = static_cast<int>(rgbe[3]) - (128 + 8);
  return {std::ldexp(static_cast<double>(rgbe[0]), shift),
          std::ldexp(static_cast<double>(rgbe[1]), shift),
          std::ldexp(static_cast<double>(rgbe[2]), shift)};
}

LinearImage read_rgbe(std::span<const std::uint8_t> bytes) {
  detail::ByteReader in(bytes, "rgbe");
  {
    if (in.remaining() < 2 || in.peek() != '#') in.fail(ErrorCode::kBadMagic, "missing #? signature");
    const std::string_view magic = trim_cr(in.line());
    if (magic != "#?RADIANCE" && magic != "#?RGBE") {
      in.fail_at(ErrorCode::kBadMagic, "missing #?RADIANCE or #?RGBE signature", 0);
    }
  }
  for (;;) {
    const std::size_t at = in.pos();
    const std::string_view line = trim_cr(in.line());
    if (line.empty()) break;
    if (line.substr(0, 7) == "FORMAT=" && line != kFormatLine) {
      in.fail_at(ErrorCode::kUnsupported, "unsupported " + std::string(line), at);
    }
  }
  std::size_t width = 0, height = 0;
  parse_resolution(in, width, height);

  // Cheapest legal scanline: 4 marker bytes plus one 2-byte run per 127 pixels
  // per plane. Reject impossible sizes before allocating.
  const bool rle_width = width >= kMinRleWidth && width <= kMaxRleWidth;
  const std::size_t min_line = rle_width ? 4 + 4 * 2 * ((width + kMaxRun - 1) / kMaxRun) : 4 * width;
  if (in.remaining() / min_line < height) in.fail(ErrorCode::kTruncated, "file too short for resolution");

  std::vector<double> data(width * height * kChannels);
  std::vector<std::uint8_t> planes(4 * width);
  for (std::size_t y = 0; y < height; ++y) {
    const bool rle = rle_width && in.remaining() >= 4 && in.here()[0] == 2 && in.here()[1] == 2 &&
                     (in.here()[2] & 0x80) == 0;
    if (rle) {
      read_rle_scanline(in, width, planes.data());
      for (std::size_t x = 0; x < width; ++x) {
        const std::uint8_t px[4] = {planes[x], planes[width + x], planes[2 * width + x], planes[3 * width + x]};
        const auto v = rgbe_decode_pixel(px);
        std::copy(v.begin(), v.end(), data.begin() + (y * width + x) * kChannels);
      }
    } else {
      const auto row = in.take(4 * width);
      for (std::size_t x = 0; x < width; ++x) {
        const auto v = rgbe_decode_pixel(row.data() + 4 * x);
        std::copy(v.begin(), v.end(), data.begin() + (y * width + x) * kChannels);
      }
    }
  }
  in.require_end();
  return LinearImage(width, height, std::move(data));
}

Bytes write_rgbe(const LinearImage& img) {
  const std::string header = "#?RADIANCE\n" + std::string(kFormatLine) + "\n\n-Y " +
                             std::to_string(img.height()) + " +X " + std::to_string(img.width()) + "\n";
  Bytes out(header.begin(), header.end());
  const std::size_t width = img.width();
  const bool rle = width >= kMinRleWidth && width <= kMaxRleWidth;
  std::vector<std::uint8_t> planes(4 * width);
  const auto d = img.data();
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      const double* p = d.data() + (y * width + x) * kChannels;
      const auto px = rgbe_encode_pixel(p[0], p[1], p[2]);
      if (rle) {
        for (int c = 0; c < 4; ++c) planes[c * width + x] = px[c];
      } else {
        out.insert(out.end(), px.begin(), px.end());
      }
    }
    if (rle) {
      out.push_back(2);
      out.push_back(2);
      out.push_back(static_cast<std::uint8_t>(width >> 8));
      out.push_back(static_cast<std::uint8_t>(width & 0xff));
      for (int c = 0; c < 4; ++c) write_rle_plane(planes.data() + c * width, width, out);
    }
  }
  return out;
}

}  // namespace gmhdr
