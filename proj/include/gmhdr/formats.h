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

#ifndef GMHDR_FORMATS_H
#define GMHDR_FORMATS_H

// Readers and writers for the on-disk formats. Readers take the whole file as a
// byte span and throw gmhdr::Error with a parse code and byte offset on any
// malformed input, including bytes left over after the declared payload.
// Writers are deterministic.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gmhdr/gainmap.h"
#include "gmhdr/image.h"

namespace gmhdr {

using Bytes = std::vector<std::uint8_t>;

// Upper bound on width * height accepted by every reader.
inline constexpr std::size_t kMaxPixels = std::size_t{1} << 28;

// ---- Radiance RGBE (.hdr) --------------------------------------------------

std::array<std::uint8_t, 4> rgbe_encode_pixel(double r, double g, double b);
std::array<double, 3> rgbe_decode_pixel(const std::uint8_t* rgbe);

LinearImage read_rgbe(std::span<const std::uint8_t> bytes);
// New-style RLE scanlines for widths in [8, 32767], flat otherwise.
Bytes write_rgbe(const LinearImage& img);

// ---- Portable float map (.pfm) ----------------------------------------------

enum class ByteOrder { kLittle, kBig };

LinearImage read_pfm(std::span<const std::uint8_t> bytes);
// Values are stored as float32; anything above FLT_MAX is rejected.
Bytes write_pfm(const LinearImage& img, ByteOrder order = ByteOrder::kLittle);

// ---- Binary netpbm (.ppm P6 / .pgm P5), maxval 255 ---------------------------

struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> data;
  bool operator==(const GrayImage&) const = default;
};

Ldr8Image read_ppm(std::span<const std::uint8_t> bytes,
                   Transfer transfer = Transfer::kGammaEncoded);
Bytes write_ppm(const Ldr8Image& img);
GrayImage read_pgm(std::span<const std::uint8_t> bytes);
Bytes write_pgm(const GrayImage& img);

// Masks are P5 planes with true = 255 and false = 0; other values are rejected.
BoolMask read_mask_pgm(std::span<const std::uint8_t> bytes);
Bytes write_mask_pgm(const BoolMask& mask);

// ---- key=value sidecar --------------------------------------------------------

// Ordered key=value lines: ASCII, one key per line, unique keys, each line
// terminated by '\n'.
class SidecarMeta {
 public:
  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }
  std::optional<std::string> get(std::string_view key) const;
  bool contains(std::string_view key) const { return get(key).has_value(); }
  // Replaces the value of an existing key in place, otherwise appends.
  void set(std::string key, std::string value);

  bool operator==(const SidecarMeta&) const = default;

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

SidecarMeta parse_sidecar(std::string_view text);
std::string format_sidecar(const SidecarMeta& meta);

// Required-key accessors; errors name the key.
std::string sidecar_require(const SidecarMeta& meta, std::string_view key);
double sidecar_real(const SidecarMeta& meta, std::string_view key);
std::size_t sidecar_size(const SidecarMeta& meta, std::string_view key);

// 17 significant digits, as printf("%.17g").
std::string format_sidecar_real(double v);

inline constexpr int kSidecarFormatVersion = 1;

struct GainMapSidecar {
  GainMapMeta meta;
  std::size_t width = 0;
  std::size_t height = 0;
  SidecarMeta extras;  // keys this version does not know, preserved verbatim
};

GainMapSidecar read_sidecar(std::string_view text);
std::string write_sidecar(const GainMapSidecar& sidecar);

// Gain maps persist as a P6 PPM of codes plus "<ppm path>.meta".
std::filesystem::path sidecar_path_for(const std::filesystem::path& gain_map_path);
GainMap gain_map_from_files(std::span<const std::uint8_t> ppm, std::string_view sidecar_text);

// ---- files ---------------------------------------------------------------------

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text_file(const std::filesystem::path& path, std::string_view text);

enum class HdrFormat { kRgbe, kPfm };

std::optional<HdrFormat> parse_hdr_format(std::string_view name);
// By extension: .hdr/.rgbe -> RGBE, .pfm -> PFM.
std::optional<HdrFormat> hdr_format_for(const std::filesystem::path& path);

LinearImage read_hdr_file(const std::filesystem::path& path,
                          std::optional<HdrFormat> format = std::nullopt);
void write_hdr_file(const std::filesystem::path& path, const LinearImage& img,
                    std::optional<HdrFormat> format = std::nullopt);

}  // namespace gmhdr

#endif  // GMHDR_FORMATS_H
