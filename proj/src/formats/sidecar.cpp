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
#include <array>
#include <charconv>
#include <cmath>
#include <string>

#include "byte_reader.h"
#include "gmhdr/formats.h"

namespace gmhdr {
namespace {

constexpr std::array<std::string_view, 8> kRequiredKeys = {
    "format_version", "variant", "q_max", "alpha", "mu", "clip_fraction", "width", "height"};

bool is_required(std::string_view key) {
  return std::find(kRequiredKeys.begin(), kRequiredKeys.end(), key) != kRequiredKeys.end();
}

}  // namespace

std::optional<std::string> SidecarMeta::get(std::string_view key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

void SidecarMeta::set(std::string key, std::string value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = std::move(value);
      return;
    }
  }
  entries_.emplace_back(std::move(key), std::move(value));
}

SidecarMeta parse_sidecar(std::string_view text) {
  SidecarMeta meta;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      throw Error(ErrorCode::kTruncated, "sidecar: last line is not newline-terminated", pos);
    }
    const std::string_view line = text.substr(pos, nl - pos);
    for (std::size_t i = 0; i < line.size(); ++i) {
      const auto c = static_cast<unsigned char>(line[i]);
      if (c >= 0x80 || (c < 0x20 && c != '\t')) {
        throw Error(ErrorCode::kBadHeader, "sidecar: non-printable or non-ASCII byte", pos + i);
      }
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error(ErrorCode::kBadHeader, "sidecar: expected key=value", pos);
    }
    std::string key(line.substr(0, eq));
    if (meta.contains(key)) {
      throw Error(ErrorCode::kDuplicateKey, "sidecar: duplicate key '" + key + "'", pos);
    }
    meta.set(std::move(key), std::string(line.substr(eq + 1)));
    pos = nl + 1;
  }
  return meta;
}

std::string format_sidecar(const SidecarMeta& meta) {
  std::string out;
  for (const auto& [k, v] : meta.entries()) out += k + "=" + v + "\n";
  return out;
}

std::string sidecar_require(const SidecarMeta& meta, std::string_view key) {
  auto v = meta.get(key);
  if (!v) throw Error(ErrorCode::kMissingKey, "sidecar: missing key '" + std::string(key) + "'");
  return *v;
}

double sidecar_real(const SidecarMeta& meta, std::string_view key) {
  const std::string v = sidecar_require(meta, key);
  double out = 0.0;
  if (!detail::parse_real(v, out) || !std::isfinite(out)) {
    throw Error(ErrorCode::kBadNumber, "sidecar: key '" + std::string(key) + "' is not a finite number");
  }
  return out;
}

std::size_t sidecar_size(const SidecarMeta& meta, std::string_view key) {
  const std::string v = sidecar_require(meta, key);
  std::size_t out = 0;
  if (!detail::parse_size(v, out)) {
    throw Error(ErrorCode::kBadNumber, "sidecar: key '" + std::string(key) + "' is not a size");
  }
  return out;
}

std::string format_sidecar_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

GainMapSidecar read_sidecar(std::string_view text) {
  const SidecarMeta meta = parse_sidecar(text);
  GainMapSidecar out;
  const std::size_t version = sidecar_size(meta, "format_version");
  if (version != kSidecarFormatVersion) {
    throw Error(ErrorCode::kUnsupported, "sidecar: format_version " + std::to_string(version) + " is not supported");
  }
  const std::string variant = sidecar_require(meta, "variant");
  const auto parsed = parse_gain_variant(variant);
  if (!parsed) throw Error(ErrorCode::kBadHeader, "sidecar: key 'variant' has unknown value '" + variant + "'");
  out.meta.variant = *parsed;
  out.meta.q_max = sidecar_real(meta, "q_max");
  out.meta.alpha = sidecar_real(meta, "alpha");
  out.meta.mu = sidecar_real(meta, "mu");
  out.meta.clip_fraction = sidecar_real(meta, "clip_fraction");
  out.width = sidecar_size(meta, "width");
  out.height = sidecar_size(meta, "height");
  try {
    out.meta.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kInvalidValue, std::string("sidecar: ") + e.what());
  }
  for (const auto& [k, v] : meta.entries()) {
    if (!is_required(k)) out.extras.set(k, v);
  }
  return out;
}

std::string write_sidecar(const GainMapSidecar& s) {
  SidecarMeta meta;
  meta.set("format_version", std::to_string(kSidecarFormatVersion));
  meta.set("variant", std::string(gain_variant_name(s.meta.variant)));
  meta.set("q_max", format_sidecar_real(s.meta.q_max));
  meta.set("alpha", format_sidecar_real(s.meta.alpha));
  meta.set("mu", format_sidecar_real(s.meta.mu));
  meta.set("clip_fraction", format_sidecar_real(s.meta.clip_fraction));
  meta.set("width", std::to_string(s.width));
  meta.set("height", std::to_string(s.height));
  for (const auto& [k, v] : s.extras.entries()) {
    if (!is_required(k)) meta.set(k, v);
  }
  return format_sidecar(meta);
}

std::filesystem::path sidecar_path_for(const std::filesystem::path& gain_map_path) {
  std::filesystem::path p = gain_map_path;
  p += ".meta";
  return p;
}

GainMap gain_map_from_files(std::span<const std::uint8_t> ppm, std::string_view sidecar_text) {
  const GainMapSidecar side = read_sidecar(sidecar_text);
  Ldr8Image codes = read_ppm(ppm, Transfer::kLinearCode);
  if (codes.width() != side.width || codes.height() != side.height) {
    throw Error(ErrorCode::kMetadataMismatch, "gain map image size does not match its sidecar");
  }
  return GainMap(codes.width(), codes.height(),
                 std::vector<std::uint8_t>(codes.data().begin(), codes.data().end()), side.meta);
}

}  // namespace gmhdr
