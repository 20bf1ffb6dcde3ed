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
#include <cctype>
#include <fstream>
#include <iterator>
#include <string>

#include "gmhdr/error.h"
#include "gmhdr/formats.h"

namespace gmhdr {

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for reading");
  Bytes data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  if (f.bad()) throw Error(ErrorCode::kIo, "error while reading '" + path.string() + "'");
  return data;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for writing");
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw Error(ErrorCode::kIo, "error while writing '" + path.string() + "'");
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  write_file(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

std::optional<HdrFormat> parse_hdr_format(std::string_view name) {
  if (name == "rgbe" || name == "hdr") return HdrFormat::kRgbe;
  if (name == "pfm") return HdrFormat::kPfm;
  return std::nullopt;
}

std::optional<HdrFormat> hdr_format_for(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".hdr" || ext == ".rgbe" || ext == ".pic") return HdrFormat::kRgbe;
  if (ext == ".pfm") return HdrFormat::kPfm;
  return std::nullopt;
}

namespace {

HdrFormat resolve(const std::filesystem::path& path, std::optional<HdrFormat> format) {
  if (format) return *format;
  if (auto f = hdr_format_for(path)) return *f;
  throw Error(ErrorCode::kInvalidArgument,
              "cannot infer HDR format of '" + path.string() + "' from its extension; use --format");
}

}  // namespace

LinearImage read_hdr_file(const std::filesystem::path& path, std::optional<HdrFormat> format) {
  const HdrFormat f = resolve(path, format);
  const Bytes data = read_file(path);
  try {
    return f == HdrFormat::kRgbe ? read_rgbe(data) : read_pfm(data);
  } catch (const Error& e) {
    if (e.byte_offset()) throw Error(e.code(), path.string() + ": " + e.what());
    throw;
  }
}

void write_hdr_file(const std::filesystem::path& path, const LinearImage& img,
                    std::optional<HdrFormat> format) {
  const HdrFormat f = resolve(path, format);
  write_file(path, f == HdrFormat::kRgbe ? write_rgbe(img) : write_pfm(img));
}

}  // namespace gmhdr
