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

#ifndef GMHDR_FORMATS_BYTE_READER_H
#define GMHDR_FORMATS_BYTE_READER_H

#include <charconv>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "gmhdr/error.h"

namespace gmhdr::detail {

inline bool is_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

// Forward-only cursor over a file image. Every failure reports its offset.
class ByteReader {
 public:
  ByteReader(std::span<const std::uint8_t> bytes, const char* format)
      : bytes_(bytes), format_(format) {}

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  bool at_end() const { return pos_ >= bytes_.size(); }
  std::uint8_t peek() const { return bytes_[pos_]; }
  const std::uint8_t* here() const { return bytes_.data() + pos_; }

  [[noreturn]] void fail(ErrorCode code, const std::string& what) const { fail_at(code, what, pos_); }
  [[noreturn]] void fail_at(ErrorCode code, const std::string& what, std::size_t at) const {
    throw Error(code, std::string(format_) + ": " + what, at);
  }

  std::uint8_t get() {
    if (at_end()) fail(ErrorCode::kTruncated, "unexpected end of file");
    return bytes_[pos_++];
  }

  std::span<const std::uint8_t> take(std::size_t n) {
    if (remaining() < n) fail(ErrorCode::kTruncated, "unexpected end of file");
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  // Bytes up to (not including) the next '\n', which is consumed.
  std::string_view line() {
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
    if (pos_ >= bytes_.size()) fail_at(ErrorCode::kTruncated, "unterminated header line", start);
    std::string_view s(reinterpret_cast<const char*>(bytes_.data()) + start, pos_ - start);
    ++pos_;
    return s;
  }

  // Netpbm-style token: skips whitespace and '#' comments first.
  std::string_view token(bool allow_comments) {
    for (;;) {
      while (!at_end() && is_space(peek())) ++pos_;
      if (allow_comments && !at_end() && peek() == '#') {
        while (!at_end() && peek() != '\n') ++pos_;
        continue;
      }
      break;
    }
    const std::size_t start = pos_;
    while (!at_end() && !is_space(peek()) && !(allow_comments && peek() == '#')) ++pos_;
    if (pos_ == start) fail(ErrorCode::kTruncated, "missing header field");
    return {reinterpret_cast<const char*>(bytes_.data()) + start, pos_ - start};
  }

  void require_end() const {
    if (!at_end()) fail(ErrorCode::kTrailingData, std::to_string(remaining()) + " bytes after payload");
  }

 private:
  std::span<const std::uint8_t> bytes_;
  const char* format_;
  std::size_t pos_ = 0;
};

// Strict decimal size: digits only, no sign, fits in size_t.
inline bool parse_size(std::string_view s, std::size_t& out) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

inline bool parse_real(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace gmhdr::detail

#endif  // GMHDR_FORMATS_BYTE_READER_H
