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

#ifndef GMHDR_ERROR_H
#define GMHDR_ERROR_H

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gmhdr {

enum class ErrorCode {
  kInvalidArgument,
  kDomain,
  kDimensionMismatch,
  kMetadataMismatch,
  kInvalidValue,
  kIo,
  // Parser failures.
  kBadMagic,
  kUnsupported,
  kBadHeader,
  kTruncated,
  kRleOverflow,
  kTrailingData,
  kMissingKey,
  kDuplicateKey,
  kBadNumber,
};

std::string_view error_code_name(ErrorCode code);

// Every failure raised by the library is an Error. Parser errors additionally
// carry the byte offset at which decoding stopped; key errors carry the key.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  Error(ErrorCode code, const std::string& message, std::size_t byte_offset);

  ErrorCode code() const { return code_; }
  std::optional<std::size_t> byte_offset() const { return offset_; }

  // True for errors caused by malformed or unsupported file contents.
  bool is_parse_error() const;

 private:
  ErrorCode code_;
  std::optional<std::size_t> offset_;
};

}  // namespace gmhdr

#endif  // GMHDR_ERROR_H
