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

#include "gmhdr/error.h"

namespace gmhdr {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kMetadataMismatch: return "metadata_mismatch";
    case ErrorCode::kInvalidValue: return "invalid_value";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kBadMagic: return "bad_magic";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kBadHeader: return "bad_header";
    case ErrorCode::kTruncated: return "truncated";
    case ErrorCode::kRleOverflow: return "rle_overflow";
    case ErrorCode::kTrailingData: return "trailing_data";
    case ErrorCode::kMissingKey: return "missing_key";
    case ErrorCode::kDuplicateKey: return "duplicate_key";
    case ErrorCode::kBadNumber: return "bad_number";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

Error::Error(ErrorCode code, const std::string& message, std::size_t byte_offset)
    : std::runtime_error(message + " (at byte " + std::to_string(byte_offset) + ")"),
      code_(code),
      offset_(byte_offset) {}

bool Error::is_parse_error() const {
  switch (code_) {
    case ErrorCode::kBadMagic:
    case ErrorCode::kUnsupported:
    case ErrorCode::kBadHeader:
    case ErrorCode::kTruncated:
    case ErrorCode::kRleOverflow:
    case ErrorCode::kTrailingData:
    case ErrorCode::kMissingKey:
    case ErrorCode::kDuplicateKey:
    case ErrorCode::kBadNumber:
    case ErrorCode::kInvalidValue:
      return true;
    default:
      return false;
  }
}

}  // namespace gmhdr
