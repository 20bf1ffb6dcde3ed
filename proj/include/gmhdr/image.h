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

#ifndef GMHDR_IMAGE_H
#define GMHDR_IMAGE_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace gmhdr {

inline constexpr std::size_t kChannels = 3;

/*
 * Linear RGB radiance, row-major, top-left origin, interleaved RGB.
 * Values are finite and nonnegative; the constructor rejects anything else.
 */
class LinearImage {
 public:
  LinearImage() = default;
  LinearImage(std::size_t width, std::size_t height, std::vector<double> data);

  static LinearImage filled(std::size_t width, std::size_t height, double value);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t pixel_count() const { return width_ * height_; }
  bool empty() const { return data_.empty(); }

  double at(std::size_t x, std::size_t y, std::size_t c) const {
    return data_[(y * width_ + x) * kChannels + c];
  }
  std::span<const double> data() const { return data_; }
  double max_value() const;

  bool operator==(const LinearImage&) const = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> data_;
};

enum class Transfer { kGammaEncoded, kLinearCode };

// 8-bit RGB codes.
class Ldr8Image {
 public:
  Ldr8Image() = default;
  Ldr8Image(std::size_t width, std::size_t height, std::vector<std::uint8_t> data,
            Transfer transfer = Transfer::kGammaEncoded);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t pixel_count() const { return width_ * height_; }
  Transfer transfer() const { return transfer_; }

  std::uint8_t at(std::size_t x, std::size_t y, std::size_t c) const {
    return data_[(y * width_ + x) * kChannels + c];
  }
  std::span<const std::uint8_t> data() const { return data_; }

  bool operator==(const Ldr8Image&) const = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> data_;
  Transfer transfer_ = Transfer::kGammaEncoded;
};

class BoolMask {
 public:
  BoolMask() = default;
  BoolMask(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t size() const { return bits_.size(); }
  bool at(std::size_t x, std::size_t y) const { return bits_[y * width_ + x] != 0; }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  std::size_t count() const;

  bool operator==(const BoolMask&) const = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<std::uint8_t> bits_;  // 0 or 1
};

// One real per pixel.
struct ScalarGrid {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<double> values;

  double at(std::size_t x, std::size_t y) const { return values[y * width + x]; }
};

LinearImage map_pixels(const LinearImage& img, const std::function<double(double)>& f);

// Per-pixel mean of |a - b| over the three channels.
ScalarGrid mean_abs_channel_diff(const LinearImage& a, const LinearImage& b);

// round(clamp(x, 0, 1) * 255), ties away from zero. NaN maps to 0.
std::uint8_t quantize8(double x);
inline double dequantize8(std::uint8_t v) { return static_cast<double>(v) / 255.0; }

void require_same_dims(std::size_t w0, std::size_t h0, std::size_t w1, std::size_t h1,
                       const char* what);

}  // namespace gmhdr

#endif  // GMHDR_IMAGE_H
