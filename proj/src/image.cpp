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

#include "gmhdr/image.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "gmhdr/error.h"
#include "gmhdr/kernels.h"

namespace gmhdr {
namespace {

void check_length(std::size_t width, std::size_t height, std::size_t per_pixel,
                  std::size_t actual, const char* what) {
  if (width != 0 && height > SIZE_MAX / width / per_pixel) {
    throw Error(ErrorCode::kInvalidArgument, std::string(what) + ": dimensions overflow");
  }
  if (actual != width * height * per_pixel) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(what) + ": data length " + std::to_string(actual) +
                    " does not match " + std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

LinearImage::LinearImage(std::size_t width, std::size_t height, std::vector<double> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_length(width_, height_, kChannels, data_.size(), "LinearImage");
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!std::isfinite(data_[i]) || data_[i] < 0.0) {
      throw Error(ErrorCode::kInvalidValue,
                  "LinearImage: value at index " + std::to_string(i) +
                      " is negative or not finite");
    }
  }
}

LinearImage LinearImage::filled(std::size_t width, std::size_t height, double value) {
  return LinearImage(width, height, std::vector<double>(width * height * kChannels, value));
}

double LinearImage::max_value() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, v);
  return m;
}

Ldr8Image::Ldr8Image(std::size_t width, std::size_t height, std::vector<std::uint8_t> data,
                     Transfer transfer)
    : width_(width), height_(height), data_(std::move(data)), transfer_(transfer) {
  check_length(width_, height_, kChannels, data_.size(), "Ldr8Image");
}

BoolMask::BoolMask(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  check_length(width_, height_, 1, bits_.size(), "BoolMask");
  for (auto& b : bits_) b = b ? 1 : 0;
}

std::size_t BoolMask::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

void require_same_dims(std::size_t w0, std::size_t h0, std::size_t w1, std::size_t h1,
                       const char* what) {
  if (w0 != w1 || h0 != h1) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + ": " + std::to_string(w0) + "x" + std::to_string(h0) +
                    " vs " + std::to_string(w1) + "x" + std::to_string(h1));
  }
}

LinearImage map_pixels(const LinearImage& img, const std::function<double(double)>& f) {
  std::vector<double> out(img.data().size());
  std::transform(img.data().begin(), img.data().end(), out.begin(), f);
  return LinearImage(img.width(), img.height(), std::move(out));
}

ScalarGrid mean_abs_channel_diff(const LinearImage& a, const LinearImage& b) {
  require_same_dims(a.width(), a.height(), b.width(), b.height(), "mean_abs_channel_diff");
  ScalarGrid out{a.width(), a.height(), std::vector<double>(a.pixel_count())};
  kernels::active().channel_mean_abs_diff(a.data().data(), b.data().data(), out.values.data(),
                                          a.pixel_count());
  return out;
}

std::uint8_t quantize8(double x) {
  if (!(x > 0.0)) return 0;
  if (x >= 1.0) return 255;
  return static_cast<std::uint8_t>(std::round(x * 255.0));
}

}  // namespace gmhdr
