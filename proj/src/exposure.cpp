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

#include "gmhdr/exposure.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "gmhdr/error.h"
#include "gmhdr/kernels.h"

namespace gmhdr {
namespace {

void check_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must be positive and finite");
  }
}

void check_ev(double ev) {
  if (!std::isfinite(ev)) throw Error(ErrorCode::kInvalidArgument, "exposure value must be finite");
}

std::array<double, 256> linear_lut(double ev, double gamma) {
  std::array<double, 256> lut;
  const double scale = std::exp2(ev);
  for (int k = 0; k < 256; ++k) {
    lut[k] = gamma_decode(dequantize8(static_cast<std::uint8_t>(k)), gamma) / scale;
  }
  return lut;
}

std::array<double, 256> weight_lut() {
  std::array<double, 256> lut;
  for (int k = 0; k < 256; ++k) {
    const double z = dequantize8(static_cast<std::uint8_t>(k));
    lut[k] = std::max(kMergeWeightFloor, 1.0 - std::fabs(2.0 * z - 1.0));
  }
  return lut;
}

}  // namespace

ExposureStack::ExposureStack(std::vector<ExposureFrame> frames, double gamma)
    : frames_(std::move(frames)), gamma_(gamma) {
  check_gamma(gamma_);
  if (frames_.empty()) throw Error(ErrorCode::kInvalidArgument, "exposure stack is empty");
  for (const auto& f : frames_) {
    check_ev(f.ev);
    require_same_dims(frames_.front().image.width(), frames_.front().image.height(),
                      f.image.width(), f.image.height(), "exposure stack");
  }
  std::stable_sort(frames_.begin(), frames_.end(),
                   [](const ExposureFrame& a, const ExposureFrame& b) { return a.ev < b.ev; });
  for (std::size_t i = 1; i < frames_.size(); ++i) {
    if (frames_[i].ev == frames_[i - 1].ev) {
      throw Error(ErrorCode::kInvalidArgument, "exposure stack has duplicate ev values");
    }
  }
  auto ref = std::find_if(frames_.begin(), frames_.end(),
                          [](const ExposureFrame& f) { return f.ev == 0.0; });
  if (ref == frames_.end()) {
    throw Error(ErrorCode::kInvalidArgument, "exposure stack needs a frame at ev 0");
  }
  reference_ = static_cast<std::size_t>(ref - frames_.begin());
}

ExposureStack synth_stack(const LinearImage& hdr, std::span<const double> evs, double gamma) {
  check_gamma(gamma);
  if (std::find(evs.begin(), evs.end(), 0.0) == evs.end()) {
    throw Error(ErrorCode::kInvalidArgument, "exposure list must contain 0");
  }
  std::vector<ExposureFrame> frames;
  frames.reserve(evs.size());
  for (double ev : evs) {
    check_ev(ev);
    const double scale = std::exp2(ev);
    std::vector<std::uint8_t> codes(hdr.data().size());
    std::transform(hdr.data().begin(), hdr.data().end(), codes.begin(), [&](double v) {
      return quantize8(gamma_encode(std::clamp(v * scale, 0.0, 1.0), gamma));
    });
    frames.push_back({Ldr8Image(hdr.width(), hdr.height(), std::move(codes)), ev});
  }
  return ExposureStack(std::move(frames), gamma);
}

LinearImage linearize_ldr(const Ldr8Image& frame, double ev, double gamma) {
  check_gamma(gamma);
  check_ev(ev);
  if (frame.transfer() != Transfer::kGammaEncoded) {
    throw Error(ErrorCode::kInvalidArgument, "linearize_ldr expects a gamma-encoded frame");
  }
  const auto lut = linear_lut(ev, gamma);
  std::vector<double> out(frame.data().size());
  std::transform(frame.data().begin(), frame.data().end(), out.begin(),
                 [&](std::uint8_t c) { return lut[c]; });
  return LinearImage(frame.width(), frame.height(), std::move(out));
}

LinearImage merge_baseline(const ExposureStack& stack) {
  const auto frames = stack.frames();
  std::vector<std::array<double, 256>> luts;
  std::vector<const double*> lut_ptrs;
  std::vector<const std::uint8_t*> code_ptrs;
  luts.reserve(frames.size());
  for (const auto& f : frames) {
    if (f.image.transfer() != Transfer::kGammaEncoded) {
      throw Error(ErrorCode::kInvalidArgument, "merge expects gamma-encoded frames");
    }
    luts.push_back(linear_lut(f.ev, stack.gamma()));
    code_ptrs.push_back(f.image.data().data());
  }
  for (const auto& l : luts) lut_ptrs.push_back(l.data());
  const auto weights = weight_lut();

  kernels::MergeInputs in;
  in.frame_count = frames.size();
  in.codes = code_ptrs.data();
  in.value_luts = lut_ptrs.data();
  in.weight_lut = weights.data();
  in.weight_floor = kMergeWeightFloor;
  in.reference = stack.reference_index();

  std::vector<double> out(frames.front().image.data().size());
  kernels::active().merge(in, out.data(), out.size());
  return LinearImage(stack.width(), stack.height(), std::move(out));
}

InitialGainMap initial_gainmap(const ExposureStack& stack, const EncodeOptions& opts) {
  LinearImage merged = merge_baseline(stack);
  LinearImage reference = linearize_ldr(stack.reference().image, 0.0, stack.gamma());
  GainMap gm = encode(merged, reference, opts);
  return {std::move(gm), std::move(merged), std::move(reference)};
}

}  // namespace gmhdr
