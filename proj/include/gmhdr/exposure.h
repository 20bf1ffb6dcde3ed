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

#ifndef GMHDR_EXPOSURE_H
#define GMHDR_EXPOSURE_H

#include <span>
#include <utility>
#include <vector>

#include "gmhdr/companding.h"
#include "gmhdr/gainmap.h"
#include "gmhdr/image.h"

namespace gmhdr {

struct ExposureFrame {
  Ldr8Image image;
  double ev = 0.0;  // stops relative to the reference frame
};

/*
 * Pre-aligned bracketed LDR frames. The constructor orders frames by ev and
 * requires distinct evs, exactly one of them 0 (the reference frame), and
 * equal dimensions.
 */
class ExposureStack {
 public:
  ExposureStack(std::vector<ExposureFrame> frames, double gamma = kDefaultGamma);

  std::span<const ExposureFrame> frames() const { return frames_; }
  std::size_t reference_index() const { return reference_; }
  const ExposureFrame& reference() const { return frames_[reference_]; }
  double gamma() const { return gamma_; }
  std::size_t width() const { return frames_.front().image.width(); }
  std::size_t height() const { return frames_.front().image.height(); }

 private:
  std::vector<ExposureFrame> frames_;
  std::size_t reference_ = 0;
  double gamma_;
};

inline constexpr double kMergeWeightFloor = 1e-3;

// frame code = quantize8(gamma_encode(clamp(hdr * 2^ev, 0, 1))).
ExposureStack synth_stack(const LinearImage& hdr, std::span<const double> evs,
                          double gamma = kDefaultGamma);

// gamma_decode(code / 255) / 2^ev: maps a frame back to the reference radiance scale.
LinearImage linearize_ldr(const Ldr8Image& frame, double ev, double gamma = kDefaultGamma);

// Triangle-weighted average of the linearized frames; pixels where every frame
// sits at the weight floor fall back to the linearized reference frame.
LinearImage merge_baseline(const ExposureStack& stack);

struct InitialGainMap {
  GainMap gain_map;
  LinearImage merged;
  LinearImage reference_linear;
};

// merge_baseline() followed by encode() against the linearized reference frame.
InitialGainMap initial_gainmap(const ExposureStack& stack, const EncodeOptions& opts = {});

}  // namespace gmhdr

#endif  // GMHDR_EXPOSURE_H
