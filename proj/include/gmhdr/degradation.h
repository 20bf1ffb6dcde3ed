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

#ifndef GMHDR_DEGRADATION_H
#define GMHDR_DEGRADATION_H

#include "gmhdr/companding.h"
#include "gmhdr/image.h"

namespace gmhdr {

inline constexpr double kDefaultMaskSigma = 4.0 / 255.0;

struct MaskParams {
  double sigma = kDefaultMaskSigma;
  double mu = kDefaultMu;
};

// Shared normalization for tone mapping a pair: max(1, peak of a and b).
// Pairs already in [0, 1] are left as is.
double shared_tonemap_scale(const LinearImage& a, const LinearImage& b);

// Per-channel mu-law of clamp(x / scale, 0, 1).
LinearImage tonemap_mulaw(const LinearImage& img, double scale, double mu);

// mask[p] = mean_c |T(gt) - T(est)| > sigma, strict.
BoolMask compute_mask(const LinearImage& hdr_gt, const LinearImage& hdr_est,
                      const MaskParams& params = {});

// The thresholding step alone, on already tone-mapped images.
BoolMask mask_from_tonemapped(const LinearImage& tm_a, const LinearImage& tm_b, double sigma);

double mask_fraction(const BoolMask& mask);

struct MaskAgreement {
  double precision = 1.0;
  double recall = 1.0;
  double iou = 1.0;
};

// Ratios whose denominator is zero are reported as 1.
MaskAgreement mask_agreement(const BoolMask& pred, const BoolMask& gt);

}  // namespace gmhdr

#endif  // GMHDR_DEGRADATION_H
