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

#include "gmhdr/degradation.h"

#include <algorithm>
#include <cmath>

#include "gmhdr/error.h"

namespace gmhdr {

double shared_tonemap_scale(const LinearImage& a, const LinearImage& b) {
  return std::max({1.0, a.max_value(), b.max_value()});
}

LinearImage tonemap_mulaw(const LinearImage& img, double scale, double mu) {
  const MuLawParams params{mu};
  return map_pixels(img, [&](double v) { return mulaw_forward(std::clamp(v / scale, 0.0, 1.0), params); });
}

BoolMask mask_from_tonemapped(const LinearImage& tm_a, const LinearImage& tm_b, double sigma) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "mask threshold must be positive");
  const ScalarGrid diff = mean_abs_channel_diff(tm_a, tm_b);
  std::vector<std::uint8_t> bits(diff.values.size());
  std::transform(diff.values.begin(), diff.values.end(), bits.begin(),
                 [sigma](double d) { return d > sigma ? 1 : 0; });
  return BoolMask(diff.width, diff.height, std::move(bits));
}

BoolMask compute_mask(const LinearImage& hdr_gt, const LinearImage& hdr_est,
                      const MaskParams& params) {
  require_same_dims(hdr_gt.width(), hdr_gt.height(), hdr_est.width(), hdr_est.height(),
                    "compute_mask");
  const double scale = shared_tonemap_scale(hdr_gt, hdr_est);
  return mask_from_tonemapped(tonemap_mulaw(hdr_gt, scale, params.mu),
                              tonemap_mulaw(hdr_est, scale, params.mu), params.sigma);
}

double mask_fraction(const BoolMask& mask) {
  if (mask.size() == 0) return 0.0;
  return static_cast<double>(mask.count()) / static_cast<double>(mask.size());
}

MaskAgreement mask_agreement(const BoolMask& pred, const BoolMask& gt) {
  require_same_dims(pred.width(), pred.height(), gt.width(), gt.height(), "mask_agreement");
  std::size_t tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] && gt[i]) ++tp;
    else if (pred[i]) ++fp;
    else if (gt[i]) ++fn;
  }
  auto ratio = [](std::size_t num, std::size_t den) {
    return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  return {ratio(tp, tp + fp), ratio(tp, tp + fn), ratio(tp, tp + fp + fn)};
}

}  // namespace gmhdr
